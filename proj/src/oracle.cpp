#include "uaa/oracle.hpp"
#include "uaa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace uaa {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

struct Grid {
    double x0 = 0.0;
    double h = 1e-3;
    long n = 0;
    double x(long i) const { return x0 + h * i; }
};

Grid make_grid(const Potential& pot, const OracleConfig& cfg) {
    Grid g;
    g.h = cfg.step;
    if (pot.domain() == Domain::half_line) {
        g.x0 = cfg.x_min;
        g.n = static_cast<long>((cfg.extent - cfg.x_min) / cfg.step) + 1;
    } else {
        const double left = cfg.left_extent > 0.0 ? cfg.left_extent : cfg.extent;
        g.x0 = -left;
        g.n = static_cast<long>((left + cfg.extent) / cfg.step) + 1;
    }
    if (g.n < 64) throw ExtentError("oracle: grid too small");
    return g;
}

// power-law start of the regular solution on half-line domains:
// psi ~ x^s with s(s-1) = 2 m C2 / hbar^2
double regular_power(const Potential& pot) {
    const auto& p = pot.params();
    const double c2 = pot.pole_coefficient();
    return 0.5 + std::sqrt(0.25 + 2.0 * p.m * c2 / (p.hbar * p.hbar));
}

struct SweepResult {
    double value_at_match = 0.0; // psi at the matching index
    double deriv_at_match = 0.0; // centered derivative
    int nodes = 0;
};

// Numerov recurrence outward to index im (inclusive of im+1 for the deriv)
SweepResult sweep_out(const std::vector<double>& f, const Grid& g, long im,
                      double p0, double p1) {
    SweepResult r;
    const double h2 = g.h * g.h / 12.0;
    auto c = [&](long i) { return 1.0 - h2 * f[i]; };
    double pm1 = p0, p = p1;
    double pim1 = 0.0;
    for (long i = 1; i <= im; ++i) {
        const double nxt = ((12.0 - 10.0 * c(i)) * p - c(i - 1) * pm1) / c(i + 1);
        if (p != 0.0 && nxt * p < 0.0) ++r.nodes;
        pm1 = p;
        p = nxt;
        if (i == im - 1) pim1 = pm1; // pm1 holds psi[im-1] at this point
        if (std::abs(p) > 1e250) {
            p *= 1e-250;
            pm1 *= 1e-250;
            pim1 *= 1e-250;
        }
    }
    // after the loop: p = psi[im+1], pm1 = psi[im]
    r.value_at_match = pm1;
    r.deriv_at_match = (p - pim1) / (2.0 * g.h);
    return r;
}

SweepResult sweep_in(const std::vector<double>& f, const Grid& g, long im) {
    SweepResult r;
    const long N = static_cast<long>(f.size());
    const double h2 = g.h * g.h / 12.0;
    auto c = [&](long i) { return 1.0 - h2 * f[i]; };
    double pp1 = 0.0, p = 1e-12;
    double pip1 = 0.0;
    for (long i = N - 2; i >= im; --i) {
        const double nxt = ((12.0 - 10.0 * c(i)) * p - c(i + 1) * pp1) / c(i - 1);
        if (p != 0.0 && nxt * p < 0.0) ++r.nodes;
        pp1 = p;
        p = nxt;
        if (i == im + 1) pip1 = pp1;
        if (std::abs(p) > 1e250) {
            p *= 1e-250;
            pp1 *= 1e-250;
            pip1 *= 1e-250;
        }
    }
    // after the loop: p = psi[im-1], pp1 = psi[im]
    r.value_at_match = pp1;
    r.deriv_at_match = (pip1 - p) / (2.0 * g.h);
    return r;
}

struct Shooter {
    const Potential& pot;
    Grid g;
    double start_power;

    std::vector<double> f; // 2m(V - E)/hbar^2 at grid points (E-dependent)

    void fill(double E) {
        const auto& p = pot.params();
        const double c = 2.0 * p.m / (p.hbar * p.hbar);
        f.resize(g.n);
        for (long i = 0; i < g.n; ++i) f[i] = c * (pot.v(g.x(i)) - E);
    }

    long match_index() const {
        // rightmost classically allowed point
        for (long i = g.n - 1; i >= 2; --i)
            if (f[i] < 0.0) return std::clamp<long>(i, 2, g.n - 3);
        return g.n / 2;
    }

    // full outward sweep node count (Dirichlet box problem)
    int box_nodes(double E) {
        fill(E);
        const double h2 = g.h * g.h / 12.0;
        auto c = [&](long i) { return 1.0 - h2 * f[i]; };
        double p0, p1;
        if (pot.domain() == Domain::half_line) {
            p0 = std::pow(g.x(0), start_power);
            p1 = std::pow(g.x(1), start_power);
        } else {
            p0 = 0.0;
            p1 = 1e-12;
        }
        int nodes = 0;
        for (long i = 1; i < g.n - 1; ++i) {
            const double nxt = ((12.0 - 10.0 * c(i)) * p1 - c(i - 1) * p0) / c(i + 1);
            if (p1 != 0.0 && nxt * p1 < 0.0) ++nodes;
            p0 = p1;
            p1 = nxt;
            if (std::abs(p1) > 1e250) {
                p0 *= 1e-250;
                p1 *= 1e-250;
            }
        }
        return nodes;
    }

    // log-derivative matching defect
    double defect(double E) {
        fill(E);
        const long im = match_index();
        double p0, p1;
        if (pot.domain() == Domain::half_line) {
            p0 = std::pow(g.x(0), start_power);
            p1 = std::pow(g.x(1), start_power);
        } else {
            p0 = 0.0;
            p1 = 1e-12;
        }
        const auto out = sweep_out(f, g, im, p0, p1);
        const auto in = sweep_in(f, g, im);
        if (out.value_at_match == 0.0 || in.value_at_match == 0.0) return 0.0;
        return out.deriv_at_match / out.value_at_match -
               in.deriv_at_match / in.value_at_match;
    }

    double eigenvalue(int n, double e_lo, double e_hi, double tol) {
        // bisect on the box node count, then refine on the defect
        double lo = e_lo, hi = e_hi;
        if (box_nodes(lo) > n || box_nodes(hi) <= n)
            throw ExtentError("oracle: requested state not inside the window");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (box_nodes(mid) > n)
                hi = mid;
            else
                lo = mid;
            if (hi - lo < std::max(tol, 1e-15 * (std::abs(lo) + 1.0))) break;
            if (hi - lo < 1e-5 * (std::abs(lo) + 1.0) && it > 10) {
                // defect refinement inside the node window
                const double dlo = defect(lo), dhi = defect(hi);
                if (dlo * dhi < 0.0) {
                    double a = lo, b = hi, fa = dlo;
                    for (int k = 0; k < 120; ++k) {
                        const double m = 0.5 * (a + b);
                        const double fm = defect(m);
                        if (fa * fm <= 0.0)
                            b = m;
                        else {
                            a = m;
                            fa = fm;
                        }
                        if (b - a < std::max(tol, 1e-15 * (std::abs(a) + 1.0)))
                            return 0.5 * (a + b);
                    }
                    return 0.5 * (a + b);
                }
            }
        }
        return 0.5 * (lo + hi);
    }
};

double energy_window_low(const Potential& pot) {
    // scan for the potential minimum as a lower bound for eigenvalues
    double lo = INF;
    const bool half = pot.domain() == Domain::half_line;
    for (int i = 0; i <= 2000; ++i) {
        const double x = half ? 1e-4 * std::pow(1e6, i / 2000.0)
                              : -50.0 + 100.0 * i / 2000.0;
        lo = std::min(lo, pot.v(x));
    }
    return lo - 1.0;
}

} // namespace

OracleConfig default_oracle_config(const Potential& pot, int n_max) {
    OracleConfig cfg;
    const auto& p = pot.params();
    const int cnt = bound_state_count(pot);
    const int top = (cnt < 0) ? n_max : std::min(n_max, cnt - 1);
    const double e_top = exact_spectrum(pot, std::max(top, 0));
    const double thr = pot.continuum_threshold();

    double kappa = 0.0; // slowest decay rate among requested states
    if (std::isfinite(thr))
        kappa = std::sqrt(2.0 * p.m * std::max(thr - e_top, 0.0)) / p.hbar;
    else
        kappa = 1.0;

    // outer classical turning point of the highest state
    double x2 = 5.0;
    {
        const auto s = build_splitting_wkb(pot, e_top);
        double x = std::max(1.0, pot.extreme_location());
        while (x < 1e7 && pot.v(x) < INF && (e_top - pot.v(x)) > 0.0) x *= 1.3;
        x2 = x;
    }
    if (kappa > 1e-4) {
        cfg.extent = 1.4 * x2 + 35.0 / kappa;
        cfg.step = 1e-3;
    } else {
        // marginal threshold state: the box shift falls off like 1/L^2
        cfg.extent = 1500.0;
        cfg.step = 2e-3;
    }
    cfg.extent = std::min(cfg.extent, 3000.0);
    if (pot.domain() == Domain::full_line) {
        // stop a steep left wall well before V overwhelms the recurrence
        const double cap = 1e4 * (std::abs(e_top) + 1.0);
        double x = std::min(pot.extreme_location(), 0.0);
        while (x > -cfg.extent && pot.v(x) < cap) x -= 0.25;
        cfg.left_extent = std::min(cfg.extent, -x + 2.0);
    }
    return cfg;
}

SpectrumResult numerov_eigenvalues(const Potential& pot, int n_max,
                                   const OracleConfig& config) {
    SpectrumResult out;
    out.method = Method::numerov;
    Shooter sh{pot, make_grid(pot, config),
               pot.domain() == Domain::half_line ? regular_power(pot) : 0.0, {}};

    const double thr = pot.continuum_threshold();
    double e_lo = energy_window_low(pot);
    double e_hi = std::isfinite(thr) ? thr + 0.5 * (thr - e_lo) * 1e-3 : 0.0;
    if (!std::isfinite(thr)) {
        // oscillator-like: raise the ceiling until enough nodes fit
        e_hi = e_lo + 10.0;
        while (sh.box_nodes(e_hi) <= n_max + 1) {
            e_hi = e_lo + 2.0 * (e_hi - e_lo);
            if (e_hi - e_lo > 1e9)
                throw ExtentError("oracle: cannot reach the requested state");
        }
    } else {
        // just above the threshold the box states appear gradually; expand
        // the ceiling until the requested node count is present
        double d = std::abs(thr - e_lo) * 1e-6 + 1e-12;
        e_hi = thr + d;
        while (sh.box_nodes(e_hi) <= n_max) {
            d *= 4.0;
            e_hi = thr + d;
            if (d > std::abs(thr - e_lo) + 1.0)
                throw ExtentError("oracle: cannot reach the requested state");
        }
    }

    for (int n = 0; n <= n_max; ++n) {
        const double E = sh.eigenvalue(n, e_lo, e_hi, config.energy_tol);
        SolverDiagnostics diag;
        if (config.check_convergence) {
            OracleConfig coarse = config;
            coarse.step *= 2.0;
            coarse.check_convergence = false;
            Shooter sh2{pot, make_grid(pot, coarse), sh.start_power, {}};
            const double E2 = sh2.eigenvalue(n, e_lo, e_hi, config.energy_tol);
            diag.residual = std::abs(E2 - E) / 15.0; // h^4 Richardson estimate
        }
        out.n.push_back(n);
        out.energy.push_back(E);
        out.diagnostics.push_back(diag);
    }
    return out;
}

std::vector<WaveSample> numerov_eigenfunction(const Potential& pot, int n,
                                              const OracleConfig& config,
                                              const std::vector<double>& grid) {
    const auto spec = [&] {
        OracleConfig c = config;
        c.check_convergence = false;
        return numerov_eigenvalues(pot, n, c);
    }();
    const double E = spec.energy.back();

    Shooter sh{pot, make_grid(pot, config),
               pot.domain() == Domain::half_line ? regular_power(pot) : 0.0, {}};
    sh.fill(E);
    const Grid& g = sh.g;
    const long im = sh.match_index();

    // assemble the matched solution over the whole grid
    std::vector<double> psi(g.n, 0.0);
    const double h2 = g.h * g.h / 12.0;
    auto c = [&](long i) { return 1.0 - h2 * sh.f[i]; };
    if (pot.domain() == Domain::half_line) {
        psi[0] = std::pow(g.x(0), sh.start_power);
        psi[1] = std::pow(g.x(1), sh.start_power);
    } else {
        psi[0] = 0.0;
        psi[1] = 1e-12;
    }
    for (long i = 1; i < g.n - 1 && i <= im; ++i)
        psi[i + 1] = ((12.0 - 10.0 * c(i)) * psi[i] - c(i - 1) * psi[i - 1]) / c(i + 1);
    std::vector<double> pin(g.n, 0.0);
    pin[g.n - 1] = 0.0;
    pin[g.n - 2] = 1e-12;
    for (long i = g.n - 2; i > im; --i)
        pin[i - 1] = ((12.0 - 10.0 * c(i)) * pin[i] - c(i + 1) * pin[i + 1]) / c(i - 1);
    const double scale = psi[im + 1] / pin[im + 1];
    for (long i = im + 1; i < g.n; ++i) psi[i] = pin[i] * scale;

    // normalize: trapezoid plus analytic exponential tails
    double norm2 = 0.0;
    for (long i = 0; i + 1 < g.n; ++i)
        norm2 += 0.5 * (psi[i] * psi[i] + psi[i + 1] * psi[i + 1]) * g.h;
    const double fr = sh.f[g.n - 1];
    if (fr > 0.0) norm2 += psi[g.n - 1] * psi[g.n - 1] / (2.0 * std::sqrt(fr));
    if (pot.domain() == Domain::full_line) {
        const double fl = sh.f[0];
        if (fl > 0.0) norm2 += psi[0] * psi[0] / (2.0 * std::sqrt(fl));
    }
    const double a = 1.0 / std::sqrt(norm2);

    std::vector<WaveSample> out;
    out.reserve(grid.size());
    for (double x : grid) {
        WaveSample w;
        w.x = x;
        const long i =
            std::clamp<long>(std::lround((x - g.x0) / g.h), 0, g.n - 1);
        w.psi = a * psi[i];
        const double fv = sh.f[i];
        w.region = fv < 0.0 ? Region::allowed : Region::forbidden;
        out.push_back(w);
    }
    return out;
}

ScatterResult numerical_scattering(const std::function<double(double)>& potential,
                                   double m, double hbar, double energy,
                                   const OracleConfig& config) {
    if (!(energy > 0.0))
        throw NoScatteringError("numerical_scattering: energy below the asymptote");
    using C = std::complex<double>;
    const double L = config.extent;
    const double k = std::sqrt(2.0 * m * energy) / hbar;

    auto run = [&](double h) {
        const long n = static_cast<long>(2.0 * L / h) + 1;
        const double cc = 2.0 * m / (hbar * hbar);
        auto x_of = [&](long i) { return -L + h * i; };
        std::vector<double> f(n);
        for (long i = 0; i < n; ++i) f[i] = cc * (potential(x_of(i)) - energy);
        const double h2 = h * h / 12.0;
        auto cf = [&](long i) { return 1.0 - h2 * f[i]; };
        // outgoing wave on the right, integrated leftwards
        C p = std::exp(C(0.0, k * x_of(n - 1)));
        C pm = std::exp(C(0.0, k * x_of(n - 2)));
        for (long i = n - 2; i >= 1; --i) {
            const C nxt = ((12.0 - 10.0 * cf(i)) * pm - cf(i + 1) * p) / cf(i - 1);
            p = pm;
            pm = nxt;
        }
        // decompose psi = A e^{ikx} + B e^{-ikx} at the left edge using a
        // centered derivative
        const long i0 = 2;
        // recompute psi[i0-1..i0+1]: redo a short leftward pass storing values
        std::vector<C> tail(6);
        C q1 = std::exp(C(0.0, k * x_of(n - 1)));
        C q0 = std::exp(C(0.0, k * x_of(n - 2)));
        std::vector<C> psi(n);
        psi[n - 1] = q1;
        psi[n - 2] = q0;
        for (long i = n - 2; i >= 1; --i)
            psi[i - 1] = ((12.0 - 10.0 * cf(i)) * psi[i] - cf(i + 1) * psi[i + 1]) /
                         cf(i - 1);
        const C d = (psi[i0 - 2] - 8.0 * psi[i0 - 1] + 8.0 * psi[i0 + 1] -
                     psi[i0 + 2]) /
                    (12.0 * h);
        const C e = std::exp(C(0.0, k * x_of(i0)));
        const C A = 0.5 * (psi[i0] + d / C(0.0, k)) / e;
        const C B = 0.5 * (psi[i0] - d / C(0.0, k)) * e;
        ScatterResult r;
        r.transmission = 1.0 / std::norm(A);
        r.reflection = std::norm(B) / std::norm(A);
        r.step_used = h;
        return r;
    };

    double h = config.step;
    ScatterResult prev = run(h);
    for (int level = 0; level < 4; ++level) {
        h *= 0.5;
        const ScatterResult cur = run(h);
        if (std::abs(cur.transmission - prev.transmission) <= 1e-8) return cur;
        prev = cur;
    }
    throw ConvergenceError("numerical_scattering: step halving did not converge");
}

double numerical_transmission(const Potential& pot, double energy,
                              const OracleConfig& config) {
    const auto& p = pot.params();
    if (pot.domain() != Domain::full_line)
        throw UnsupportedError("numerical_transmission: needs a full-line barrier");
    return numerical_scattering([&](double x) { return pot.v(x); }, p.m, p.hbar,
                                energy, config)
        .transmission;
}

double closed_form_transmission(const Potential& pot, double energy) {
    if (pot.kind() != PotentialKind::poschl_teller_barrier)
        throw UnsupportedError("closed_form_transmission: sech^2 barrier only");
    const auto& p = pot.params();
    if (!(energy > 0.0)) throw NoScatteringError("closed_form_transmission: E <= 0");
    constexpr double PI = 3.14159265358979323846;
    const double k = std::sqrt(2.0 * p.m * energy) / p.hbar;
    const double u = 8.0 * p.m * p.v0 / (p.hbar * p.hbar * p.alpha * p.alpha);
    const double sh = std::sinh(PI * k / p.alpha);
    const double s2 = sh * sh;
    if (u >= 1.0) {
        const double ch = std::cosh(0.5 * PI * std::sqrt(u - 1.0));
        return s2 / (s2 + ch * ch);
    }
    const double cs = std::cos(0.5 * PI * std::sqrt(1.0 - u));
    return s2 / (s2 + cs * cs);
}

} // namespace uaa
