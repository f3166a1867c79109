#include "uaa/wavefunction.hpp"
#include "uaa/errors.hpp"
#include "uaa/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace uaa {

namespace {

constexpr double SQRT2 = 1.41421356237309504880168872420969808;

// a*exp(la) + b*exp(lb) -> (value, log_scale)
std::pair<double, double> add_scaled(double a, double la, double b, double lb) {
    if (a == 0.0 && b == 0.0) return {0.0, 0.0};
    if (a == 0.0) return {b, lb};
    if (b == 0.0) return {a, la};
    const double L = std::max(la, lb);
    const double da = la - L, db = lb - L;
    const double va = (da < -745.0) ? 0.0 : a * std::exp(da);
    const double vb = (db < -745.0) ? 0.0 : b * std::exp(db);
    return {va + vb, L};
}

// |xi(x)/g(x)|^{1/4} with the removable singularity at the turning point
double prefactor_single(const Splitting& s, double x0, double x, double xi) {
    const double t = std::abs(x - x0);
    const double f0 = std::abs(s.dg(x0, 1));
    if (t < 1e-8 * (std::abs(x0) + 1.0)) {
        // xi/g -> f0^{-2/3}(1 - (4/5) gamma1 t + ...)
        const double sig = (x >= x0) ? 1.0 : -1.0;
        const double g1 = sig * s.dg(x0, 2) / (2.0 * s.dg(x0, 1));
        const double ratio = std::pow(f0, -2.0 / 3.0) * (1.0 - 0.8 * g1 * t);
        return std::pow(std::abs(ratio), 0.25);
    }
    return std::pow(std::abs(xi / s.g(x)), 0.25);
}

// |(zeta^2 - zeta0^2)/g|^{1/4} with removable singularities at both points
double prefactor_pair(const Splitting& s, const TurningPointSet& tps, double z0sq,
                      double x, double zeta) {
    bool near = false;
    double tp = 0.0;
    if (tps.coalesced && std::abs(x - tps.x_m) < 1e-6 * (std::abs(tps.x_m) + 1.0)) {
        // both zeros merged: zeta^2/g -> sqrt(2/|g''|) at the extreme
        const double g2 = std::abs(s.dg(tps.x_m, 2));
        return std::pow(2.0 / g2, 0.125);
    }
    if (tps.kind == TurningPointKind::pair_real && !tps.coalesced) {
        for (double cand : {tps.x1, tps.x2}) {
            if (std::abs(x - cand) < 1e-8 * (std::abs(cand) + 1.0)) {
                tp = cand;
                near = true;
            }
        }
    }
    if (near) {
        const double f0 = std::abs(s.dg(tp, 1));
        const double c = std::sqrt(std::abs(z0sq));
        const double m1 = std::pow(f0 / (2.0 * c), 1.0 / 3.0);
        return std::pow(2.0 * c * m1 / f0, 0.25);
    }
    return std::pow(std::abs((zeta * zeta - z0sq) / s.g(x)), 0.25);
}

Region classify_region(const Splitting& s, double x, double dist_to_tp,
                       double scale) {
    if (dist_to_tp < 1e-3 * scale) return Region::turning_neighborhood;
    return s.g(x) < 0.0 ? Region::allowed : Region::forbidden;
}

} // namespace

std::vector<WaveSample> psi_single_tp(const Splitting& s, double x0,
                                      const BoundaryCondition& bc,
                                      const std::vector<double>& grid) {
    double a0, b0;
    switch (bc.kind) {
        case BoundaryKind::decay_at_plus_infinity:
        case BoundaryKind::decay_at_origin:
            a0 = 1.0;
            b0 = 0.0; // Bi grows into the forbidden region
            break;
        case BoundaryKind::coefficients:
            a0 = bc.a;
            b0 = bc.b;
            break;
        case BoundaryKind::incident_from_left:
        default:
            throw BoundaryError(
                "psi_single_tp: scattering needs a turning-point pair");
    }

    const double scale = std::abs(x0) + 1.0;
    std::vector<WaveSample> out;
    out.reserve(grid.size());
    for (double x : grid) {
        const double xi = xi_of_x(s, x0, x);
        const double pref = prefactor_single(s, x0, x, xi);
        const auto ai = airy_ai(xi);
        const auto bi = airy_bi(xi);
        const auto [v, ls] =
            add_scaled(a0 * ai.value, ai.log_scale, b0 * bi.value, bi.log_scale);
        WaveSample w;
        w.x = x;
        w.psi = pref * v;
        w.log_scale = ls;
        w.map = xi;
        w.region = classify_region(s, x, std::abs(x - x0), scale);
        out.push_back(w);
    }

    if (bc.normalization == Normalization::unit_l2 && out.size() > 1) {
        double norm2 = 0.0;
        for (size_t i = 0; i + 1 < out.size(); ++i) {
            const double pa = out[i].psi * std::exp(out[i].log_scale);
            const double pb = out[i + 1].psi * std::exp(out[i + 1].log_scale);
            norm2 += 0.5 * (pa * pa + pb * pb) * (out[i + 1].x - out[i].x);
        }
        if (norm2 > 0.0) {
            const double a = 1.0 / std::sqrt(norm2);
            for (auto& w : out) w.psi *= a;
        }
    }
    return out;
}

std::vector<WaveSample> psi_well(const Splitting& s, const TurningPointSet& tps,
                                 int n, const std::vector<double>& grid) {
    if (tps.kind != TurningPointKind::pair_real ||
        tps.extreme != ExtremeKind::well)
        throw ClassificationError("psi_well: needs a real pair around a well");

    // the energy must be the n-th improved eigenvalue (decay on both sides
    // exists only on shell)
    const auto spec = solve_spectrum_improved(s.potential(), n, n);
    const double en = spec.energy[0];
    if (std::abs(s.energy() - en) > 1e-6 * (std::abs(en) + 1.0))
        throw OffShellError("psi_well: energy is not the requested eigenvalue");

    const double z0sq = zeta0_squared(tps, s); // 2n+1 on shell
    const double a = -0.5 * z0sq;

    const double scale = std::abs(tps.x2 - tps.x1) + 1.0;
    std::vector<WaveSample> out;
    out.reserve(grid.size());
    for (double x : grid) {
        const double zeta = zeta_of_x(s, tps, x);
        const double pref = prefactor_pair(s, tps, z0sq, x, zeta);
        const auto u = pcf_u(a, SQRT2 * zeta);
        WaveSample w;
        w.x = x;
        w.psi = pref * u.value;
        w.log_scale = u.log_scale;
        w.map = zeta;
        const double dist = std::min(std::abs(x - tps.x1), std::abs(x - tps.x2));
        w.region = classify_region(s, x, dist, scale);
        out.push_back(w);
    }

    // unit L2 norm: trapezoid over the grid plus decaying analytic tails
    double norm2 = 0.0;
    for (size_t i = 0; i + 1 < out.size(); ++i) {
        const double pa = out[i].psi * std::exp(out[i].log_scale);
        const double pb = out[i + 1].psi * std::exp(out[i + 1].log_scale);
        norm2 += 0.5 * (pa * pa + pb * pb) * (out[i + 1].x - out[i].x);
    }
    for (const auto* end : {&out.front(), &out.back()}) {
        const double g = s.g(end->x);
        if (g > 0.0) {
            const double p = end->psi * std::exp(end->log_scale);
            norm2 += p * p / (2.0 * std::sqrt(g));
        }
    }
    if (norm2 > 0.0) {
        const double f = 1.0 / std::sqrt(norm2);
        for (auto& w : out) w.psi *= f;
    }
    return out;
}

BarrierWave psi_barrier(const Splitting& s, const TurningPointSet& tps,
                        const BoundaryCondition& bc,
                        const std::vector<double>& grid) {
    if (bc.kind != BoundaryKind::incident_from_left)
        throw BoundaryError("psi_barrier: incident-from-left scattering only");
    if (tps.extreme != ExtremeKind::barrier)
        throw ClassificationError("psi_barrier: needs a barrier extreme");

    const double z0sq = zeta0_squared(tps, s);
    const double b = 0.5 * z0sq;
    const double k = pcf_w_k(b);

    BarrierWave out;
    // outgoing-only to the right: psi = W(b, x) + i k W(b, -x), x = sqrt2 zeta
    out.a2 = {1.0, 0.0};
    out.b2 = {0.0, k};

    // conserved current of the assembled comparison solution, measured from
    // evaluator samples at several map points
    double jsum = 0.0;
    int jcnt = 0;
    for (double zt : {-6.0, -2.5, 0.0, 1.5, 4.0, 8.0}) {
        const double xw = SQRT2 * zt;
        const auto wp = pcf_w_pair(b, xw);
        const auto wn = pcf_w_neg_pair(b, xw);
        const std::complex<double> psi =
            out.a2 * wp.f.to_double() + out.b2 * wn.f.to_double();
        const std::complex<double> dpsi =
            out.a2 * wp.df.to_double() + out.b2 * wn.df.to_double();
        jsum += (std::conj(psi) * dpsi).imag();
        ++jcnt;
    }
    const double j = jsum / jcnt;
    // incident amplitude from the exact left-side decomposition of the pair
    const double i2 =
        0.25 * std::pow(1.0 / std::sqrt(k) + k * std::sqrt(k), 2.0);
    out.transmission = j / i2;

    const double xm = tps.x_m;
    const double scale =
        (tps.kind == TurningPointKind::pair_real && !tps.coalesced)
            ? std::abs(tps.x2 - tps.x1) + 1.0
            : 1.0;
    out.samples.reserve(grid.size());
    for (double x : grid) {
        const double zeta = zeta_of_x(s, tps, x);
        const double pref = prefactor_pair(s, tps, z0sq, x, zeta);
        const auto wp = pcf_w_pair(b, SQRT2 * zeta);
        const auto wn = pcf_w_neg_pair(b, SQRT2 * zeta);
        const double L = std::max(wp.f.log_scale, wn.f.log_scale);
        const std::complex<double> psi =
            out.a2 * (wp.f.value * std::exp(wp.f.log_scale - L)) +
            out.b2 * (wn.f.value * std::exp(wn.f.log_scale - L));
        WaveSample w;
        w.x = x;
        w.psi = pref * std::abs(psi);
        w.log_scale = L;
        w.map = zeta;
        double dist;
        if (tps.kind == TurningPointKind::pair_real && !tps.coalesced)
            dist = std::min(std::abs(x - tps.x1), std::abs(x - tps.x2));
        else
            dist = std::abs(x - xm) + scale;
        w.region = classify_region(s, x, dist, scale);
        out.samples.push_back(w);
    }
    return out;
}

} // namespace uaa
