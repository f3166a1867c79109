#include "uaa/potentials.hpp"
#include "uaa/errors.hpp"
#include "uaa/rootfind.hpp"

#include <cmath>
#include <limits>

namespace uaa {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

double pow_int(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// d^k/dx^k of c * x^p for integer p < 0 (k = 0..4)
double inv_power_deriv(double c, int p, double x, int k) {
    double coef = c;
    for (int j = 0; j < k; ++j) coef *= (p - j);
    return coef * std::pow(x, p - k);
}

// d^k/dx^k of c * sech^2(alpha x), k = 0..4
double sech2_deriv(double c, double alpha, double x, int k) {
    const double s = 1.0 / std::cosh(alpha * x); // underflows to 0 far out
    const double s2 = s * s;
    const double t = std::tanh(alpha * x);
    switch (k) {
        case 0: return c * s2;
        case 1: return -2.0 * alpha * c * s2 * t;
        case 2: return 2.0 * alpha * alpha * c * s2 * (2.0 * t * t - s2);
        case 3: return 8.0 * pow_int(alpha, 3) * c * s2 * t * (2.0 * s2 - t * t);
        case 4:
            return 8.0 * pow_int(alpha, 4) * c * s2 *
                   (2.0 * pow_int(t, 4) - 11.0 * s2 * t * t + 2.0 * s2 * s2);
        default: throw RangeError("sech2_deriv: order out of range");
    }
}

// d^k/dx^k of a * csch^2(alpha x) + b * coth(alpha x), k = 0..4
double eckart_part_deriv(double a, double b, double alpha, double x, int k) {
    const double sh = std::sinh(alpha * x);
    const double ch = std::cosh(alpha * x);
    double c, kv; // csch^2 and coth
    if (std::isinf(sh)) {
        c = 0.0;
        kv = (x > 0) ? 1.0 : -1.0;
    } else {
        c = 1.0 / (sh * sh);
        kv = ch / sh;
    }
    switch (k) {
        case 0: return a * c + b * kv;
        case 1: return alpha * (-2.0 * a * c * kv - b * c);
        case 2:
            return alpha * alpha *
                   (2.0 * a * c * (2.0 * kv * kv + c) + 2.0 * b * c * kv);
        case 3:
            return pow_int(alpha, 3) * (-8.0 * a * c * kv * (kv * kv + 2.0 * c) -
                                        2.0 * b * c * (2.0 * kv * kv + c));
        case 4:
            return pow_int(alpha, 4) *
                   (8.0 * a * c *
                        (2.0 * pow_int(kv, 4) + 11.0 * c * kv * kv + 2.0 * c * c) +
                    8.0 * b * c * kv * (kv * kv + 2.0 * c));
        default: throw RangeError("eckart_part_deriv: order out of range");
    }
}

// Richardson-extrapolated central differences (used for user potentials)
double fd_deriv(const std::function<double(double)>& f, double x, int order, double h) {
    auto stencil = [&](double hh) {
        switch (order) {
            case 1: return (f(x + hh) - f(x - hh)) / (2.0 * hh);
            case 2: return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh);
            case 3:
                return (f(x + 2 * hh) - 2.0 * f(x + hh) + 2.0 * f(x - hh) -
                        f(x - 2 * hh)) /
                       (2.0 * hh * hh * hh);
            case 4:
                return (f(x - 2 * hh) - 4.0 * f(x - hh) + 6.0 * f(x) -
                        4.0 * f(x + hh) + f(x + 2 * hh)) /
                       (hh * hh * hh * hh);
            default: throw RangeError("fd_deriv: order out of range");
        }
    };
    const double d1 = stencil(h);
    const double d2 = stencil(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

std::string to_string(PotentialKind kind) {
    switch (kind) {
        case PotentialKind::hydrogen: return "hydrogen";
        case PotentialKind::oscillator_d: return "oscillator-d";
        case PotentialKind::morse: return "morse";
        case PotentialKind::poschl_teller_well: return "poschl-teller-well";
        case PotentialKind::poschl_teller_barrier: return "poschl-teller-barrier";
        case PotentialKind::eckart: return "eckart";
        case PotentialKind::pure_oscillator_1d: return "pure-oscillator-1d";
        case PotentialKind::user_defined: return "user-defined";
    }
    return "?";
}

std::optional<PotentialKind> kind_from_string(const std::string& name) {
    for (PotentialKind k :
         {PotentialKind::hydrogen, PotentialKind::oscillator_d, PotentialKind::morse,
          PotentialKind::poschl_teller_well, PotentialKind::poschl_teller_barrier,
          PotentialKind::eckart, PotentialKind::pure_oscillator_1d,
          PotentialKind::user_defined}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

struct Potential::Impl {
    PotentialKind kind;
    PhysicalParams p;
    Domain domain = Domain::full_line;
    int pole_order = 0;
    double L2 = 0.0;        // centrifugal strength
    double threshold = INF; // continuum threshold
    double x_extreme = 0.0; // extreme of V - (hbar^2/2m) q
    QProvenance qprov = QProvenance::zero;

    // user-defined pieces
    std::function<double(double)> user_v;
    std::function<double(double, int)> user_dv;
    double user_pole_coef = 0.0;
    double bump_amp = 0.0;   // q0 - q_pole(x_m)
    double bump_width = 1.0; // gaussian width of the interpolation bump

    double cent_coef() const { return p.hbar * p.hbar * L2 / (2.0 * p.m); }

    void require_inside(double x) const {
        if (domain == Domain::half_line && x <= 0.0)
            throw DomainError(to_string(kind) + ": x must be positive");
        if (!std::isfinite(x)) throw DomainError("x not finite");
    }
};

Potential::Potential(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Potential Potential::make(PotentialKind kind, const PhysicalParams& p) {
    if (!(p.m > 0) || !(p.hbar > 0)) throw DomainError("require m > 0 and hbar > 0");
    if (p.alpha <= 0) throw DomainError("require alpha > 0");
    if (p.l < 0) throw DomainError("require l >= 0");
    if (p.D < 1) throw DomainError("require D >= 1");

    auto impl = std::make_shared<Impl>();
    impl->kind = kind;
    impl->p = p;
    switch (kind) {
        case PotentialKind::hydrogen: {
            impl->domain = Domain::half_line;
            impl->pole_order = 2;
            impl->L2 = static_cast<double>(p.l) * (p.l + 1);
            impl->threshold = 0.0;
            impl->qprov = QProvenance::pole_rule;
            const double c2t =
                p.hbar * p.hbar * (p.l + 0.5) * (p.l + 0.5) / (2.0 * p.m);
            impl->x_extreme = 2.0 * c2t / (p.e * p.e);
            break;
        }
        case PotentialKind::oscillator_d: {
            impl->domain = Domain::half_line;
            impl->pole_order = 2;
            impl->L2 = p.l * (p.D + p.l - 2.0) + (p.D - 1.0) * (p.D - 3.0) / 4.0;
            impl->threshold = INF;
            impl->qprov = QProvenance::pole_rule;
            const double c2t = p.hbar * p.hbar * (impl->L2 + 0.25) / (2.0 * p.m);
            impl->x_extreme = std::pow(2.0 * c2t / (p.m * p.omega * p.omega), 0.25);
            break;
        }
        case PotentialKind::morse: {
            impl->domain = Domain::full_line;
            impl->threshold = 0.0;
            impl->qprov = QProvenance::extreme_rule; // q0 = 0, so q == 0
            if (p.v0 > 0 && p.v1 < 0)
                impl->x_extreme = -std::log(-p.v1 / (2.0 * p.v0)) / p.alpha;
            break;
        }
        case PotentialKind::poschl_teller_well:
            if (!(p.v0 < 0)) throw DomainError("poschl-teller-well requires v0 < 0");
            impl->domain = Domain::full_line;
            impl->threshold = 0.0;
            impl->qprov = QProvenance::extreme_rule;
            break;
        case PotentialKind::poschl_teller_barrier:
            if (!(p.v0 > 0))
                throw DomainError("poschl-teller-barrier requires v0 > 0");
            impl->domain = Domain::full_line;
            impl->threshold = 0.0;
            impl->qprov = QProvenance::extreme_rule;
            break;
        case PotentialKind::eckart: {
            if (!(p.v0 > 0)) throw DomainError("eckart requires v0 > 0");
            impl->domain = Domain::half_line;
            impl->pole_order = 2;
            impl->threshold = p.v1;
            impl->qprov = QProvenance::pole_rule;
            const double v0e =
                p.v0 - p.hbar * p.hbar * p.alpha * p.alpha / (8.0 * p.m);
            if (p.v1 < 0 && -p.v1 > 2.0 * v0e && v0e > 0)
                impl->x_extreme = std::atanh(2.0 * v0e / (-p.v1)) / p.alpha;
            break;
        }
        case PotentialKind::pure_oscillator_1d:
            impl->domain = Domain::full_line;
            impl->threshold = INF;
            impl->qprov = QProvenance::zero;
            break;
        case PotentialKind::user_defined:
            throw UnsupportedError("use Potential::user for user-defined potentials");
    }
    return Potential(impl);
}

Potential Potential::user(const UserPotentialSpec& spec) {
    if (!spec.V) throw DomainError("user potential: V evaluator required");
    if (spec.pole_order != 0 && spec.pole_order != 2)
        throw UnsupportedError("user potential: only pole orders 0 and 2 supported");

    auto impl = std::make_shared<Impl>();
    impl->kind = PotentialKind::user_defined;
    impl->domain = spec.domain;
    impl->pole_order = spec.pole_order;
    impl->user_pole_coef = spec.pole_coefficient;
    impl->user_v = spec.V;
    impl->user_dv = spec.dV;
    impl->x_extreme = spec.x_extreme;
    impl->threshold = INF;
    impl->qprov = QProvenance::user;

    // q = q_pole + (q0 - q_pole(x_m)) exp(-((x - x_m)/sigma)^2); the pole
    // part is -1/(4x^2) when a second-order pole exists
    const double xm = spec.x_extreme;
    const double c = 2.0 * impl->p.m / (impl->p.hbar * impl->p.hbar);
    std::function<double(double)> g_classical = [V = spec.V, c](double x) {
        return c * V(x);
    };
    std::function<double(double, int)> dg;
    if (spec.dV)
        dg = [dv = spec.dV, c](double x, int k) { return c * dv(x, k); };
    double q0;
    try {
        q0 = q0_from_extreme(g_classical, xm, spec.dV ? &dg : nullptr);
    } catch (const DegenerateExtremeError&) {
        throw SelectionError("user potential: degenerate extreme point");
    }
    const double q_pole_at_xm = (spec.pole_order == 2) ? -1.0 / (4.0 * xm * xm) : 0.0;
    impl->bump_amp = q0 - q_pole_at_xm;

    // bump width: distance from x_m to the nearest classical turning point
    // at the sample energy
    const double E = spec.sample_energy;
    auto emv = [&](double x) { return E - spec.V(x); };
    double width = 0.0;
    for (double dir : {-1.0, 1.0}) {
        double lo = xm, hi = xm + dir * 0.5 * (std::abs(xm) + 1.0);
        if (dir < 0) std::swap(lo, hi);
        const double min_lo = (spec.domain == Domain::half_line)
                                  ? 1e-12 * (std::abs(xm) + 1.0)
                                  : xm - 1e6;
        if (expand_bracket(emv, lo, hi, min_lo, xm + 1e6)) {
            try {
                const double tp = brent(emv, lo, hi, 1e-13);
                const double d = std::abs(tp - xm);
                if (d > 0 && (width == 0.0 || d < width)) width = d;
            } catch (const ConvergenceError&) {
            }
        }
    }
    if (width == 0.0)
        throw SelectionError(
            "user potential: no classical turning point at the sample energy");
    impl->bump_width = width;

    // the selected q must stay small against g away from the turning points
    const Potential pot(impl);
    const Splitting s(pot, E, true);
    for (int i = 0; i <= 40; ++i) {
        const double x = xm + (i - 20) * 0.35 * width;
        if (spec.domain == Domain::half_line && x <= 0) continue;
        if (std::abs(x - xm) < 1.8 * width) continue;
        const double gg = s.g(x);
        const double qq = pot.q(x);
        if (std::abs(qq) > 0.5 * std::abs(gg))
            throw SelectionError("user potential: |q| not small against |g|");
    }
    return pot;
}

PotentialKind Potential::kind() const { return impl_->kind; }
const PhysicalParams& Potential::params() const { return impl_->p; }
Domain Potential::domain() const { return impl_->domain; }
int Potential::pole_order() const { return impl_->pole_order; }
double Potential::centrifugal_strength() const { return impl_->L2; }

double Potential::pole_coefficient() const {
    const auto& p = impl_->p;
    switch (impl_->kind) {
        case PotentialKind::hydrogen:
        case PotentialKind::oscillator_d:
            return impl_->cent_coef();
        case PotentialKind::eckart:
            return p.v0 / (p.alpha * p.alpha);
        case PotentialKind::user_defined:
            return impl_->user_pole_coef;
        default:
            return 0.0;
    }
}
double Potential::continuum_threshold() const { return impl_->threshold; }
QProvenance Potential::q_provenance() const { return impl_->qprov; }
double Potential::extreme_location() const { return impl_->x_extreme; }

double Potential::domain_left() const {
    return impl_->domain == Domain::half_line ? 0.0 : -INF;
}

double Potential::v(double x) const {
    impl_->require_inside(x);
    const auto& p = impl_->p;
    switch (impl_->kind) {
        case PotentialKind::hydrogen:
            return -p.e * p.e / x + impl_->cent_coef() / (x * x);
        case PotentialKind::oscillator_d:
            return 0.5 * p.m * p.omega * p.omega * x * x + impl_->cent_coef() / (x * x);
        case PotentialKind::morse:
            return p.v0 * std::exp(-2.0 * p.alpha * x) + p.v1 * std::exp(-p.alpha * x);
        case PotentialKind::poschl_teller_well:
        case PotentialKind::poschl_teller_barrier:
            return sech2_deriv(p.v0, p.alpha, x, 0);
        case PotentialKind::eckart:
            return eckart_part_deriv(p.v0, p.v1, p.alpha, x, 0);
        case PotentialKind::pure_oscillator_1d:
            return 0.5 * p.m * p.omega * p.omega * x * x;
        case PotentialKind::user_defined:
            return impl_->user_v(x);
    }
    return 0.0;
}

double Potential::dv(double x, int order) const {
    impl_->require_inside(x);
    if (order < 1 || order > 4) throw RangeError("dv: order must be 1..4");
    const auto& p = impl_->p;
    switch (impl_->kind) {
        case PotentialKind::hydrogen:
            return inv_power_deriv(-p.e * p.e, -1, x, order) +
                   inv_power_deriv(impl_->cent_coef(), -2, x, order);
        case PotentialKind::oscillator_d: {
            double quad = 0.0;
            if (order == 1) quad = p.m * p.omega * p.omega * x;
            if (order == 2) quad = p.m * p.omega * p.omega;
            return quad + inv_power_deriv(impl_->cent_coef(), -2, x, order);
        }
        case PotentialKind::morse: {
            const double a = p.alpha;
            return p.v0 * pow_int(-2.0 * a, order) * std::exp(-2.0 * a * x) +
                   p.v1 * pow_int(-a, order) * std::exp(-a * x);
        }
        case PotentialKind::poschl_teller_well:
        case PotentialKind::poschl_teller_barrier:
            return sech2_deriv(p.v0, p.alpha, x, order);
        case PotentialKind::eckart:
            return eckart_part_deriv(p.v0, p.v1, p.alpha, x, order);
        case PotentialKind::pure_oscillator_1d:
            if (order == 1) return p.m * p.omega * p.omega * x;
            if (order == 2) return p.m * p.omega * p.omega;
            return 0.0;
        case PotentialKind::user_defined: {
            if (impl_->user_dv) return impl_->user_dv(x, order);
            const double h = (std::abs(x) + 1.0) * 1e-3;
            return fd_deriv(impl_->user_v, x, order, h);
        }
    }
    return 0.0;
}

bool Potential::has_complex_eval() const {
    return impl_->kind != PotentialKind::user_defined;
}

std::complex<double> Potential::v_complex(std::complex<double> z) const {
    const auto& p = impl_->p;
    using C = std::complex<double>;
    switch (impl_->kind) {
        case PotentialKind::hydrogen:
            return -p.e * p.e / z + impl_->cent_coef() / (z * z);
        case PotentialKind::oscillator_d:
            return 0.5 * p.m * p.omega * p.omega * z * z + impl_->cent_coef() / (z * z);
        case PotentialKind::morse:
            return p.v0 * std::exp(-2.0 * p.alpha * z) + p.v1 * std::exp(-p.alpha * z);
        case PotentialKind::poschl_teller_well:
        case PotentialKind::poschl_teller_barrier: {
            const C c = std::cosh(p.alpha * z);
            return p.v0 / (c * c);
        }
        case PotentialKind::eckart: {
            const C s = std::sinh(p.alpha * z);
            const C t = std::tanh(p.alpha * z);
            return p.v0 / (s * s) + p.v1 / t;
        }
        case PotentialKind::pure_oscillator_1d:
            return 0.5 * p.m * p.omega * p.omega * z * z;
        case PotentialKind::user_defined:
            throw UnsupportedError("user potential: no complex continuation");
    }
    return 0.0;
}

double Potential::q(double x) const {
    impl_->require_inside(x);
    const auto& p = impl_->p;
    switch (impl_->kind) {
        case PotentialKind::hydrogen:
        case PotentialKind::oscillator_d:
            return -1.0 / (4.0 * x * x);
        case PotentialKind::morse:
        case PotentialKind::pure_oscillator_1d:
            return 0.0;
        case PotentialKind::poschl_teller_well:
        case PotentialKind::poschl_teller_barrier:
            return sech2_deriv(0.25 * p.alpha * p.alpha, p.alpha, x, 0);
        case PotentialKind::eckart:
            return eckart_part_deriv(-0.25 * p.alpha * p.alpha, 0.0, p.alpha, x, 0);
        case PotentialKind::user_defined: {
            const double pole = impl_->pole_order == 2 ? -1.0 / (4.0 * x * x) : 0.0;
            const double u = (x - impl_->x_extreme) / impl_->bump_width;
            return pole + impl_->bump_amp * std::exp(-u * u);
        }
    }
    return 0.0;
}

double Potential::dq(double x, int order) const {
    impl_->require_inside(x);
    if (order < 1 || order > 4) throw RangeError("dq: order must be 1..4");
    const auto& p = impl_->p;
    switch (impl_->kind) {
        case PotentialKind::hydrogen:
        case PotentialKind::oscillator_d:
            return inv_power_deriv(-0.25, -2, x, order);
        case PotentialKind::morse:
        case PotentialKind::pure_oscillator_1d:
            return 0.0;
        case PotentialKind::poschl_teller_well:
        case PotentialKind::poschl_teller_barrier:
            return sech2_deriv(0.25 * p.alpha * p.alpha, p.alpha, x, order);
        case PotentialKind::eckart:
            return eckart_part_deriv(-0.25 * p.alpha * p.alpha, 0.0, p.alpha, x, order);
        case PotentialKind::user_defined: {
            const double pole =
                impl_->pole_order == 2 ? inv_power_deriv(-0.25, -2, x, order) : 0.0;
            const double w = impl_->bump_width;
            const double u = (x - impl_->x_extreme) / w;
            const double e = impl_->bump_amp * std::exp(-u * u);
            double poly = 0.0;
            switch (order) {
                case 1: poly = -2.0 * u / w; break;
                case 2: poly = (4.0 * u * u - 2.0) / (w * w); break;
                case 3: poly = (12.0 * u - 8.0 * u * u * u) / (w * w * w); break;
                case 4:
                    poly = (16.0 * pow_int(u, 4) - 48.0 * u * u + 12.0) /
                           (w * w * w * w);
                    break;
            }
            return pole + e * poly;
        }
    }
    return 0.0;
}

bool Potential::has_complex_q() const {
    return impl_->kind != PotentialKind::user_defined;
}

std::complex<double> Potential::q_complex(std::complex<double> z) const {
    const auto& p = impl_->p;
    using C = std::complex<double>;
    switch (impl_->kind) {
        case PotentialKind::hydrogen:
        case PotentialKind::oscillator_d:
            return -1.0 / (4.0 * z * z);
        case PotentialKind::morse:
        case PotentialKind::pure_oscillator_1d:
            return 0.0;
        case PotentialKind::poschl_teller_well:
        case PotentialKind::poschl_teller_barrier: {
            const C c = std::cosh(p.alpha * z);
            return 0.25 * p.alpha * p.alpha / (c * c);
        }
        case PotentialKind::eckart: {
            const C s = std::sinh(p.alpha * z);
            return -0.25 * p.alpha * p.alpha / (s * s);
        }
        case PotentialKind::user_defined:
            throw UnsupportedError("user potential: no complex continuation");
    }
    return 0.0;
}

double Potential::v_eff(double x) const {
    const auto& p = impl_->p;
    return v(x) - p.hbar * p.hbar * q(x) / (2.0 * p.m);
}

// ---------------------------------------------------------------------------

Splitting::Splitting(Potential pot, double energy, bool with_q)
    : pot_(std::move(pot)), energy_(energy), with_q_(with_q) {}

double Splitting::g(double x) const {
    const auto& p = pot_.params();
    const double base = -2.0 * p.m * (energy_ - pot_.v(x)) / (p.hbar * p.hbar);
    return with_q_ ? base - pot_.q(x) : base;
}

double Splitting::dg(double x, int order) const {
    const auto& p = pot_.params();
    const double base = 2.0 * p.m * pot_.dv(x, order) / (p.hbar * p.hbar);
    return with_q_ ? base - pot_.dq(x, order) : base;
}

std::complex<double> Splitting::g_complex(std::complex<double> z) const {
    const auto& p = pot_.params();
    const std::complex<double> base =
        -2.0 * p.m * (energy_ - pot_.v_complex(z)) / (p.hbar * p.hbar);
    return with_q_ ? base - pot_.q_complex(z) : base;
}

double Splitting::q(double x) const { return with_q_ ? pot_.q(x) : 0.0; }

double Splitting::dq(double x, int order) const {
    return with_q_ ? pot_.dq(x, order) : 0.0;
}

Splitting build_splitting(const Potential& pot, double energy) {
    return Splitting(pot, energy, true);
}

Splitting build_splitting_wkb(const Potential& pot, double energy) {
    return Splitting(pot, energy, false);
}

// ---------------------------------------------------------------------------

double q0_from_extreme(const std::function<double(double)>& g, double x_m,
                       const std::function<double(double, int)>* dg) {
    double g2, g3, g4;
    if (dg && *dg) {
        g2 = (*dg)(x_m, 2);
        g3 = (*dg)(x_m, 3);
        g4 = (*dg)(x_m, 4);
    } else {
        const double h = (std::abs(x_m) + 1.0) * 1e-3;
        g2 = fd_deriv(g, x_m, 2, h);
        g3 = fd_deriv(g, x_m, 3, h);
        g4 = fd_deriv(g, x_m, 4, h);
    }
    const double scale = std::abs(g3) + std::abs(g4) + 1.0;
    if (std::abs(g2) < 1e-10 * scale)
        throw DegenerateExtremeError("q0_from_extreme: g''(x_m) vanishes");
    return 7.0 * g3 * g3 / (288.0 * g2 * g2) - g4 / (32.0 * g2);
}

double q0_from_extreme(const Potential& pot) {
    // derivatives of g of order >= 2 equal (2m/hbar^2) V^(k): E-independent
    const auto& p = pot.params();
    const double c = 2.0 * p.m / (p.hbar * p.hbar);
    const double xm = pot.extreme_location();
    std::function<double(double)> g = [&pot, c](double x) { return c * pot.v(x); };
    std::function<double(double, int)> dg = [&pot, c](double x, int k) {
        return c * pot.dv(x, k);
    };
    return q0_from_extreme(g, xm, &dg);
}

// ---------------------------------------------------------------------------

namespace {

// largest bound index from the condition 2n+1 <= u_max (marginal threshold
// states included, with a round-off guard)
int count_from_odd_bound(double u_max) {
    if (!(u_max >= 1.0 - 1e-12)) return 0;
    return static_cast<int>(std::floor((u_max - 1.0) / 2.0 + 1e-12)) + 1;
}

void require_bound_index(const Potential& pot, int n) {
    if (n < 0) throw NoBoundStateError("quantum number must be >= 0");
    const int cnt = bound_state_count(pot);
    if (cnt >= 0 && n >= cnt)
        throw NoBoundStateError(to_string(pot.kind()) +
                                ": no bound state at n = " + std::to_string(n));
}

// the plain WKB condition closes at a slightly different count: its phase
// integral saturates at sqrt(-8mv0)-type values instead of the exact ones
int wkb_bound_state_count(const Potential& pot) {
    const auto& p = pot.params();
    switch (pot.kind()) {
        case PotentialKind::poschl_teller_well: {
            const double bw = std::sqrt(
                -8.0 * p.m * p.v0 / (p.alpha * p.alpha * p.hbar * p.hbar));
            return count_from_odd_bound(bw);
        }
        case PotentialKind::eckart: {
            if (!(p.v1 < 0)) return 0;
            const double kw = std::sqrt(
                8.0 * p.m * p.v0 / (p.alpha * p.alpha * p.hbar * p.hbar));
            const double s_max = 2.0 * std::sqrt(p.m * (-p.v1)) / (p.alpha * p.hbar);
            return count_from_odd_bound(s_max - kw + 1.0);
        }
        default:
            return bound_state_count(pot);
    }
}

void require_wkb_bound_index(const Potential& pot, int n) {
    if (n < 0) throw NoBoundStateError("quantum number must be >= 0");
    const int cnt = wkb_bound_state_count(pot);
    if (cnt >= 0 && n >= cnt)
        throw NoBoundStateError(to_string(pot.kind()) +
                                ": no WKB bound state at n = " + std::to_string(n));
}

} // namespace

int bound_state_count(const Potential& pot) {
    const auto& p = pot.params();
    switch (pot.kind()) {
        case PotentialKind::hydrogen:
        case PotentialKind::oscillator_d:
        case PotentialKind::pure_oscillator_1d:
            return -1;
        case PotentialKind::morse: {
            if (!(p.v0 > 0) || !(p.v1 < 0)) return 0;
            const double u_max =
                -p.v1 * std::sqrt(2.0 * p.m / p.v0) / (p.alpha * p.hbar);
            return count_from_odd_bound(u_max);
        }
        case PotentialKind::poschl_teller_well: {
            const double beta = std::sqrt(
                1.0 - 8.0 * p.m * p.v0 / (p.alpha * p.alpha * p.hbar * p.hbar));
            return count_from_odd_bound(beta);
        }
        case PotentialKind::eckart: {
            if (!(p.v1 < 0)) return 0;
            const double kap = std::sqrt(
                1.0 + 8.0 * p.m * p.v0 / (p.alpha * p.alpha * p.hbar * p.hbar));
            const double s_max = 2.0 * std::sqrt(p.m * (-p.v1)) / (p.alpha * p.hbar);
            return count_from_odd_bound(s_max - kap + 1.0);
        }
        case PotentialKind::poschl_teller_barrier:
            return 0;
        case PotentialKind::user_defined:
            throw UnsupportedError("bound_state_count: user-defined potential");
    }
    return 0;
}

double exact_spectrum(const Potential& pot, int n) {
    const auto& p = pot.params();
    require_bound_index(pot, n);
    switch (pot.kind()) {
        case PotentialKind::hydrogen: {
            const double d = n + p.l + 1.0;
            return -p.m * pow_int(p.e, 4) / (2.0 * p.hbar * p.hbar * d * d);
        }
        case PotentialKind::oscillator_d:
            return (2.0 * n + p.l + 0.5 * p.D) * p.hbar * p.omega;
        case PotentialKind::morse: {
            const double u = 2.0 * n + 1.0;
            return -(2.0 * p.m * p.v1 * p.v1 +
                     u * p.alpha * p.hbar *
                         (2.0 * std::sqrt(2.0 * p.m * p.v0) * p.v1 +
                          u * p.v0 * p.alpha * p.hbar)) /
                   (8.0 * p.m * p.v0);
        }
        case PotentialKind::poschl_teller_well: {
            const double a2h2 = p.alpha * p.alpha * p.hbar * p.hbar;
            const double beta = std::sqrt(1.0 - 8.0 * p.m * p.v0 / a2h2);
            return p.v0 - (a2h2 / (4.0 * p.m)) *
                              (2.0 * n * n + 2.0 * n + 1.0 - (2.0 * n + 1.0) * beta);
        }
        case PotentialKind::eckart: {
            const double a2h2 = p.alpha * p.alpha * p.hbar * p.hbar;
            const double s = std::sqrt(1.0 + 8.0 * p.m * p.v0 / a2h2) + 2.0 * n + 1.0;
            return -2.0 * p.m * p.v1 * p.v1 / (a2h2 * s * s) -
                   a2h2 * s * s / (8.0 * p.m);
        }
        case PotentialKind::pure_oscillator_1d:
            return (n + 0.5) * p.hbar * p.omega;
        default:
            throw UnsupportedError("exact_spectrum: no closed form for " +
                                   to_string(pot.kind()));
    }
}

double wkb_spectrum_closed_form(const Potential& pot, int n) {
    const auto& p = pot.params();
    require_wkb_bound_index(pot, n);
    switch (pot.kind()) {
        case PotentialKind::hydrogen: {
            const double d =
                n + 0.5 + std::sqrt(static_cast<double>(p.l) * (p.l + 1));
            return -p.m * pow_int(p.e, 4) / (2.0 * p.hbar * p.hbar * d * d);
        }
        case PotentialKind::oscillator_d:
            return (2.0 * n + std::sqrt(pot.centrifugal_strength()) + 1.0) * p.hbar *
                   p.omega;
        case PotentialKind::morse:
            return exact_spectrum(pot, n);
        case PotentialKind::poschl_teller_well: {
            const double a2h2 = p.alpha * p.alpha * p.hbar * p.hbar;
            const double u = 2.0 * n + 1.0;
            return p.v0 - (a2h2 / (4.0 * p.m)) *
                              (0.5 * u * u - u * std::sqrt(-8.0 * p.m * p.v0 / a2h2));
        }
        case PotentialKind::eckart: {
            const double a2h2 = p.alpha * p.alpha * p.hbar * p.hbar;
            const double s = std::sqrt(8.0 * p.m * p.v0 / a2h2) + 2.0 * n + 1.0;
            return -2.0 * p.m * p.v1 * p.v1 / (a2h2 * s * s) -
                   a2h2 * s * s / (8.0 * p.m);
        }
        case PotentialKind::pure_oscillator_1d:
            return (n + 0.5) * p.hbar * p.omega;
        default:
            throw UnsupportedError("wkb_spectrum_closed_form: no closed form for " +
                                   to_string(pot.kind()));
    }
}

} // namespace uaa
