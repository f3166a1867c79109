#ifndef UAA_SPECFUN_HPP
#define UAA_SPECFUN_HPP

#include <cmath>
#include <utility>

namespace uaa {

enum class FunRegime { series, asymptotic, ode_continued };

/// A special-function value with an absolute error estimate and, for
/// exponentially growing/decaying regimes, a separate log-scale factor:
/// the represented number is value * exp(log_scale).
struct SpecFunValue {
    double value = 0.0;
    double log_scale = 0.0;
    double error = 0.0; ///< absolute error estimate of `value` (same scaling)
    FunRegime regime = FunRegime::series;

    double to_double() const { return value * std::exp(log_scale); }
};

// ---- Airy functions -------------------------------------------------------

SpecFunValue airy_ai(double x);
SpecFunValue airy_bi(double x);
SpecFunValue airy_ai_prime(double x);
SpecFunValue airy_bi_prime(double x);

// ---- Parabolic cylinder functions ----------------------------------------
//
// pcf_u, pcf_ubar solve w'' = (z^2/4 + a) w; pcf_u is recessive as
// z -> +infinity and pcf_ubar is the standard companion solution
// (Wronskian W{U, Ubar} = sqrt(2/pi)).  pcf_w / pcf_w_neg solve
// w'' + (z^2/4 - a) w = 0 and are the oscillatory pair W(a, z), W(a, -z)
// with W{W(a,x), W(a,-x)} = 1.  Supported range |a| <= 1e3.

SpecFunValue pcf_u(double a, double z);
SpecFunValue pcf_ubar(double a, double z);
SpecFunValue pcf_w(double a, double z);
SpecFunValue pcf_w_neg(double a, double z);

/// Value and derivative in one evaluation (derivative in the same log scale).
struct PcfPair {
    SpecFunValue f;
    SpecFunValue df;
};

PcfPair pcf_u_pair(double a, double z);
PcfPair pcf_ubar_pair(double a, double z);
PcfPair pcf_w_pair(double a, double z);     ///< W(a, z) and dW/dz at z
PcfPair pcf_w_neg_pair(double a, double z); ///< W(a, -z) and d/dz[W(a, -z)]

/// Scattering normalization factor k(a) = sqrt(1 + e^{2 pi a}) - e^{pi a}.
double pcf_w_k(double a);

/// Phase constant phi2(a) = Im log Gamma(1/2 + i a) (continuous branch).
double pcf_w_phi2(double a);

/// High-order adaptive integration of w'' = (z^2/4 + a) w from (z0, w0, w0')
/// to z1; independent of the series/asymptotic evaluation paths.
std::pair<double, double> ode_comparison_oracle(double a, double z0, double w0,
                                                double w0p, double z1);

} // namespace uaa

#endif
