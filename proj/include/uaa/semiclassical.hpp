#ifndef UAA_SEMICLASSICAL_HPP
#define UAA_SEMICLASSICAL_HPP

#include "uaa/potentials.hpp"
#include "uaa/quadrature.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace uaa {

enum class TurningPointKind { single_real, pair_real, pair_complex };
enum class ExtremeKind { none, well, barrier };

struct TurningPointSet {
    TurningPointKind kind = TurningPointKind::single_real;
    double x0 = 0.0;                  // single turning point
    double x1 = 0.0, x2 = 0.0;        // real pair, x1 <= x2
    std::complex<double> z1, z2;      // complex pair, z2 = conj(z1), Im z1 < 0
    double x_m = 0.0;                 // extreme of g (pairs only)
    ExtremeKind extreme = ExtremeKind::none;
    bool coalesced = false,           // |x2-x1| below the separation tolerance
        single_at_edge = false;       // allowed region runs into the domain edge
};

struct PhaseIntegral {
    double value = 0.0;
    double error = 0.0;
};

/// Locate and classify the turning points of g at the splitting's energy.
TurningPointSet find_turning_points(const Splitting& s);

/// Integral of sqrt(-g) (sign < 0, classically allowed) or sqrt(+g)
/// (sign > 0, barrier) over [x1, x2] with endpoint square-root zeros.
PhaseIntegral phase_integral_real(const Splitting& s, double x1, double x2, int sign);

/// Oriented integral of sqrt(|g|) from a to b (helper for maps and tests).
double phase_between(const Splitting& s, double a, double b);

/// Signed zeta_0^2: +(2/pi)|Int sqrt|g|| for a real pair, -(2/pi)|...| along
/// the straight complex segment for a conjugate pair, 0 when coalesced.
double zeta0_squared(const TurningPointSet& tps, const Splitting& s);

/// Liouville map for a single turning point: sign(xi) = sign(g),
/// (2/3)|xi|^{3/2} = |Int_{x0}^{x} sqrt|g||.
double xi_of_x(const Splitting& s, double x0, double x);

/// Liouville map for a turning-point pair: zeta(x1) = -|zeta0|,
/// zeta(x2) = +|zeta0| (real pair); zeta(x_m) = 0 (complex pair).
double zeta_of_x(const Splitting& s, const TurningPointSet& tps, double x);

/// WKB validity measure Q = hbar^2 |5 tau'^2 - 4 tau tau''| / (16 |tau|^3),
/// tau = 2m(E - V).
double wkb_condition_q(const Splitting& s, double x);

/// Error-control function of the Airy-type (single turning point) solution,
/// anchored at x0, evaluated at x.
double error_control_h(const Splitting& s, double x0, double x);

/// Error-control function of the parabolic-cylinder-type solution, anchored
/// at the turning point on x's side of the extreme.
double error_control_i(const Splitting& s, const TurningPointSet& tps, double x);

enum class Method { exact, wkb, improved, numerov };
std::string to_string(Method m);

struct SolverDiagnostics {
    int iterations = 0;
    double residual = 0.0; ///< |phase - (n+1/2)pi| at the returned energy
    bool marginal = false; ///< eigenvalue pinned at the continuum threshold
};

struct SpectrumResult {
    Method method = Method::improved;
    std::vector<int> n;
    std::vector<double> energy;
    std::vector<SolverDiagnostics> diagnostics;
};

/// Solve the quantization condition Int sqrt(-g) = (n+1/2) pi between the
/// turning points of the improved splitting (or (n+3/4) pi from the single
/// turning point to the supplied boundary x_b).
SpectrumResult solve_spectrum_improved(const Potential& pot, int n_lo, int n_hi,
                                       std::optional<double> boundary = {});

/// Same with q = 0 and the classical turning points of E - V.
SpectrumResult solve_spectrum_wkb(const Potential& pot, int n_lo, int n_hi,
                                  std::optional<double> boundary = {});

/// T = 1/(1 + e^{pi zeta0^2}); valid below and above the barrier top.
double transmission_improved(const Potential& pot, double energy);

/// Tunneling exponential from the classical turning points (below top only).
double transmission_wkb(const Potential& pot, double energy);

} // namespace uaa

#endif
