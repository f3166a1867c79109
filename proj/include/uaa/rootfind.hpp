#ifndef UAA_ROOTFIND_HPP
#define UAA_ROOTFIND_HPP

#include <complex>
#include <functional>

namespace uaa {

/// Brent's method on [a, b]; requires f(a) and f(b) of opposite sign.
/// Converges to |b-a| <= xtol + rtol*|x|.
double brent(const std::function<double(double)>& f, double a, double b,
             double xtol = 0.0, double rtol = 1e-15, int max_iter = 200);

/// Expand [lo, hi] geometrically about its center until f changes sign or
/// the bounds [min_lo, max_hi] are hit. Returns true with lo/hi bracketing.
bool expand_bracket(const std::function<double(double)>& f, double& lo, double& hi,
                    double min_lo, double max_hi, int max_steps = 200);

/// Newton iteration for a complex root of an analytic function; the
/// derivative is taken by central differences in the complex plane.
std::complex<double> newton_complex(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::complex<double> z0, double tol, int max_iter = 80);

} // namespace uaa

#endif
