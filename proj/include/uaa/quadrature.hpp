#ifndef UAA_QUADRATURE_HPP
#define UAA_QUADRATURE_HPP

#include <functional>

namespace uaa {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   ///< absolute error estimate
    long evals = 0;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Stops when the accumulated error estimate satisfies
/// err <= rel_tol*|value| + abs_tol.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-12, double abs_tol = 0.0,
                     int max_depth = 48);

/// Integrate f over [a, b] where f has square-root zeros (or inverse-sqrt
/// integrable singularities) at one or both endpoints. Applies the
/// substitution x = a + (b-a) sin^2(theta), which regularizes both, then
/// integrates adaptively in theta.
QuadResult integrate_sqrt_endpoints(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol = 1e-12, double abs_tol = 0.0);

} // namespace uaa

#endif
