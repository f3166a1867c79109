#ifndef UAA_ODE_HPP
#define UAA_ODE_HPP

#include "uaa/errors.hpp"

#include <cmath>
#include <complex>
#include <functional>

namespace uaa {

/// State of w'' = f(x) w.
template <typename Scalar>
struct OdeState {
    Scalar w;
    Scalar wp;
};

namespace detail_ode {

template <typename Scalar>
struct Deriv {
    Scalar dw;
    Scalar dwp;
};

template <typename Scalar, typename F>
Deriv<Scalar> rhs(const F& f, double x, const OdeState<Scalar>& y) {
    return {y.wp, f(x) * y.w};
}

} // namespace detail_ode

/// One classical RK4 step of w'' = f(x) w.
template <typename Scalar, typename F>
OdeState<Scalar> rk4_step(const F& f, double x, const OdeState<Scalar>& y, double h) {
    using detail_ode::rhs;
    auto k1 = rhs<Scalar>(f, x, y);
    OdeState<Scalar> y2{y.w + 0.5 * h * k1.dw, y.wp + 0.5 * h * k1.dwp};
    auto k2 = rhs<Scalar>(f, x + 0.5 * h, y2);
    OdeState<Scalar> y3{y.w + 0.5 * h * k2.dw, y.wp + 0.5 * h * k2.dwp};
    auto k3 = rhs<Scalar>(f, x + 0.5 * h, y3);
    OdeState<Scalar> y4{y.w + h * k3.dw, y.wp + h * k3.dwp};
    auto k4 = rhs<Scalar>(f, x + h, y4);
    return {y.w + (h / 6.0) * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw),
            y.wp + (h / 6.0) * (k1.dwp + 2.0 * k2.dwp + 2.0 * k3.dwp + k4.dwp)};
}

/// Fixed-step RK4 propagation with global step-halving until two refinement
/// levels agree to rel_tol. Used by the special-function continuation path.
template <typename Scalar, typename F>
OdeState<Scalar> rk4_propagate(const F& f, double x0, OdeState<Scalar> y0, double x1,
                               double rel_tol = 1e-12) {
    if (x1 == x0) return y0;
    long n = 256;
    OdeState<Scalar> prev{};
    bool have_prev = false;
    for (int level = 0; level < 14; ++level, n *= 2) {
        OdeState<Scalar> y = y0;
        const double h = (x1 - x0) / static_cast<double>(n);
        double x = x0;
        for (long i = 0; i < n; ++i, x = x0 + (i) * h) y = rk4_step<Scalar>(f, x, y, h);
        if (have_prev) {
            const double scale = std::abs(y.w) + std::abs(y.wp) + 1e-30;
            const double diff = std::abs(y.w - prev.w) + std::abs(y.wp - prev.wp);
            if (diff <= rel_tol * scale) return y;
        }
        prev = y;
        have_prev = true;
    }
    throw ConvergenceError("rk4_propagate: step halving did not converge");
}

/// Adaptive Cash-Karp RK45 propagation of w'' = f(x) w from x0 to x1.
/// Independent of rk4_propagate; used as the test-side ODE oracle.
template <typename Scalar, typename F>
OdeState<Scalar> rk45_propagate(const F& f, double x0, OdeState<Scalar> y0, double x1,
                                double rel_tol = 1e-12) {
    if (x1 == x0) return y0;
    static const double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
    static const double b21 = 0.2;
    static const double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static const double b41 = 0.3, b42 = -0.9, b43 = 1.2;
    static const double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0, b54 = 35.0 / 27.0;
    static const double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                        b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
    static const double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                        c6 = 512.0 / 1771.0;
    static const double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                        d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                        d6 = c6 - 0.25;

    const double dir = (x1 > x0) ? 1.0 : -1.0;
    double x = x0;
    double h = dir * std::min(0.05, std::abs(x1 - x0));
    OdeState<Scalar> y = y0;
    auto deriv = [&](double xx, const OdeState<Scalar>& yy) {
        return detail_ode::rhs<Scalar>(f, xx, yy);
    };
    for (long it = 0; it < 2000000; ++it) {
        if ((x - x1) * dir >= 0.0) return y;
        if ((x + h - x1) * dir > 0.0) h = x1 - x;
        auto k1 = deriv(x, y);
        OdeState<Scalar> t{y.w + h * b21 * k1.dw, y.wp + h * b21 * k1.dwp};
        auto k2 = deriv(x + a2 * h, t);
        t = {y.w + h * (b31 * k1.dw + b32 * k2.dw), y.wp + h * (b31 * k1.dwp + b32 * k2.dwp)};
        auto k3 = deriv(x + a3 * h, t);
        t = {y.w + h * (b41 * k1.dw + b42 * k2.dw + b43 * k3.dw),
             y.wp + h * (b41 * k1.dwp + b42 * k2.dwp + b43 * k3.dwp)};
        auto k4 = deriv(x + a4 * h, t);
        t = {y.w + h * (b51 * k1.dw + b52 * k2.dw + b53 * k3.dw + b54 * k4.dw),
             y.wp + h * (b51 * k1.dwp + b52 * k2.dwp + b53 * k3.dwp + b54 * k4.dwp)};
        auto k5 = deriv(x + a5 * h, t);
        t = {y.w + h * (b61 * k1.dw + b62 * k2.dw + b63 * k3.dw + b64 * k4.dw + b65 * k5.dw),
             y.wp + h * (b61 * k1.dwp + b62 * k2.dwp + b63 * k3.dwp + b64 * k4.dwp +
                         b65 * k5.dwp)};
        auto k6 = deriv(x + a6 * h, t);
        OdeState<Scalar> ynew{
            y.w + h * (c1 * k1.dw + c3 * k3.dw + c4 * k4.dw + c6 * k6.dw),
            y.wp + h * (c1 * k1.dwp + c3 * k3.dwp + c4 * k4.dwp + c6 * k6.dwp)};
        const double errw = std::abs(h * (d1 * k1.dw + d3 * k3.dw + d4 * k4.dw +
                                          d5 * k5.dw + d6 * k6.dw));
        const double errp = std::abs(h * (d1 * k1.dwp + d3 * k3.dwp + d4 * k4.dwp +
                                          d5 * k5.dwp + d6 * k6.dwp));
        const double scale = std::abs(ynew.w) + std::abs(ynew.wp) + 1e-30;
        const double err = (errw + errp) / scale;
        if (err <= rel_tol) {
            x += h;
            y = ynew;
            const double grow = (err > 0) ? 0.9 * std::pow(rel_tol / err, 0.2) : 5.0;
            h *= std::min(5.0, std::max(0.2, grow));
        } else {
            h *= std::max(0.1, 0.9 * std::pow(rel_tol / err, 0.25));
            if (std::abs(h) < 1e-14 * (std::abs(x) + 1.0))
                throw ConvergenceError("rk45_propagate: step size collapsed");
        }
    }
    throw ConvergenceError("rk45_propagate: step limit reached");
}

} // namespace uaa

#endif
