#include "uaa/rootfind.hpp"
#include "uaa/errors.hpp"

#include <cmath>
#include <limits>

namespace uaa {

double brent(const std::function<double(double)>& f, double a, double b,
             double xtol, double rtol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw ConvergenceError("brent: endpoints do not bracket a root");

    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 0.5 * (xtol + rtol * std::abs(b)) +
                            2.0 * std::numeric_limits<double>::epsilon() * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw ConvergenceError("brent: iteration limit reached");
}

bool expand_bracket(const std::function<double(double)>& f, double& lo, double& hi,
                    double min_lo, double max_hi, int max_steps) {
    double flo = f(lo), fhi = f(hi);
    for (int i = 0; i < max_steps; ++i) {
        if (flo * fhi <= 0.0) return true;
        const double w = hi - lo;
        if (lo > min_lo) {
            lo = std::max(min_lo, lo - w);
            flo = f(lo);
            if (flo * fhi <= 0.0) return true;
        }
        if (hi < max_hi) {
            hi = std::min(max_hi, hi + w);
            fhi = f(hi);
        }
        if (lo <= min_lo && hi >= max_hi && flo * fhi > 0.0) return false;
    }
    return false;
}

std::complex<double> newton_complex(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::complex<double> z0, double tol, int max_iter) {
    std::complex<double> z = z0;
    for (int it = 0; it < max_iter; ++it) {
        const std::complex<double> fz = f(z);
        if (std::abs(fz) <= tol) return z;
        const double h = 1e-7 * (std::abs(z) + 1.0);
        const std::complex<double> df =
            (f(z + h) - f(z - h)) / (2.0 * h);
        if (std::abs(df) == 0.0)
            throw ConvergenceError("newton_complex: zero derivative");
        const std::complex<double> step = fz / df;
        z -= step;
        if (std::abs(step) <= 1e-16 * (std::abs(z) + 1.0) && std::abs(f(z)) <= tol)
            return z;
    }
    if (std::abs(f(z)) <= tol * 100) return z;
    throw ConvergenceError("newton_complex: iteration limit reached");
}

} // namespace uaa
