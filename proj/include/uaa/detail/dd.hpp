#ifndef UAA_DETAIL_DD_HPP
#define UAA_DETAIL_DD_HPP

#include <cmath>

namespace uaa::detail {

/// Double-double value (hi + lo, |lo| <= ulp(hi)/2). Used to accumulate
/// power series whose terms cancel far below their peak magnitude.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a, dd b) { return a + dd{-b.hi, -b.lo}; }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator*(dd a, double b) { return a * dd{b}; }

inline dd operator/(dd a, double b) {
    double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    double q2 = ((a.hi - p.hi) + (a.lo - p.lo)) / b;
    return quick_two_sum(q1, q2);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    return quick_two_sum(q1, q2) + dd{q3};
}

} // namespace uaa::detail

#endif
