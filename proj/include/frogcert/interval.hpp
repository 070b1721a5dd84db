#pragma once

// Outward-rounded interval arithmetic. Every operation returns an interval
// guaranteed to contain the exact real result of the operation applied to
// any points of the operand intervals.
//
// Rounding discipline: each endpoint is computed in double precision and
// nudged one representable value outward *only when the floating-point
// result is inexact*. Inexactness is detected with error-free transforms
// (TwoSum for +/-, an fma residual for * and /), so exact operations stay
// exact: [1,2]+[3,4] == [4,6] bit-for-bit. This is portable and thread-safe
// (no rounding-mode switches).
//
// exp() has no residual test; it gets a fixed 2-ulp widening per endpoint,
// which covers any libm whose exp error is below 1 ulp (see EXP_WIDEN_ULPS).

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace frogcert {

struct Interval {
    double lo;
    double hi;
};

namespace detail {

inline double next_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// TwoSum residual: err such that a+b == fl(a+b) + err exactly.
inline double sum_err(double a, double b, double s) {
    const double bv = s - a;
    const double av = s - bv;
    return (a - av) + (b - bv);
}

inline double add_down(double a, double b) {
    const double s = a + b;
    return sum_err(a, b, s) < 0.0 ? next_down(s) : s;
}
inline double add_up(double a, double b) {
    const double s = a + b;
    return sum_err(a, b, s) > 0.0 ? next_up(s) : s;
}

inline double mul_down(double a, double b) {
    const double p = a * b;
    const double err = std::fma(a, b, -p);
    return err < 0.0 ? next_down(p) : p;
}
inline double mul_up(double a, double b) {
    const double p = a * b;
    const double err = std::fma(a, b, -p);
    return err > 0.0 ? next_up(p) : p;
}

// q = fl(x/s) with s > 0 exact; fma gives the sign of q*s - x, i.e. of q - x/s.
inline double div_down(double x, double s) {
    const double q = x / s;
    const double err = std::fma(q, s, -x);
    return err > 0.0 ? next_down(q) : q;
}
inline double div_up(double x, double s) {
    const double q = x / s;
    const double err = std::fma(q, s, -x);
    return err < 0.0 ? next_up(q) : q;
}

// sqrt is correctly rounded, so r*r - x tells which side fl(sqrt(x)) is on.
inline double sqrt_down(double x) {
    const double r = std::sqrt(x);
    const double err = std::fma(r, r, -x);
    return err > 0.0 ? next_down(r) : r;
}
inline double sqrt_up(double x) {
    const double r = std::sqrt(x);
    const double err = std::fma(r, r, -x);
    return err < 0.0 ? next_up(r) : r;
}

} // namespace detail

// Auditable widening constant for exp(); assumes libm exp error < 1 ulp.
inline constexpr int EXP_WIDEN_ULPS = 2;

inline Interval iv_make(double lo, double hi) {
    if (!(lo <= hi))
        throw std::invalid_argument("iv_make: lo > hi");
    return {lo, hi};
}

inline Interval iv_point(double v) {
    if (!std::isfinite(v))
        throw std::invalid_argument("iv_point: non-finite input");
    return {v, v};
}

// Exact enclosure of p/q (q > 0). Degenerate when the quotient is exact
// (dyadic q in particular), otherwise one ulp out on the inexact side.
inline Interval iv_ratio(std::int64_t p, std::int64_t q) {
    if (q <= 0)
        throw std::invalid_argument("iv_ratio: q must be positive");
    const double pd = static_cast<double>(p);
    const double qd = static_cast<double>(q);
    if (static_cast<std::int64_t>(pd) != p || static_cast<std::int64_t>(qd) != q)
        throw std::invalid_argument("iv_ratio: operand exceeds 2^53");
    return {detail::div_down(pd, qd), detail::div_up(pd, qd)};
}

inline Interval iv_add(Interval a, Interval b) {
    return {detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi)};
}

inline Interval iv_neg(Interval a) { return {-a.hi, -a.lo}; }

inline Interval iv_sub(Interval a, Interval b) {
    return {detail::add_down(a.lo, -b.hi), detail::add_up(a.hi, -b.lo)};
}

inline Interval iv_mul(Interval a, Interval b) {
    using namespace detail;
    const double d1 = mul_down(a.lo, b.lo), d2 = mul_down(a.lo, b.hi);
    const double d3 = mul_down(a.hi, b.lo), d4 = mul_down(a.hi, b.hi);
    const double u1 = mul_up(a.lo, b.lo), u2 = mul_up(a.lo, b.hi);
    const double u3 = mul_up(a.hi, b.lo), u4 = mul_up(a.hi, b.hi);
    return {std::fmin(std::fmin(d1, d2), std::fmin(d3, d4)),
            std::fmax(std::fmax(u1, u2), std::fmax(u3, u4))};
}

// Division by an exact positive scalar (integer or other exact double).
// Division by an interval is deliberately not provided.
inline Interval iv_div_exact(Interval a, double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("iv_div_exact: scalar must be positive finite");
    return {detail::div_down(a.lo, s), detail::div_up(a.hi, s)};
}

inline Interval iv_mul_exact(Interval a, double s) {
    return iv_mul(a, iv_point(s));
}

inline Interval iv_exp(Interval a) {
    double lo = std::exp(a.lo);
    double hi = std::exp(a.hi);
    for (int k = 0; k < EXP_WIDEN_ULPS; ++k) {
        lo = detail::next_down(lo);
        hi = detail::next_up(hi);
    }
    if (lo < 0.0) lo = 0.0; // exp is positive; widening may cross an underflowed 0
    return {lo, hi};
}

inline Interval iv_sqrt(Interval a) {
    if (a.lo < 0.0)
        throw std::invalid_argument("iv_sqrt: negative operand");
    return {detail::sqrt_down(a.lo), detail::sqrt_up(a.hi)};
}

inline Interval iv_sq(Interval a) { return iv_mul(a, a); }

// Conservative strict comparison: true only when separation is certified.
inline bool iv_strictly_right_of(Interval a, Interval b) {
    return a.lo > b.hi;
}

inline double iv_width(Interval a) { return a.hi - a.lo; }
inline double iv_mid(Interval a) { return 0.5 * (a.lo + a.hi); }

inline bool iv_contains(Interval a, double v) { return a.lo <= v && v <= a.hi; }
inline bool iv_contains(Interval a, Interval b) { return a.lo <= b.lo && b.hi <= a.hi; }
inline bool iv_intersects(Interval a, Interval b) { return a.lo <= b.hi && b.lo <= a.hi; }

inline std::string iv_str(Interval a) {
    return "[" + std::to_string(a.lo) + ", " + std::to_string(a.hi) + "]";
}

} // namespace frogcert
