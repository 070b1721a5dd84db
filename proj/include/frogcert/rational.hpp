#pragma once

// Small exact rationals (int64 numerator/denominator) for certificate
// bookkeeping: rates, step deltas and grid points all have denominators
// that are tiny powers of two, so int64 never comes close to overflow.
// Enumeration probabilities need arbitrary precision and use
// boost::multiprecision::cpp_rational instead (see enumerate.hpp).

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace frogcert {

struct Rat64 {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat64() = default;
    Rat64(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }
    explicit Rat64(std::int64_t n) : num(n), den(1) {}

    void normalize() {
        if (den == 0)
            throw std::invalid_argument("Rat64: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    friend Rat64 operator+(Rat64 a, Rat64 b) {
        return Rat64(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat64 operator-(Rat64 a, Rat64 b) {
        return Rat64(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat64 operator*(Rat64 a, Rat64 b) {
        return Rat64(a.num * b.num, a.den * b.den);
    }
    friend bool operator==(Rat64 a, Rat64 b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(Rat64 a, Rat64 b) { return !(a == b); }
    friend bool operator<(Rat64 a, Rat64 b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(Rat64 a, Rat64 b) { return a < b || a == b; }
    friend bool operator>(Rat64 a, Rat64 b) { return b < a; }
    friend bool operator>=(Rat64 a, Rat64 b) { return b <= a; }

    // Exact for dyadic denominators (the only ones the certificate uses);
    // callers needing certified enclosures of non-dyadic values go through
    // iv_ratio instead.
    double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    bool is_dyadic() const { return (den & (den - 1)) == 0; }

    std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }

    static Rat64 parse(const std::string& s) {
        const auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rat64(std::stoll(s));
        return Rat64(std::stoll(s.substr(0, slash)),
                     std::stoll(s.substr(slash + 1)));
    }
};

} // namespace frogcert
