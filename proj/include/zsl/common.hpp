#pragma once

// Shared scalar types, formatting and small numeric helpers used across the
// library.  Everything downstream works in double precision; exact paths
// (function fields, suspension) use int64/rational types defined here.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace zsl {

using Complex = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// error helpers

[[noreturn]] inline void fail_domain(const std::string& msg) {
    throw std::domain_error(msg);
}

[[noreturn]] inline void fail_invalid(const std::string& msg) {
    throw std::invalid_argument(msg);
}

[[noreturn]] inline void fail_runtime(const std::string& msg) {
    throw std::runtime_error(msg);
}

inline void check_finite(const Complex& z, const char* where) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail_domain(std::string(where) + ": non-finite value");
}

inline void check_finite(double x, const char* where) {
    if (!std::isfinite(x)) fail_domain(std::string(where) + ": non-finite value");
}

// ---------------------------------------------------------------------------
// 12-significant-digit canonical formatting.  Reports and catalogs print
// doubles with %.12g; values stored in catalogs are canonicalized through the
// same representation so that a serialize/parse round trip is bit-identical.

inline std::string fmt_g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline double canon12(double x) {
    return std::strtod(fmt_g12(x).c_str(), nullptr);
}

// ---------------------------------------------------------------------------
// small exact rational (suspension bookkeeping: sigma and tau are tiny
// fractions like 1/2, 1/4; denominators never grow past the lcm of a few
// small values, so int64 is ample).

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0) fail_invalid("Rational: zero denominator");
        normalize();
    }

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(Rational a, Rational b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    bool is_integer() const { return den == 1; }
    double value() const { return double(num) / double(den); }

    // reduce into [0,1): used for angles measured in turns
    Rational mod1() const {
        std::int64_t r = num % den;
        if (r < 0) r += den;
        return Rational(r, den);
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// ---------------------------------------------------------------------------
// misc

inline bool close_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double tol) {
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * std::max(scale, 1e-300);
}

inline bool close_rel(const Complex& a, const Complex& b, double tol) {
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * std::max(scale, 1e-300);
}

}  // namespace zsl
