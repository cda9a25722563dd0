#pragma once

// Suspension of a finite-base eigenvalue spectrum: each Frobenius eigenvalue
// alpha over F_q lands at s0 = log(alpha)/log(q), reduced to the fundamental
// strip Im s0 in [0, 2pi/log q).  Over the archimedean place the period is 0
// and the suspension is the identity.
//
// When alpha is a Gaussian integer whose norm is a power of the residue
// characteristic, the strip coordinates are carried as exact rationals:
// sigma = Re s0 and tau = Im s0 / period.  The twist check for the pairing of
// alpha with its partner q/alpha then verifies sigma + sigma' = 1 and
// tau + tau' integral in exact arithmetic, which is precisely the statement
// that the pairing transforms by q^m under t = q^m.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "zsl/common.hpp"

namespace zsl {

struct PrimePower {
    long p = 0;
    int e = 0;
    long q = 0;
};

inline PrimePower factor_prime_power(long q) {
    if (q < 2) fail_invalid("factor_prime_power: q must be >= 2");
    long p = 0;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return {q, 1, q};  // q itself prime
    long r = q;
    int e = 0;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) fail_invalid("factor_prime_power: " + std::to_string(q) + " is not a prime power");
    return {p, e, q};
}

struct SuspendedEntry {
    Complex alpha{0.0, 0.0};
    long mult = 1;
    Complex s0{0.0, 0.0};  // reduced: Im s0 in [0, period)
    bool exact = false;    // sigma/tau below are authoritative
    Rational sigma{0, 1};  // Re s0
    Rational tau{0, 1};    // Im s0 / period, in [0, 1)
};

struct SuspendedSpectrum {
    bool archimedean = false;
    long q = 0;            // 0 when archimedean
    double period = 0.0;   // 2 pi / log q; 0 when archimedean
    std::vector<SuspendedEntry> entries;
};

inline Complex reduce_to_strip(Complex s0, double period) {
    if (period <= 0.0) return s0;
    double im = std::fmod(s0.imag(), period);
    if (im < 0.0) im += period;
    return Complex(s0.real(), im);
}

namespace detail {

// exact strip coordinates for Gaussian-integer alpha over q = p^e; returns
// false when alpha is not recognized
inline bool exact_strip_coords(Complex alpha, const PrimePower& pp, Rational& sigma,
                               Rational& tau) {
    double ar = alpha.real(), ai = alpha.imag();
    if (ar != std::round(ar) || ai != std::round(ai)) return false;
    if (std::abs(ar) > 1e9 || std::abs(ai) > 1e9) return false;
    std::int64_t a = std::int64_t(ar), b = std::int64_t(ai);
    std::int64_t norm2 = a * a + b * b;
    // norm must be a power of p for a rational sigma
    int f = 0;
    std::int64_t r = norm2;
    while (r % pp.p == 0) {
        r /= pp.p;
        ++f;
    }
    if (r != 1) return false;
    sigma = Rational(f, 2 * std::int64_t(pp.e));
    // argument must be a multiple of pi/4 for a rational tau
    if (b == 0) tau = (a > 0) ? Rational(0, 1) : Rational(1, 2);
    else if (a == 0) tau = (b > 0) ? Rational(1, 4) : Rational(3, 4);
    else if (std::abs(a) == std::abs(b)) {
        if (a > 0 && b > 0) tau = Rational(1, 8);
        else if (a < 0 && b > 0) tau = Rational(3, 8);
        else if (a < 0 && b < 0) tau = Rational(5, 8);
        else tau = Rational(7, 8);
    } else return false;
    return true;
}

}  // namespace detail

inline SuspendedSpectrum suspend(long q, const std::vector<std::pair<Complex, long>>& eigen) {
    PrimePower pp = factor_prime_power(q);
    SuspendedSpectrum s;
    s.archimedean = false;
    s.q = q;
    double logq = std::log(double(q));
    s.period = 2.0 * PI / logq;
    for (const auto& [alpha, mult] : eigen) {
        if (alpha == Complex(0.0, 0.0)) fail_invalid("suspend: zero eigenvalue");
        if (mult <= 0) fail_invalid("suspend: multiplicity must be positive");
        SuspendedEntry e;
        e.alpha = alpha;
        e.mult = mult;
        e.exact = detail::exact_strip_coords(alpha, pp, e.sigma, e.tau);
        if (e.exact)
            e.s0 = Complex(e.sigma.value(), e.tau.value() * s.period);
        else
            e.s0 = reduce_to_strip(std::log(alpha) / logq, s.period);
        s.entries.push_back(e);
    }
    return s;
}

// archimedean base: the suspension is the identity, entries are taken as
// already-placed spectral parameters with period 0
inline SuspendedSpectrum archimedean_spectrum(const std::vector<std::pair<Complex, long>>& s0s) {
    SuspendedSpectrum s;
    s.archimedean = true;
    for (const auto& [s0, mult] : s0s) {
        if (mult <= 0) fail_invalid("archimedean_spectrum: multiplicity must be positive");
        SuspendedEntry e;
        e.s0 = s0;
        e.mult = mult;
        s.entries.push_back(e);
    }
    return s;
}

struct TwistVerdict {
    bool eigen_action_ok = true;    // q^{m s0} reproduces alpha^m
    bool pairing_twist_exact = true;  // alpha paired with q/alpha twists by exactly q^m
    double worst_eigen_dev = 0.0;
    double worst_twist_dev = 0.0;
};

inline TwistVerdict suspension_twist_check(const SuspendedSpectrum& s, long m) {
    if (s.archimedean) fail_invalid("suspension_twist_check: finite base required");
    TwistVerdict v;
    double logq = std::log(double(s.q));
    for (const SuspendedEntry& e : s.entries) {
        // acting by t = q^m multiplies the eigencomponent at s0 by q^{m s0};
        // the reduction dropped Im log alpha only by multiples of the period,
        // so q^{m s0} must still equal alpha^m
        Complex action = std::exp(double(m) * e.s0 * logq);
        Complex am(1.0, 0.0);
        for (long i = 0; i < std::abs(m); ++i) am *= e.alpha;
        if (m < 0) am = 1.0 / am;
        double dev = std::abs(action - am) / std::abs(am);
        v.worst_eigen_dev = std::max(v.worst_eigen_dev, dev);
        if (dev > 1e-9) v.eigen_action_ok = false;

        // partner q/alpha sits at 1 - s0 reduced to the strip
        if (e.exact) {
            Rational sigma_partner = Rational(1, 1) - e.sigma;
            Rational tau_partner = (Rational(1, 1) - e.tau).mod1();
            Rational sigma_sum = e.sigma + sigma_partner;
            Rational tau_sum = e.tau + tau_partner;
            // q^{m(s0 + s0')} = q^{m sigma_sum} e^{2 pi i m tau_sum}: exactly
            // q^m iff sigma_sum = 1 and tau_sum is an integer
            if (!(sigma_sum == Rational(1, 1) && tau_sum.is_integer()))
                v.pairing_twist_exact = false;
        } else {
            Complex partner_s0 = reduce_to_strip(std::log(Complex(double(s.q), 0.0) / e.alpha) / logq,
                                                 s.period);
            Complex twist = std::exp(double(m) * (e.s0 + partner_s0) * logq);
            double want = std::pow(double(s.q), double(m));
            double dev2 = std::abs(twist - want) / want;
            v.worst_twist_dev = std::max(v.worst_twist_dev, dev2);
            if (dev2 > 1e-9) v.pairing_twist_exact = false;
        }
    }
    return v;
}

}  // namespace zsl
