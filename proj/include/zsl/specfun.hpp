#pragma once

// Special functions backing the archimedean side: complex log-gamma
// (Lanczos), Riemann zeta via Euler-Maclaurin, the Riemann-Siegel theta /
// Hardy Z pair, the completed zeta, and the upper incomplete gamma.

#include <array>
#include <cmath>
#include <vector>

#include "zsl/common.hpp"

namespace zsl {

// ---------------------------------------------------------------------------
// log_gamma: principal branch, Lanczos approximation with g = 7 and 9
// coefficients.  For Re z < 1/2 the argument is shifted upward through the
// recurrence log Gamma(z) = log Gamma(z+1) - log z, which stays on the
// principal branch away from the cut (and our callers never straddle it);
// reflection is avoided so that Im log Gamma stays continuous on vertical
// lines, which hardy_theta depends on.

namespace detail {

inline constexpr double LANCZOS_G = 7.0;
inline constexpr std::array<double, 9> LANCZOS_C = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline Complex log_gamma_lanczos(Complex z) {
    // valid for Re z >= 0.5
    Complex a(LANCZOS_C[0], 0.0);
    for (int k = 1; k < 9; ++k) a += LANCZOS_C[k] / (z - 1.0 + double(k));
    Complex t = z + (LANCZOS_G - 0.5);
    return 0.5 * std::log(2.0 * PI) + (z - 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace detail

inline Complex log_gamma(Complex z) {
    double zr = std::round(z.real());
    if (zr <= 0.0 && std::abs(z.real() - zr) <= 1e-12 && std::abs(z.imag()) <= 1e-12)
        fail_domain("log_gamma: pole at non-positive integer " + fmt_g12(zr));
    Complex shift(0.0, 0.0);
    while (z.real() < 0.5) {
        shift += std::log(z);
        z += 1.0;
    }
    Complex r = detail::log_gamma_lanczos(z) - shift;
    check_finite(r, "log_gamma");
    return r;
}

inline Complex gamma_fn(Complex z) { return std::exp(log_gamma(z)); }

// ---------------------------------------------------------------------------
// riemann_zeta: Euler-Maclaurin with cutoff N = max(20, ceil|Im s|) and
// Bernoulli corrections through B20.  Relative error <= 1e-11 for
// Re s >= -2, |Im s| <= 500 (the correction terms shrink by roughly
// (|s|/2piN)^2 each, ~2.5e-2 per step at the cutoff above).

namespace detail {

// B_{2k}/(2k)! for k = 1..10
inline constexpr std::array<double, 10> BERN_FACT = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

}  // namespace detail

inline Complex riemann_zeta(Complex s) {
    if (std::abs(s - Complex(1.0, 0.0)) <= 1e-12)
        fail_domain("riemann_zeta: pole at s = 1");
    const int N = std::max(20, int(std::ceil(std::abs(s.imag()))));
    Complex sum(0.0, 0.0);
    for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(double(n)));
    const Complex logN(std::log(double(N)), 0.0);
    const Complex Npow = std::exp(-s * logN);  // N^{-s}
    sum += Npow * double(N) / (s - 1.0);       // N^{1-s}/(s-1)
    sum += 0.5 * Npow;
    // correction terms: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    Complex poch = s;                          // (s)_1
    Complex Nfac = Npow / double(N);           // N^{-s-1}
    const double invN2 = 1.0 / (double(N) * double(N));
    for (int k = 1; k <= 10; ++k) {
        sum += detail::BERN_FACT[k - 1] * poch * Nfac;
        poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
        Nfac *= invN2;
    }
    check_finite(sum, "riemann_zeta");
    return sum;
}

// ---------------------------------------------------------------------------
// hardy_theta / hardy_Z.  theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi;
// Z(t) = exp(i theta(t)) zeta(1/2 + it) is real for real t, and
// |zeta(1/2+it)| = |Z(t)|.  The imaginary residue of the rotation is checked
// against 1e-10 * (1 + |t|).

inline double hardy_theta(double t) {
    check_finite(t, "hardy_theta");
    Complex lg = log_gamma(Complex(0.25, 0.5 * t));
    return lg.imag() - 0.5 * t * std::log(PI);
}

inline double hardy_Z(double t) {
    Complex v = std::exp(Complex(0.0, hardy_theta(t))) * riemann_zeta(Complex(0.5, t));
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(t)))
        fail_runtime("hardy_Z: rotation residue " + fmt_g12(v.imag()) + " at t = " + fmt_g12(t));
    return v.real();
}

// ---------------------------------------------------------------------------
// completed zeta: pi^{-s/2} Gamma(s/2) zeta(s).  Poles at s = 0 and s = 1 are
// signaled; the gamma factor is kept in log form to avoid overflow on tall
// arguments.  (At the trivial zeros s = -2, -4, ... the gamma-factor pole is
// not cancelled numerically and log_gamma signals; callers stay off those.)

inline Complex completed_L_Q(Complex s) {
    if (std::abs(s) <= 1e-12 || std::abs(s - Complex(1.0, 0.0)) <= 1e-12)
        fail_domain("completed_L_Q: pole at s = " + fmt_g12(s.real()));
    Complex logfac = log_gamma(0.5 * s) - 0.5 * s * std::log(PI);
    return std::exp(logfac) * riemann_zeta(s);
}

// ---------------------------------------------------------------------------
// upper incomplete gamma Gamma(s, x), s complex, x > 0 real.  Continued
// fraction (modified Lentz) for x >= |s| + 1, series for the lower function
// and complementation below that.  Relative error ~1e-11 over the strips the
// L-machinery uses (0 < Re s <= 2 after reflection, x up to ~1e3).

inline Complex incomplete_gamma_lower_series(Complex s, double x) {
    if (x <= 0.0) fail_invalid("incomplete_gamma_lower_series: x must be > 0");
    Complex term = 1.0 / s;
    Complex sum = term;
    for (int n = 1; n <= 2000; ++n) {
        term *= x / (s + double(n));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum))
            return std::exp(s * std::log(x) - x) * sum;
    }
    fail_runtime("incomplete_gamma_lower_series: no convergence after 2000 terms");
}

inline Complex incomplete_gamma_upper(Complex s, double x) {
    if (x <= 0.0) fail_invalid("incomplete_gamma_upper: x must be > 0");
    if (x >= std::abs(s) + 1.0) {
        // Lentz on   Gamma(s,x) = e^{-x} x^s / (x+1-s - 1(1-s)/(x+3-s - ...))
        const double tiny = 1e-300;
        Complex b = x + 1.0 - s;
        Complex c = 1.0 / tiny;
        Complex d = 1.0 / b;
        Complex f = d;
        for (int i = 1; i <= 500; ++i) {
            Complex a = -double(i) * (double(i) - s);
            b += 2.0;
            d = a * d + b;
            if (std::abs(d) < tiny) d = tiny;
            c = b + a / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            Complex delta = d * c;
            f *= delta;
            if (std::abs(delta - 1.0) <= 1e-15)
                return std::exp(s * std::log(x) - x) * f;
        }
        fail_runtime("incomplete_gamma_upper: continued fraction stalled at x = " + fmt_g12(x));
    }
    return gamma_fn(s) - incomplete_gamma_lower_series(s, x);
}

}  // namespace zsl
