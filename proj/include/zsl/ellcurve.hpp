#pragma once

// Elliptic curves over Q as weight-2 L-function sources: Dirichlet
// coefficients from point counts modulo good primes plus the Hecke
// recursion, the completed Lambda(E,s) through a smoothed (incomplete-Gamma)
// approximate functional equation, the root number from asymmetric-cut
// residuals, the critical line Re s = 1 packaged for the zero scanner, the
// seven-factor composite with its motive labels, and the real-axis
// hypothesis check.

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "zsl/common.hpp"
#include "zsl/specfun.hpp"
#include "zsl/zerofind.hpp"

namespace zsl {

struct EllipticCurveQ {
    long long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    long conductor = 0;
    std::map<long, long long> ap_override;  // bad primes (and test overrides)
    int epsilon = 0;                        // 0 until root_number fixes the sign
    std::string label;

    static EllipticCurveQ preset(const std::string& name) {
        EllipticCurveQ e;
        if (name == "11a1") {
            e.a1 = 0;
            e.a2 = -1;
            e.a3 = 1;
            e.a4 = -10;
            e.a6 = -20;
            e.conductor = 11;
            e.ap_override[11] = 1;
        } else if (name == "37a1") {
            e.a1 = 0;
            e.a2 = 0;
            e.a3 = 1;
            e.a4 = -1;
            e.a6 = 0;
            e.conductor = 37;
            e.ap_override[37] = 1;
        } else {
            fail_invalid("EllipticCurveQ: unknown preset \"" + name + "\"");
        }
        e.label = name;
        return e;
    }
};

namespace detail {

// #E(F_p) for the reduced Weierstrass model; independent of the ffield
// tower machinery (prime fields only, O(p) with a squares table)
inline long count_points_mod_p(const EllipticCurveQ& e, long p) {
    auto red = [p](long long v) { return long(((v % p) + p) % p); };
    long a1 = red(e.a1), a2 = red(e.a2), a3 = red(e.a3), a4 = red(e.a4), a6 = red(e.a6);
    if (p == 2) {
        long n = 1;
        for (long x = 0; x < 2; ++x)
            for (long y = 0; y < 2; ++y) {
                long lhs = (y * y + a1 * x * y + a3 * y) % 2;
                long rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
                if (lhs == rhs) ++n;
            }
        return n;
    }
    std::vector<int> sq(std::size_t(p), 0);
    for (long z = 0; z < p; ++z) ++sq[std::size_t((z * z) % p)];
    long inv2 = (p + 1) / 2;
    long n = 1;
    for (long x = 0; x < p; ++x) {
        long x2 = (x * x) % p;
        long rhs = (((x2 * x) % p + (a2 * x2) % p) % p + ((a4 * x) % p + a6) % p) % p;
        long h = ((a1 * x + a3) % p * inv2) % p;
        long d = (rhs + (h * h) % p) % p;
        n += sq[std::size_t(d)];
    }
    return n;
}

}  // namespace detail

inline long long ap_good(const EllipticCurveQ& e, long p) {
    if (p < 2 || p > 100000) fail_invalid("ap_good: p out of range");
    if (e.conductor <= 0) fail_invalid("ap_good: conductor not set");
    if (e.conductor % p == 0)
        fail_invalid("ap_good: p = " + std::to_string(p) + " is a bad prime for N = " +
                     std::to_string(e.conductor));
    return p + 1 - detail::count_points_mod_p(e, p);
}

// ---------------------------------------------------------------------------
// Dirichlet coefficients: a_1 = 1, a_{p^k} by the Hecke recursion
// (p-term dropped at bad primes), extended multiplicatively

struct DirichletCoefficients {
    long n_max = 0;
    std::vector<long long> a;  // 1-indexed; a[0] unused
};

inline DirichletCoefficients hecke_coefficients(const EllipticCurveQ& e, long n_max) {
    if (n_max < 1 || n_max > 1000000) fail_invalid("hecke_coefficients: n_max out of range");
    DirichletCoefficients coef;
    coef.n_max = n_max;
    coef.a.assign(std::size_t(n_max) + 1, 0);
    coef.a[1] = 1;
    if (n_max == 1) return coef;

    std::vector<int> spf(std::size_t(n_max) + 1, 0);
    for (long i = 2; i <= n_max; ++i)
        if (spf[std::size_t(i)] == 0)
            for (long j = i; j <= n_max; j += i)
                if (spf[std::size_t(j)] == 0) spf[std::size_t(j)] = int(i);

    std::map<long, long long> ap;
    auto get_ap = [&](long p) {
        auto it = ap.find(p);
        if (it != ap.end()) return it->second;
        long long v;
        auto ov = e.ap_override.find(p);
        if (ov != e.ap_override.end()) v = ov->second;
        else if (e.conductor % p == 0)
            fail_invalid("hecke_coefficients: a_p at bad prime " + std::to_string(p) +
                         " not supplied");
        else v = p + 1 - detail::count_points_mod_p(e, p);
        ap[p] = v;
        return v;
    };

    for (long n = 2; n <= n_max; ++n) {
        long p = spf[std::size_t(n)];
        long pk = p, m = n / p;
        while (m % p == 0) {
            pk *= p;
            m /= p;
        }
        if (m > 1) {
            coef.a[std::size_t(n)] = coef.a[std::size_t(pk)] * coef.a[std::size_t(m)];
        } else if (n == p) {
            coef.a[std::size_t(n)] = get_ap(p);
        } else {
            bool good = (e.conductor % p != 0);
            coef.a[std::size_t(n)] = coef.a[std::size_t(p)] * coef.a[std::size_t(n / p)] -
                                     (good ? p * coef.a[std::size_t(n / p / p)] : 0);
        }
    }
    return coef;
}

// ---------------------------------------------------------------------------
// Lambda(E,s) = N^{s/2} (2 pi)^{-s} Gamma(s) L(E,s) by the approximate
// functional equation with cut parameter A:
//   Lambda(s) = F_A(s) + eps F_{1/A}(2-s),
//   F_A(s) = sum_n a_n (sqrt(N)/(2 pi n))^s Gamma(s, 2 pi n A / sqrt(N)).
// The identity is A-independent only for the true sign, which is what
// root_number exploits with A = 4/3 (the symmetric cut A = 1 cancels the
// sign algebraically and can never detect it).

namespace detail {

inline Complex afe_sum(const DirichletCoefficients& coef, long conductor, Complex s, double cut,
                       long n_terms) {
    double sqn = std::sqrt(double(conductor));
    Complex acc(0.0, 0.0);
    for (long n = 1; n <= n_terms; ++n) {
        double x = 2.0 * PI * double(n) * cut / sqn;
        if (x > 745.0) break;  // exp underflow: the tail is identically 0 in doubles
        Complex scale = std::exp(s * std::log(sqn / (2.0 * PI * double(n))));
        acc += double(coef.a[std::size_t(n)]) * scale * incomplete_gamma_upper(s, x);
    }
    return acc;
}

inline Complex lambda_with_sign(const DirichletCoefficients& coef, long conductor, Complex s,
                                int eps, double cut) {
    return afe_sum(coef, conductor, s, cut, coef.n_max) +
           double(eps) * afe_sum(coef, conductor, 2.0 - s, 1.0 / cut, coef.n_max);
}

inline long auto_terms(long conductor, double im_s) {
    double want = 10.0 * std::sqrt(double(conductor)) * (1.0 + std::abs(im_s) / (2.0 * PI));
    return std::max<long>(32, long(std::ceil(want)));
}

}  // namespace detail

inline Complex lambda(const EllipticCurveQ& e, Complex s, long n_terms = 0) {
    if (e.epsilon != 1 && e.epsilon != -1)
        fail_runtime("lambda: root number unknown (set epsilon via root_number first)");
    long nt = n_terms > 0 ? n_terms : detail::auto_terms(e.conductor, s.imag());
    DirichletCoefficients coef = hecke_coefficients(e, nt);
    return detail::lambda_with_sign(coef, e.conductor, s, e.epsilon, 1.0);
}

inline int root_number(const EllipticCurveQ& e, long n_terms = 0) {
    long nt = n_terms > 0 ? n_terms : detail::auto_terms(e.conductor, 2.0);
    DirichletCoefficients coef = hecke_coefficients(e, nt);
    const double cut = 4.0 / 3.0;
    const Complex trial[2] = {Complex(1.3, 0.0), Complex(1.3, 2.0)};
    double residual[2] = {0.0, 0.0};
    double scale[2] = {0.0, 0.0};
    for (int k = 0; k < 2; ++k) {
        int eps = (k == 0) ? 1 : -1;
        for (Complex s0 : trial) {
            Complex at = detail::lambda_with_sign(coef, e.conductor, s0, eps, cut);
            Complex ref = detail::lambda_with_sign(coef, e.conductor, 2.0 - s0, eps, cut);
            residual[k] += std::abs(at - double(eps) * ref);
            scale[k] = std::max(scale[k], std::abs(at));
        }
    }
    int win = residual[0] <= residual[1] ? 0 : 1;
    if (residual[win] > 1e-8 * std::max(1.0, scale[win]))
        fail_runtime("root_number: ambiguous sign (residuals " + fmt_g12(residual[0]) + " / " +
                     fmt_g12(residual[1]) + ")");
    return win == 0 ? 1 : -1;
}

// the critical line Re s = 1, packaged for scan_zeros / detect_real_zeros.
// For eps = +1, Lambda(1+it) is real; for eps = -1, purely imaginary with a
// parity-forced zero at the center.
inline LineFunction elliptic_line(const EllipticCurveQ& e, double t_cap = 32.0) {
    if (e.epsilon != 1 && e.epsilon != -1)
        fail_runtime("elliptic_line: root number unknown (set epsilon via root_number first)");
    auto coef = std::make_shared<DirichletCoefficients>(
        hecke_coefficients(e, detail::auto_terms(e.conductor, t_cap)));
    long conductor = e.conductor;
    int eps = e.epsilon;
    LineFunction lf;
    lf.family = Family::elliptic(e.label.empty() ? "custom" : e.label);
    lf.weight = 2;
    lf.completed = [coef, conductor, eps](Complex s) {
        return detail::lambda_with_sign(*coef, conductor, s, eps, 1.0);
    };
    lf.rotated = [coef, conductor, eps](double t) {
        Complex v = detail::lambda_with_sign(*coef, conductor, Complex(1.0, t), eps, 1.0);
        return eps > 0 ? v.real() : -v.imag();
    };
    lf.real_axis = [coef, conductor, eps](double sigma) {
        return detail::lambda_with_sign(*coef, conductor, Complex(sigma, 0.0), eps, 1.0).real();
    };
    lf.forced_center_parity = (eps < 0) ? 1 : 0;
    return lf;
}

// ---------------------------------------------------------------------------
// the seven-factor composite
//   (2 pi / s) xi(s) (2 pi / (1-s)) (1 / Lambda(E,s)) (2 pi / (s-1)) xi(s-1) (2 pi / (2-s))
// with xi = completed_L_Q; the central factor uses the completed Lambda so
// the whole product carries the exact s <-> 2-s symmetry (for eps = +1)

struct LambdaFactor {
    std::string label;
    Complex value{0.0, 0.0};
};

struct LambdaTotalResult {
    Complex value{1.0, 0.0};
    std::vector<LambdaFactor> factors;
};

inline LambdaTotalResult lambda_total(const EllipticCurveQ& e, Complex s, long n_terms = 0) {
    const double guard = 1e-10;
    for (Complex pole : {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(2.0, 0.0)})
        if (std::abs(s - pole) < guard)
            fail_domain("lambda_total: pole at s = " + fmt_g12(pole.real()));
    Complex central = lambda(e, s, n_terms);
    if (std::abs(central) < 1e-250)
        fail_domain("lambda_total: zero of the central factor at s = " + fmt_g12(s.real()) +
                    " + " + fmt_g12(s.imag()) + "i");
    const Complex two_pi(2.0 * PI, 0.0);
    LambdaTotalResult out;
    out.factors = {
        {"2*pi/s", two_pi / s},
        {"xi(s)", completed_L_Q(s)},
        {"2*pi/(1-s)", two_pi / (1.0 - s)},
        {"1/Lambda(E,s)", 1.0 / central},
        {"2*pi/(s-1)", two_pi / (s - 1.0)},
        {"xi(s-1)", completed_L_Q(s - 1.0)},
        {"2*pi/(2-s)", two_pi / (2.0 - s)},
    };
    for (const LambdaFactor& f : out.factors) out.value *= f.value;
    return out;
}

struct MotiveFactor {
    std::string label;
    int twist = 0;
    bool has_twist = true;  // H^2_p(E) carries no Tate-twist label
    std::string analytic;
    std::string family_note;  // zero catalog the factor points at, if any
};

inline std::vector<MotiveFactor> motive_factors(const EllipticCurveQ& e) {
    std::string ell = Family::elliptic(e.label.empty() ? "custom" : e.label).str();
    return {
        {"C", 0, true, "2*pi/s", ""},
        {"H^1(Z)", 0, true, "xi(s)", "riemann"},
        {"C(1)", 1, true, "2*pi/(1-s)", ""},
        {"H^2_p(E)", 0, false, "1/Lambda(E,s)", ell},
        {"C(1)", 1, true, "2*pi/(s-1)", ""},
        {"H^1(Z)(1)", 1, true, "xi(s-1)", "riemann (shifted by 1)"},
        {"C(2)", 2, true, "2*pi/(2-s)", ""},
    };
}

// ---------------------------------------------------------------------------
// hypothesis of the weight-2 pairing theorem: Lambda(E, sigma) has no zero
// on the real segment

struct Theorem3Verdict {
    bool satisfied = true;
    std::vector<RealZeroEntry> violations;
};

inline Theorem3Verdict theorem3_hypothesis(const EllipticCurveQ& e) {
    LineFunction line = elliptic_line(e, 4.0);
    Theorem3Verdict v;
    v.violations = detect_real_zeros(line, 0.2, 1.8, 0.01);
    v.satisfied = v.violations.empty();
    return v;
}

// ---------------------------------------------------------------------------
// curve strings: "ec:<a1>,<a2>,<a3>,<a4>,<a6>@N=<N>[;ap:<p>=<v>...]" or a
// preset name

inline EllipticCurveQ parse_elliptic_curve(const std::string& text) {
    if (text == "11a1" || text == "37a1") return EllipticCurveQ::preset(text);
    if (text.rfind("ec:", 0) != 0)
        fail_invalid("parse_elliptic_curve: expected preset name or 'ec:' prefix in \"" + text +
                     "\"");
    auto parse_ll = [&](const std::string& sv) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(sv, &used);
        } catch (const std::exception&) {
            fail_invalid("parse_elliptic_curve: bad integer \"" + sv + "\" in \"" + text + "\"");
        }
        if (used != sv.size() || sv.empty())
            fail_invalid("parse_elliptic_curve: bad integer \"" + sv + "\" in \"" + text + "\"");
        return v;
    };

    std::vector<std::string> chunks;
    std::string cur;
    for (char ch : text.substr(3)) {
        if (ch == ';') {
            chunks.push_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)(ch))) {
            cur.push_back(ch);
        }
    }
    chunks.push_back(cur);

    auto at = chunks[0].find('@');
    if (at == std::string::npos)
        fail_invalid("parse_elliptic_curve: missing '@N=' in \"" + text + "\"");
    std::vector<long long> av;
    std::string item;
    for (char ch : chunks[0].substr(0, at)) {
        if (ch == ',') {
            av.push_back(parse_ll(item));
            item.clear();
        } else {
            item.push_back(ch);
        }
    }
    av.push_back(parse_ll(item));
    if (av.size() != 5)
        fail_invalid("parse_elliptic_curve: need exactly a1,a2,a3,a4,a6 in \"" + text + "\"");
    std::string ntag = chunks[0].substr(at + 1);
    if (ntag.rfind("N=", 0) != 0)
        fail_invalid("parse_elliptic_curve: missing '@N=' in \"" + text + "\"");

    EllipticCurveQ e;
    e.a1 = av[0];
    e.a2 = av[1];
    e.a3 = av[2];
    e.a4 = av[3];
    e.a6 = av[4];
    e.conductor = long(parse_ll(ntag.substr(2)));
    if (e.conductor < 1) fail_invalid("parse_elliptic_curve: conductor must be >= 1");
    for (std::size_t i = 1; i < chunks.size(); ++i) {
        const std::string& c = chunks[i];
        if (c.rfind("ap:", 0) != 0)
            fail_invalid("parse_elliptic_curve: unknown field \"" + c + "\" in \"" + text + "\"");
        auto eq = c.find('=');
        if (eq == std::string::npos || eq <= 3)
            fail_invalid("parse_elliptic_curve: malformed ap override \"" + c + "\"");
        e.ap_override[long(parse_ll(c.substr(3, eq - 3)))] = parse_ll(c.substr(eq + 1));
    }
    e.label = text;
    return e;
}

}  // namespace zsl
