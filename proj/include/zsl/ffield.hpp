#pragma once

// Function-field side, all exact arithmetic: finite-field towers from a fixed
// irreducible-polynomial table, projective point counts of Weierstrass
// curves by enumeration, zeta numerators via Newton's identities on integer
// power sums, Frobenius eigenvalues (exact quadratic-integer form wherever
// the factorization allows, Durand-Kerner for the residual factor), the
// Weil bound, the symplectic Poincare pairing with exact Frobenius
// equivariance, the real-zero split, and base change.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "zsl/common.hpp"
#include "zsl/linalg.hpp"

namespace zsl {

// ---------------------------------------------------------------------------
// finite fields F_{p^k}: elements are integers in [0, q) whose base-p digits
// are the coordinates in the power basis of a fixed irreducible m(x)

class FqField {
  public:
    long p = 0;
    int k = 1;
    long q = 0;
    std::array<int, 8> mod_coeffs{};  // m(x), constant first, degree k monic

    static FqField make(long q) {
        if (q < 2 || q > (1L << 20)) fail_invalid("FqField: order out of range");
        PrimePowerFF pp = factor(q);
        FqField f;
        f.p = pp.p;
        f.k = pp.e;
        f.q = q;
        if (f.k > 1) f.mod_coeffs = irreducible_for(pp.p, pp.e);
        return f;
    }

    long add(long a, long b) const {
        long r = 0, mul = 1;
        for (int i = 0; i < k; ++i) {
            r += ((a % p + b % p) % p) * mul;
            a /= p;
            b /= p;
            mul *= p;
        }
        return r;
    }

    long sub(long a, long b) const {
        long r = 0, mul = 1;
        for (int i = 0; i < k; ++i) {
            r += ((a % p - b % p + p) % p) * mul;
            a /= p;
            b /= p;
            mul *= p;
        }
        return r;
    }

    long mul(long a, long b) const {
        if (k == 1) return (a * b) % p;
        std::array<long, 16> conv{};
        std::array<long, 8> da{}, db{};
        long t = a;
        for (int i = 0; i < k; ++i) {
            da[i] = t % p;
            t /= p;
        }
        t = b;
        for (int i = 0; i < k; ++i) {
            db[i] = t % p;
            t /= p;
        }
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) conv[i + j] = (conv[i + j] + da[i] * db[j]) % p;
        // reduce by the monic m(x): x^k = -(m - x^k)
        for (int i = 2 * k - 2; i >= k; --i) {
            long c = conv[i];
            if (c == 0) continue;
            conv[i] = 0;
            for (int j = 0; j < k; ++j)
                conv[i - k + j] = (conv[i - k + j] - c * mod_coeffs[j] % p + long(p) * p) % p;
        }
        long r = 0, mulp = 1;
        for (int i = 0; i < k; ++i) {
            r += conv[i] * mulp;
            mulp *= p;
        }
        return r;
    }

    long pow(long a, long e) const {
        long r = 1;
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    long inv(long a) const {
        if (a == 0) fail_invalid("FqField: inverse of zero");
        return pow(a, q - 2);
    }

    long embed_scalar(long c) const { return ((c % p) + p) % p; }

    long scalar_mul(long c, long a) const { return mul(embed_scalar(c), a); }

  private:
    struct PrimePowerFF {
        long p;
        int e;
    };

    static PrimePowerFF factor(long q) {
        long p = 0;
        for (long d = 2; d * d <= q; ++d)
            if (q % d == 0) {
                p = d;
                break;
            }
        if (p == 0) return {q, 1};
        long r = q;
        int e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        if (r != 1) fail_invalid("FqField: " + std::to_string(q) + " is not a prime power");
        return {p, e};
    }

    // fixed irreducibles, constant term first; irreducibility is re-proved by
    // brute factor search in the unit tests
    static std::array<int, 8> irreducible_for(long p, int k) {
        auto tab = [&](std::initializer_list<int> cs) {
            std::array<int, 8> a{};
            int i = 0;
            for (int c : cs) a[i++] = c;
            return a;
        };
        if (p == 2 && k == 2) return tab({1, 1, 1});           // x^2+x+1
        if (p == 2 && k == 3) return tab({1, 1, 0, 1});        // x^3+x+1
        if (p == 2 && k == 4) return tab({1, 1, 0, 0, 1});     // x^4+x+1
        if (p == 2 && k == 5) return tab({1, 0, 1, 0, 0, 1});  // x^5+x^2+1
        if (p == 2 && k == 6) return tab({1, 1, 0, 0, 0, 0, 1});  // x^6+x+1
        if (p == 3 && k == 2) return tab({1, 0, 1});           // x^2+1
        if (p == 3 && k == 3) return tab({1, 2, 0, 1});        // x^3+2x+1
        if (p == 3 && k == 4) return tab({2, 1, 0, 0, 1});     // x^4+x+2
        if (p == 5 && k == 2) return tab({2, 0, 1});           // x^2+2
        if (p == 5 && k == 3) return tab({1, 1, 0, 1});        // x^3+x+1
        if (p == 5 && k == 4) return tab({2, 0, 0, 0, 1});     // x^4+2
        if (p == 7 && k == 2) return tab({1, 0, 1});           // x^2+1
        if (p == 7 && k == 3) return tab({2, 0, 0, 1});        // x^3+2
        if (p == 7 && k == 4) return tab({3, 0, 1, 0, 1});     // x^4+x^2+3
        fail_invalid("FqField: no irreducible tabulated for p=" + std::to_string(p) +
                     ", k=" + std::to_string(k));
    }
};

// smallest root of m(x) (the small field's modulus) inside the big field;
// deterministic embedding anchor for extension counting
inline long find_subfield_generator(const FqField& big, const FqField& small) {
    if (small.k == 1) return big.embed_scalar(1);  // unused for prime base
    for (long cand = 0; cand < big.q; ++cand) {
        long acc = big.embed_scalar(small.mod_coeffs[small.k]);
        for (int i = small.k - 1; i >= 0; --i)
            acc = big.add(big.mul(acc, cand), big.embed_scalar(small.mod_coeffs[i]));
        if (acc == 0) return cand;
    }
    fail_runtime("find_subfield_generator: no root of the subfield modulus found");
}

// ---------------------------------------------------------------------------
// curves

struct CurveOverFq {
    long q = 0;
    bool is_elliptic = false;
    std::array<long, 5> a{};  // a1, a2, a3, a4, a6 as field-element encodings
    int genus = 1;
    std::vector<long> counts;  // raw-counts model: N_1..N_g

    static CurveOverFq elliptic(long q, long a1, long a2, long a3, long a4, long a6) {
        if (q > (1 << 16)) fail_invalid("CurveOverFq: q must be <= 2^16");
        FqField f = FqField::make(q);
        CurveOverFq c;
        c.q = q;
        c.is_elliptic = true;
        c.a = {a1, a2, a3, a4, a6};
        for (long ai : c.a)
            if (ai < 0 || ai >= q) fail_invalid("CurveOverFq: coefficient encoding out of range");
        c.genus = 1;
        if (discriminant(f, c.a) == 0) fail_invalid("CurveOverFq: singular curve (discriminant 0)");
        return c;
    }

    static CurveOverFq from_counts(long q, int g, std::vector<long> ns) {
        if (q > (1 << 16)) fail_invalid("CurveOverFq: q must be <= 2^16");
        FqField::make(q);  // validates prime power
        if (g < 1 || g > 3) fail_invalid("CurveOverFq: genus must be in [1, 3]");
        if (long(ns.size()) != g) fail_invalid("CurveOverFq: need exactly g point counts");
        for (long n : ns)
            if (n < 0) fail_invalid("CurveOverFq: negative point count");
        CurveOverFq c;
        c.q = q;
        c.is_elliptic = false;
        c.genus = g;
        c.counts = std::move(ns);
        return c;
    }

    static long discriminant(const FqField& f, const std::array<long, 5>& a) {
        long a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
        long b2 = f.add(f.mul(a1, a1), f.scalar_mul(4, a2));
        long b4 = f.add(f.scalar_mul(2, a4), f.mul(a1, a3));
        long b6 = f.add(f.mul(a3, a3), f.scalar_mul(4, a6));
        long b8 = f.add(f.add(f.mul(f.mul(a1, a1), a6), f.scalar_mul(4, f.mul(a2, a6))),
                        f.sub(f.add(f.scalar_mul(-1, f.mul(f.mul(a1, a3), a4)),
                                    f.mul(a2, f.mul(a3, a3))),
                              f.mul(a4, a4)));
        long t1 = f.scalar_mul(-1, f.mul(f.mul(b2, b2), b8));
        long t2 = f.scalar_mul(-8, f.mul(b4, f.mul(b4, b4)));
        long t3 = f.scalar_mul(-27, f.mul(b6, b6));
        long t4 = f.scalar_mul(9, f.mul(b2, f.mul(b4, b6)));
        return f.add(f.add(t1, t2), f.add(t3, t4));
    }
};

// curve strings: "ell:q=<pk>;a1=..,a2=..,a3=..,a4=..,a6=.." (omitted a_i are 0)
// and "counts:q=<pk>;g=<g>;N=<n1>[,<n2>,...]"
inline CurveOverFq parse_curve(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        fail_invalid("parse_curve: expected 'ell:' or 'counts:' prefix in \"" + text + "\"");
    std::string kind = text.substr(0, colon);
    if (kind != "ell" && kind != "counts")
        fail_invalid("parse_curve: unknown curve kind \"" + kind + "\"");

    // tokenize the remainder on ';' and ','
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text.substr(colon + 1)) {
        if (ch == ';' || ch == ',') {
            tokens.push_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)(ch))) {
            cur.push_back(ch);
        }
    }
    tokens.push_back(cur);

    auto parse_long = [&](const std::string& sv) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(sv, &used);
        } catch (const std::exception&) {
            fail_invalid("parse_curve: bad integer \"" + sv + "\" in \"" + text + "\"");
        }
        if (used != sv.size())
            fail_invalid("parse_curve: bad integer \"" + sv + "\" in \"" + text + "\"");
        return v;
    };

    long q = -1, g = -1;
    std::array<long, 5> a{};
    std::vector<long> ns;
    std::string last_key;
    for (const std::string& tok : tokens) {
        if (tok.empty()) fail_invalid("parse_curve: empty field in \"" + text + "\"");
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
            // bare value: continuation of a comma-separated N list
            if (last_key != "N")
                fail_invalid("parse_curve: stray value \"" + tok + "\" in \"" + text + "\"");
            ns.push_back(parse_long(tok));
            continue;
        }
        std::string key = tok.substr(0, eq);
        long val = parse_long(tok.substr(eq + 1));
        if (key == "q") q = val;
        else if (key == "g") g = val;
        else if (key == "N") ns.push_back(val);
        else if (key == "a1") a[0] = val;
        else if (key == "a2") a[1] = val;
        else if (key == "a3") a[2] = val;
        else if (key == "a4") a[3] = val;
        else if (key == "a6") a[4] = val;
        else fail_invalid("parse_curve: unknown key \"" + key + "\" in \"" + text + "\"");
        last_key = key;
    }
    if (q < 0) fail_invalid("parse_curve: missing q in \"" + text + "\"");
    if (kind == "ell") {
        if (g >= 0 || !ns.empty())
            fail_invalid("parse_curve: g/N fields not allowed for ell in \"" + text + "\"");
        return CurveOverFq::elliptic(q, a[0], a[1], a[2], a[3], a[4]);
    }
    if (g < 0) fail_invalid("parse_curve: missing g in \"" + text + "\"");
    if (ns.empty()) fail_invalid("parse_curve: missing N list in \"" + text + "\"");
    return CurveOverFq::from_counts(q, int(g), ns);
}

// projective points of the Weierstrass model over F_{q^degree}: affine sweep
// with a precomputed quadratic-solution-count table, plus the point at
// infinity
inline long count_points(const CurveOverFq& curve, int degree = 1) {
    if (degree < 1) fail_invalid("count_points: degree must be >= 1");
    if (!curve.is_elliptic) {
        if (degree <= long(curve.counts.size())) return curve.counts[degree - 1];
        fail_invalid("count_points: raw-counts model holds no N_" + std::to_string(degree));
    }
    double qd = std::pow(double(curve.q), double(degree));
    if (qd > double(1L << 20)) fail_invalid("count_points: q^degree exceeds 2^20");
    long bigq = 1;
    for (int i = 0; i < degree; ++i) bigq *= curve.q;

    FqField small = FqField::make(curve.q);
    FqField f = FqField::make(bigq);

    // embed the coefficients through a root of the small modulus
    std::array<long, 5> a = curve.a;
    if (degree > 1 && small.k > 1) {
        long beta = find_subfield_generator(f, small);
        for (long& ai : a) {
            long digits = ai, acc = 0, bpow = f.embed_scalar(1);
            for (int i = 0; i < small.k; ++i) {
                acc = f.add(acc, f.mul(f.embed_scalar(digits % small.p), bpow));
                digits /= small.p;
                bpow = f.mul(bpow, beta);
            }
            ai = acc;
        }
    } else if (degree > 1) {
        for (long& ai : a) ai = f.embed_scalar(ai);
    }
    long a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];

    // solution-count tables for y^2 + b y = c
    std::vector<int> table(std::size_t(f.q), 0);
    if (f.p == 2) {
        for (long z = 0; z < f.q; ++z) ++table[std::size_t(f.add(f.mul(z, z), z))];
    } else {
        for (long z = 0; z < f.q; ++z) ++table[std::size_t(f.mul(z, z))];
    }

    long inv2 = (f.p == 2) ? 0 : f.inv(f.embed_scalar(2));
    long affine = 0;
    for (long x = 0; x < f.q; ++x) {
        long x2 = f.mul(x, x);
        long rhs = f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.add(f.mul(a4, x), a6));
        long b = f.add(f.mul(a1, x), a3);
        if (f.p == 2) {
            if (b == 0) {
                ++affine;  // y -> y^2 is a bijection in char 2
            } else {
                long u = f.mul(rhs, f.inv(f.mul(b, b)));
                affine += table[std::size_t(u)];  // solutions of z^2 + z = u
            }
        } else {
            long h = f.mul(b, inv2);
            long d = f.add(rhs, f.mul(h, h));
            affine += table[std::size_t(d)];
        }
    }
    return affine + 1;
}

// ---------------------------------------------------------------------------
// zeta numerator from point counts (Newton's identities, exact integers)

struct ZetaPolynomial {
    int g = 0;
    long q = 0;
    std::vector<long long> coeffs;  // a_0 .. a_{2g}
};

inline bool operator==(const ZetaPolynomial& x, const ZetaPolynomial& y) {
    return x.g == y.g && x.q == y.q && x.coeffs == y.coeffs;
}

namespace detail {

inline long long checked_ll(__int128 v, const char* what) {
    if (v > __int128(9e18) || v < -__int128(9e18))
        fail_invalid(std::string(what) + ": integer overflow");
    return (long long)(v);
}

inline long long ipow_ll(long long b, int e, const char* what) {
    __int128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > __int128(9e18) || r < -__int128(9e18))
            fail_invalid(std::string(what) + ": integer overflow");
    }
    return (long long)(r);
}

// power sums p_1..p_n of the inverse roots of P via Newton's recurrence
inline std::vector<long long> power_sums_from(const std::vector<long long>& e, int deg, int n,
                                              const char* what) {
    std::vector<long long> p(std::size_t(n) + 1, 0);
    for (int kk = 1; kk <= n; ++kk) {
        __int128 acc = 0;
        for (int i = 1; i < kk && i <= deg; ++i) {
            __int128 term = __int128(e[std::size_t(i)]) * p[std::size_t(kk - i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        if (kk <= deg) {
            __int128 term = __int128(kk) * e[std::size_t(kk)];
            acc += (kk % 2 == 1) ? term : -term;
        }
        p[std::size_t(kk)] = checked_ll(acc, what);
    }
    return p;
}

}  // namespace detail

inline std::vector<long long> power_sums(const ZetaPolynomial& zp, int n) {
    std::vector<long long> e(std::size_t(2 * zp.g) + 1, 0);
    for (int i = 0; i <= 2 * zp.g; ++i)
        e[std::size_t(i)] = (i % 2 == 0) ? zp.coeffs[std::size_t(i)] : -zp.coeffs[std::size_t(i)];
    return detail::power_sums_from(e, 2 * zp.g, n, "power_sums");
}

inline ZetaPolynomial zeta_numerator(const std::vector<long>& counts, int g, long q) {
    if (g < 1 || g > 3) fail_invalid("zeta_numerator: genus must be in [1, 3]");
    if (long(counts.size()) != g) fail_invalid("zeta_numerator: need exactly g point counts");
    // p_i = (1 + q^i) - N_i are the power sums of the inverse roots
    std::vector<long long> p(std::size_t(g) + 1, 0);
    for (int i = 1; i <= g; ++i)
        p[std::size_t(i)] = 1 + detail::ipow_ll(q, i, "zeta_numerator") - counts[std::size_t(i - 1)];
    // invert Newton: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i, exact division
    std::vector<long long> e(std::size_t(g) + 1, 0);
    e[0] = 1;
    for (int kk = 1; kk <= g; ++kk) {
        __int128 acc = 0;
        for (int i = 1; i <= kk; ++i) {
            __int128 term = __int128(e[std::size_t(kk - i)]) * p[std::size_t(i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        if (acc % kk != 0)
            fail_invalid("zeta_numerator: inconsistent point counts (non-integer Newton step)");
        e[std::size_t(kk)] = detail::checked_ll(acc / kk, "zeta_numerator");
    }
    ZetaPolynomial zp;
    zp.g = g;
    zp.q = q;
    zp.coeffs.assign(std::size_t(2 * g) + 1, 0);
    zp.coeffs[0] = 1;
    for (int i = 1; i <= g; ++i)
        zp.coeffs[std::size_t(i)] = (i % 2 == 0) ? e[std::size_t(i)] : -e[std::size_t(i)];
    // functional-equation symmetry a_{2g-i} = q^{g-i} a_i
    for (int i = 0; i < g; ++i)
        zp.coeffs[std::size_t(2 * g - i)] = detail::checked_ll(
            __int128(detail::ipow_ll(q, g - i, "zeta_numerator")) * zp.coeffs[std::size_t(i)],
            "zeta_numerator");
    return zp;
}

inline void validate_zeta(const ZetaPolynomial& zp) {
    if (zp.g < 1 || long(zp.coeffs.size()) != 2 * zp.g + 1)
        fail_invalid("ZetaPolynomial: wrong coefficient count");
    if (zp.coeffs[0] != 1) fail_invalid("ZetaPolynomial: a_0 must be 1");
    for (int i = 0; i <= zp.g; ++i) {
        long long want = detail::checked_ll(
            __int128(detail::ipow_ll(zp.q, zp.g - i, "validate_zeta")) * zp.coeffs[std::size_t(i)],
            "validate_zeta");
        if (zp.coeffs[std::size_t(2 * zp.g - i)] != want)
            fail_invalid("ZetaPolynomial: functional-equation symmetry violated");
    }
}

// ---------------------------------------------------------------------------
// Frobenius eigenvalues

struct FrobeniusEigenvalue {
    Complex value{0.0, 0.0};
    long mult = 1;
    bool exact = false;
    // exact form (u + v sqrt(d))/2 with d <= 0
    long long u = 0, v = 0, d = 0;
};

struct FrobeniusSpectrum {
    long q = 0;
    std::vector<FrobeniusEigenvalue> eigenvalues;
    long real_sqrt_q_mult = 0;
};

namespace detail {

// divide P by (1 - s T) exactly; returns true and overwrites on success
inline bool divide_linear(std::vector<long long>& c, long long s) {
    // (1 - sT) * sum b_i T^i: b_0 = c_0, b_i = c_i + s b_{i-1}; remainder last
    std::vector<long long> b(c.size() - 1);
    __int128 carry = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        carry = __int128(c[i]) + (i == 0 ? __int128(0) : __int128(s) * b[i - 1]);
        b[i] = checked_ll(carry, "divide_linear");
    }
    __int128 rem = __int128(c.back()) + __int128(s) * b.back();
    if (rem != 0) return false;
    c = std::move(b);
    return true;
}

// divide P by (1 - q T^2) exactly
inline bool divide_sqrtq_pair(std::vector<long long>& c, long long q) {
    if (c.size() < 3) return false;
    std::vector<long long> b(c.size() - 2);
    for (std::size_t i = 0; i < b.size(); ++i) {
        __int128 val = __int128(c[i]) + (i >= 2 ? __int128(q) * b[i - 2] : __int128(0));
        b[i] = checked_ll(val, "divide_sqrtq_pair");
    }
    __int128 r1 = __int128(c[c.size() - 2]) + __int128(q) * (b.size() >= 2 ? b[b.size() - 2] : 0);
    __int128 r0 = __int128(c[c.size() - 1]) + __int128(q) * b[b.size() - 1];
    if (r1 != 0 || r0 != 0) return false;
    c = std::move(b);
    return true;
}

// Durand-Kerner on the monic polynomial whose roots are the eigenvalues
inline std::vector<Complex> durand_kerner(const std::vector<long long>& c, double scale) {
    const std::size_t deg = c.size() - 1;
    // eigenvalues are roots of T^deg P(1/T): coefficients reversed, monic
    std::vector<Complex> mono(deg + 1);
    for (std::size_t i = 0; i <= deg; ++i) mono[i] = Complex(double(c[deg - i]), 0.0);
    auto eval = [&](Complex z) {
        Complex acc = mono[deg];
        for (std::size_t i = deg; i-- > 0;) acc = acc * z + mono[i];
        return acc;
    };
    std::vector<Complex> z(deg);
    Complex seed(0.4, 0.9);
    Complex zp(1.0, 0.0);
    for (std::size_t i = 0; i < deg; ++i) {
        zp *= seed;
        z[i] = scale * zp;
    }
    for (int iter = 0; iter < 2000; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            Complex denom(1.0, 0.0);
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) denom *= z[i] - z[j];
            Complex delta = eval(z[i]) / denom;
            z[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-13 * scale) break;
    }
    return z;
}

// a multiplicity-m root of f is a simple root of f^(m-1): Newton there is
// quadratic and escapes the sqrt(eps) noise floor that caps plain iteration
// on repeated roots
inline Complex newton_polish(const std::vector<long long>& c, long m, Complex z) {
    const std::size_t deg = c.size() - 1;
    std::vector<double> g(deg + 1);
    for (std::size_t i = 0; i <= deg; ++i) g[i] = double(c[deg - i]);
    for (long d = 0; d + 1 < m; ++d) {
        for (std::size_t i = 0; i + 1 < g.size(); ++i) g[i] = double(i + 1) * g[i + 1];
        g.pop_back();
    }
    std::vector<double> gp(g.size() - 1);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) gp[i] = double(i + 1) * g[i + 1];
    auto horner = [](const std::vector<double>& p, Complex x) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
        return acc;
    };
    for (int iter = 0; iter < 40; ++iter) {
        Complex dz = horner(g, z) / horner(gp, z);
        z -= dz;
        if (std::abs(dz) <= 1e-15 * std::abs(z)) break;
    }
    return z;
}

}  // namespace detail

inline FrobeniusSpectrum frobenius_eigenvalues(const ZetaPolynomial& zp) {
    validate_zeta(zp);
    FrobeniusSpectrum s;
    s.q = zp.q;
    double sqrtq = std::sqrt(double(zp.q));

    // g = 1: exact quadratic formula on T^2 - aT + q
    if (zp.g == 1) {
        long long a = -zp.coeffs[1];
        long long disc = detail::checked_ll(__int128(a) * a - __int128(4) * zp.q,
                                            "frobenius_eigenvalues");
        if (disc > 0)
            fail_domain("frobenius_eigenvalues: Weil bound violated (a^2 > 4q; bad input counts)");
        if (disc == 0) {
            FrobeniusEigenvalue e;
            e.u = a;
            e.v = 0;
            e.d = 0;
            e.value = Complex(double(a) / 2.0, 0.0);
            e.mult = 2;
            e.exact = true;
            s.eigenvalues.push_back(e);
            s.real_sqrt_q_mult = (a > 0) ? 2 : 0;
            return s;
        }
        FrobeniusEigenvalue e1, e2;
        e1.u = a;
        e1.v = 1;
        e1.d = disc;
        e1.value = Complex(double(a) / 2.0, std::sqrt(double(-disc)) / 2.0);
        e1.mult = 1;
        e1.exact = true;
        e2 = e1;
        e2.v = -1;
        e2.value = std::conj(e1.value);
        s.eigenvalues = {e1, e2};
        s.real_sqrt_q_mult = 0;
        return s;
    }

    // g >= 2: peel off exact +-sqrt(q) factors, then go numeric
    std::vector<long long> c = zp.coeffs;
    long long isq = (long long)(std::llround(sqrtq));
    bool sq_integral = (isq * isq == zp.q);
    long plus_mult = 0, minus_mult = 0, pair_mult = 0;
    if (sq_integral) {
        while (c.size() > 1 && detail::divide_linear(c, isq)) ++plus_mult;
        while (c.size() > 1 && detail::divide_linear(c, -isq)) ++minus_mult;
    } else {
        while (c.size() > 2 && detail::divide_sqrtq_pair(c, zp.q)) ++pair_mult;
    }
    if (plus_mult > 0) {
        FrobeniusEigenvalue e;
        e.u = 2 * isq;
        e.v = 0;
        e.d = 0;
        e.value = Complex(double(isq), 0.0);
        e.mult = plus_mult;
        e.exact = true;
        s.eigenvalues.push_back(e);
    }
    if (minus_mult > 0) {
        FrobeniusEigenvalue e;
        e.u = -2 * isq;
        e.v = 0;
        e.d = 0;
        e.value = Complex(-double(isq), 0.0);
        e.mult = minus_mult;
        e.exact = true;
        s.eigenvalues.push_back(e);
    }
    if (pair_mult > 0) {
        FrobeniusEigenvalue ep, em;
        ep.u = 0;
        ep.v = 2;
        ep.d = zp.q;  // sqrt(q) itself: (0 + 2 sqrt(q))/2 -- d > 0 but real surd
        ep.exact = true;
        ep.value = Complex(sqrtq, 0.0);
        ep.mult = pair_mult;
        em = ep;
        em.v = -2;
        em.value = Complex(-sqrtq, 0.0);
        s.eigenvalues.push_back(ep);
        s.eigenvalues.push_back(em);
    }
    s.real_sqrt_q_mult = plus_mult + pair_mult;

    if (c.size() > 1) {
        std::vector<Complex> roots = detail::durand_kerner(c, sqrtq);
        // cluster conjugate-symmetric multiple roots and average for accuracy
        std::vector<bool> used(roots.size(), false);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (used[i]) continue;
            Complex sum(0.0, 0.0);
            long mult = 0;
            for (std::size_t j = i; j < roots.size(); ++j) {
                if (used[j]) continue;
                if (std::abs(roots[j] - roots[i]) <= 1e-6 * sqrtq) {
                    sum += roots[j];
                    used[j] = true;
                    ++mult;
                }
            }
            Complex alpha = detail::newton_polish(c, mult, sum / double(mult));
            if (std::abs(std::norm(alpha) - double(zp.q)) > 1e-10 * double(zp.q))
                fail_domain("frobenius_eigenvalues: Weil bound violated (|alpha|^2 != q)");
            FrobeniusEigenvalue e;
            e.value = alpha;
            e.mult = mult;
            e.exact = false;
            s.eigenvalues.push_back(e);
        }
    }
    return s;
}

inline bool weil_check(const ZetaPolynomial& zp) {
    try {
        frobenius_eigenvalues(zp);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Poincare duality pairing: basis ordered in (e_alpha, e_{q/alpha}) pairs,
// symplectic 2x2 blocks, Frobenius equivariance <Fv, Fw> = q <v, w> verified
// in exact quadratic-integer arithmetic whenever the eigenvalues carry exact
// representations

struct PoincarePairing {
    RealMatrix form;          // antisymmetric, entries 0 / +-1
    ComplexMatrix frobenius;  // diagonal in the paired basis
    long equivariance_factor = 0;
    bool equivariance_exact = false;
};

inline PoincarePairing poincare_pairing_matrix(const FrobeniusSpectrum& s) {
    // expand (value, exact data) by multiplicity
    struct Slot {
        Complex value;
        bool exact;
        long long u, v, d;
        bool used = false;
    };
    std::vector<Slot> slots;
    for (const FrobeniusEigenvalue& e : s.eigenvalues)
        for (long i = 0; i < e.mult; ++i) slots.push_back({e.value, e.exact, e.u, e.v, e.d, false});

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    // Poincare partner test: alpha * beta must equal q exactly.  In the
    // quadratic-integer form, alpha beta = ((u1 u2 + v1 v2 d) + (u1 v2 + u2 v1) sqrt(d))/4.
    auto partner_of = [&](const Slot& a, const Slot& b) {
        if (a.exact && b.exact) {
            long long dd = 0;
            if (a.v == 0) dd = b.d;
            else if (b.v == 0) dd = a.d;
            else if (a.d != b.d) return false;
            else dd = a.d;
            __int128 re4 = __int128(a.u) * b.u + __int128(a.v) * b.v * dd;
            __int128 im4 = __int128(a.u) * b.v + __int128(b.u) * a.v;
            return im4 == 0 && re4 == __int128(4) * s.q;
        }
        return std::abs(a.value * b.value - Complex(double(s.q), 0.0)) <= 1e-9 * double(s.q);
    };
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].used) continue;
        slots[i].used = true;
        bool found = false;
        for (std::size_t j = i; j < slots.size(); ++j) {
            if (slots[j].used && j != i) continue;
            if (j == i) {
                // self-paired eigenvalue alpha = q/alpha = +-sqrt(q) must use
                // a distinct basis copy
                continue;
            }
            if (partner_of(slots[i], slots[j])) {
                slots[j].used = true;
                pairs.emplace_back(i, j);
                found = true;
                break;
            }
        }
        if (!found)
            fail_invalid("poincare_pairing_matrix: unpaired eigenvalue (spectrum not closed under alpha -> q/alpha)");
    }

    const std::size_t n = 2 * pairs.size();
    PoincarePairing pp;
    pp.form.assign(n, std::vector<double>(n, 0.0));
    pp.frobenius.assign(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
    pp.equivariance_factor = s.q;
    pp.equivariance_exact = true;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
        const Slot& x = slots[pairs[b].first];
        const Slot& y = slots[pairs[b].second];
        pp.form[2 * b][2 * b + 1] = 1.0;
        pp.form[2 * b + 1][2 * b] = -1.0;
        pp.frobenius[2 * b][2 * b] = x.value;
        pp.frobenius[2 * b + 1][2 * b + 1] = y.value;
        // alpha beta == q was certified by partner_of; exactness is only
        // claimed when both slots carry quadratic-integer representations
        if (!(x.exact && y.exact)) pp.equivariance_exact = false;
    }
    return pp;
}

// Definition-1 split: remove the alpha = +sqrt(q) part (the only eigenvalues
// suspending to a real s0; alpha = -sqrt(q) sits at Im s0 = pi/log q)
struct RealZeroSplit {
    long m = 0;  // multiplicity of the removed +sqrt(q) eigenspace
    FrobeniusSpectrum remaining;
};

inline RealZeroSplit split_real_zeros(const FrobeniusSpectrum& s) {
    RealZeroSplit r;
    r.remaining.q = s.q;
    double sqrtq = std::sqrt(double(s.q));
    for (const FrobeniusEigenvalue& e : s.eigenvalues) {
        bool is_plus_sqrtq;
        if (e.exact)
            is_plus_sqrtq = (e.v == 0 && e.u > 0 && __int128(e.u) * e.u == __int128(4) * s.q) ||
                            (e.u == 0 && e.v > 0 && e.d == s.q && e.v == 2);
        else
            is_plus_sqrtq = std::abs(e.value - Complex(sqrtq, 0.0)) <= 1e-9 * sqrtq;
        if (is_plus_sqrtq) r.m += e.mult;
        else r.remaining.eigenvalues.push_back(e);
    }
    r.remaining.real_sqrt_q_mult = 0;
    return r;
}

// ---------------------------------------------------------------------------
// base change F_q -> F_{q^r}: alpha -> alpha^r via exact power-sum arithmetic

inline ZetaPolynomial base_change(const ZetaPolynomial& zp, int r) {
    if (r < 1) fail_invalid("base_change: r must be >= 1");
    validate_zeta(zp);
    if (r == 1) return zp;
    const int n = 2 * zp.g;
    std::vector<long long> pr = power_sums(zp, n * r);
    // new power sums are p'_j = p_{r j}; invert Newton exactly
    std::vector<long long> e(std::size_t(n) + 1, 0);
    e[0] = 1;
    for (int kk = 1; kk <= n; ++kk) {
        __int128 acc = 0;
        for (int i = 1; i <= kk; ++i) {
            __int128 term = __int128(e[std::size_t(kk - i)]) * pr[std::size_t(r * i)];
            acc += (i % 2 == 1) ? term : -term;
        }
        if (acc % kk != 0) fail_runtime("base_change: non-integer symmetric function");
        e[std::size_t(kk)] = detail::checked_ll(acc / kk, "base_change");
    }
    ZetaPolynomial out;
    out.g = zp.g;
    out.q = detail::checked_ll(detail::ipow_ll(zp.q, r, "base_change"), "base_change");
    out.coeffs.assign(std::size_t(n) + 1, 0);
    for (int i = 0; i <= n; ++i)
        out.coeffs[std::size_t(i)] = (i % 2 == 0) ? e[std::size_t(i)] : -e[std::size_t(i)];
    validate_zeta(out);  // symmetry must come out exactly
    return out;
}

}  // namespace zsl
