#pragma once

// The end-to-end acceptance suite: ten criteria covering the zero catalog,
// the Mellin engine, both pairing theorems, positivity, truncation
// soundness, the exact function-field case, suspension, the elliptic
// weight-2 case, and the seven-factor composite.  Each criterion runs
// independently, never weakens its pinned tolerances, and reports one
// PASS/FAIL line of measured numbers.  `zsl verify` and the standalone
// acceptance binary both drive run_acceptance().

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "zsl/common.hpp"
#include "zsl/ellcurve.hpp"
#include "zsl/ffield.hpp"
#include "zsl/linalg.hpp"
#include "zsl/mellin.hpp"
#include "zsl/pairing.hpp"
#include "zsl/specfun.hpp"
#include "zsl/suspension.hpp"
#include "zsl/zerofind.hpp"

namespace zsl {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace acceptance {

// shared riemann catalogs: 50 zeros live below 144, 100 below 237
struct Context {
    ZeroCatalog cat50;
    ZeroCatalog cat100;
};

inline Context make_context() {
    LineFunction line = riemann_line();
    Context ctx;
    ctx.cat50 = scan_zeros(line, 144.0, 0.01, 1e-8);
    ctx.cat100 = scan_zeros(line, 237.0, 0.01, 1e-8);
    return ctx;
}

// --- 1: zero catalog ------------------------------------------------------

inline CriterionResult ac1_zero_catalog() {
    CriterionResult r{1, "zero catalog (29 zeros below 100, oracle, completeness)", false, ""};
    ZeroCatalog cat = scan_zeros(riemann_line(), 100.0, 0.01, 1e-8);

    // independent oracle for the first ordinate: coarse sign scan of Z plus
    // plain midpoint bisection, no shared refinement code
    double lo = 10.0, hi = 0.0;
    double prev = hardy_Z(lo);
    for (double t = 10.05; t <= 16.0; t += 0.05) {
        double v = hardy_Z(t);
        if ((prev > 0.0) != (v > 0.0)) {
            hi = t;
            break;
        }
        lo = t;
        prev = v;
    }
    if (hi == 0.0) {
        r.detail = "oracle found no sign change below 16";
        return r;
    }
    double flo = hardy_Z(lo);
    for (int i = 0; i < 100; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = hardy_Z(mid);
        if ((flo > 0.0) != (fm > 0.0)) hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }
    double oracle = 0.5 * (lo + hi);
    double dev = cat.zeros.empty() ? 1e9 : std::abs(cat.zeros[0].gamma - oracle);
    CompletenessReport comp = completeness_check(cat);

    r.pass = cat.zeros.size() == 29 && dev <= 1e-6 && comp.slack <= 1.0;
    r.detail = std::to_string(cat.zeros.size()) + " zeros, first-ordinate dev " + fmt_g12(dev) +
               ", completeness slack " + fmt_g12(comp.slack);
    return r;
}

// --- 2: Mellin engine -----------------------------------------------------

inline CriterionResult ac2_mellin() {
    CriterionResult r{2, "Mellin engine (quadrature agreement, J identities)", false, ""};
    std::vector<TestFunction> funcs = {
        log_gaussian(100.0, 0.0),
        mult_convolve(log_gaussian(100.0, 0.0), log_gaussian(50.0, 0.5)),
        apply_J(log_gaussian(80.0, 0.3), 1.0),
    };
    double worst_grid = 0.0;
    for (const TestFunction& f : funcs)
        for (int k = 0; k < 100; ++k) {
            Complex s(0.5, -12.375 + 0.25 * k);
            Complex exact = mellin(f, s);
            Complex quad = mellin_quadrature(f, s);
            worst_grid = std::max(worst_grid,
                                  std::abs(quad - exact) / std::max(std::abs(exact), 1e-300));
        }

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_j = 0.0;
    for (int k = 0; k < 50; ++k) {
        double w = (k % 2 == 0) ? 1.0 : 2.0;
        TestFunction f = (k % 2 == 0) ? log_gaussian(100.0, 0.25) : log_gaussian(64.0, -0.1);
        Complex s(w / 2.0 - 0.3 + 0.6 * unif(rng), -8.0 + 16.0 * unif(rng));
        Complex lhs = mellin_quadrature(apply_J(f, w), s);
        Complex rhs = mellin(f, Complex(w, 0.0) - s);
        worst_j = std::max(worst_j, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
    }

    r.pass = worst_grid <= 1e-10 && worst_j <= 1e-10;
    r.detail = "grid rel dev " + fmt_g12(worst_grid) + ", J-identity rel dev " + fmt_g12(worst_j);
    return r;
}

// --- 3: antisymmetric pairing structure ------------------------------------

inline CriterionResult ac3_theorem2(const Context& ctx) {
    CriterionResult r{3, "antisymmetric pairing (exact antisymmetry, equivariance, funceq)",
                      false, ""};
    TestFunction fu = log_gaussian(100.0, 0.0);
    TestFunction fv = log_gaussian(100.0, 0.5);
    SpectralVector u = spectralize(fu, ctx.cat50);
    SpectralVector v = spectralize(fv, ctx.cat50);

    PairingValue uv = pair_antisym(u, v);
    PairingValue vu = pair_antisym(v, u);
    bool antisym_exact = uv.value.real() == -vu.value.real() &&
                         uv.value.imag() == -vu.value.imag();

    double worst_eq = 0.0;
    for (double lambda : {1.0 / 3.0, 2.0, std::exp(1.0)})
        worst_eq = std::max(worst_eq, equivariance_check(fu, fv, lambda, 1, ctx.cat50));

    double scale = coefficient_norm(u) * coefficient_norm(v);
    double fe = funceq_identity_residual(u, v);

    r.pass = antisym_exact && worst_eq <= 1e-9 && fe <= 1e-10 * scale;
    r.detail = std::string("antisymmetry ") + (antisym_exact ? "exact" : "BROKEN") +
               ", equivariance dev " + fmt_g12(worst_eq) + ", funceq residual " + fmt_g12(fe) +
               " vs scale " + fmt_g12(scale);
    return r;
}

// --- 4: the pairing kills the smoothed image (passes to the quotient) ------

inline CriterionResult ac4_kernel(const Context& ctx) {
    CriterionResult r{4, "kernel of the pairing contains the smoothed image", false, ""};
    std::vector<TestFunction> fam = default_family();
    double worst = 0.0;
    for (const TestFunction& h : fam) {
        SpectralVector smoothed = spectralize(smoothed_image(h), ctx.cat50);
        double nh = coefficient_norm(spectralize(h, ctx.cat50));
        for (const TestFunction& g : fam) {
            SpectralVector v = spectralize(g, ctx.cat50);
            double scale = nh * coefficient_norm(v);
            double val = std::abs(pair_antisym(smoothed, v).value);
            worst = std::max(worst, val / scale);
        }
    }
    r.pass = worst <= 1e-8;
    r.detail = "worst |psi(smooth h, v)| / scale = " + fmt_g12(worst) + " over 25 pairs";
    return r;
}

// --- 5: positivity under the line hypothesis -------------------------------

inline CriterionResult ac5_positivity(const Context& ctx) {
    CriterionResult r{5, "Hermitian positivity and antisymmetric rank on 100 zeros", false, ""};
    std::vector<TestFunction> fam = default_family();

    ComplexMatrix gh = gram_matrix(fam, FormTag::hermitian, ctx.cat100);
    auto [min_eig, max_eig] = psd_check(gh);

    std::vector<TestFunction> fam10 = fam;
    for (const TestFunction& f : fam) fam10.push_back(apply_J(f, 1.0));
    ComplexMatrix ga = gram_matrix(fam10, FormTag::antisym, ctx.cat100);
    int rank = numeric_rank(ga, 1e-9);

    // 6.7e-3 is the frozen regression threshold: half the min eigenvalue the
    // direct-summation oracle produced when the suite was calibrated
    r.pass = min_eig > 6.7e-3 && rank == 10;
    r.detail = "hermitian min eigenvalue " + fmt_g12(min_eig) + " (threshold 6.7e-3), max " +
               fmt_g12(max_eig) + ", antisym rank " + std::to_string(rank) + "/10 at 1e-9";
    return r;
}

// --- 6: truncation soundness ------------------------------------------------

inline CriterionResult ac6_truncation(const Context& ctx) {
    CriterionResult r{6, "truncation soundness (50 -> 100 zeros, a-priori bound)", false, ""};
    std::vector<TestFunction> fam = default_family();
    std::vector<SpectralVector> v50, v100;
    for (const TestFunction& f : fam) {
        v50.push_back(spectralize(f, ctx.cat50));
        v100.push_back(spectralize(f, ctx.cat100));
    }
    double worst_change = 0.0, worst_bound = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = 0; j < fam.size(); ++j) {
            PairingValue p50 = pair_antisym(v50[i], v50[j]);
            PairingValue p100 = pair_antisym(v100[i], v100[j]);
            double scale = std::max(std::abs(p50.value), 1e-30);
            worst_change = std::max(worst_change, std::abs(p100.value - p50.value) / scale);
            worst_bound = std::max(worst_bound, p50.truncation_bound / scale);
        }
    r.pass = worst_change <= 1e-12 && worst_bound <= 1e-12;
    r.detail = "worst relative change " + fmt_g12(worst_change) + ", worst relative tail bound " +
               fmt_g12(worst_bound);
    return r;
}

// --- 7: function field, exact ------------------------------------------------

inline CriterionResult ac7_function_field() {
    CriterionResult r{7, "function field (zeta numerators, duality pairing, base change)",
                      false, ""};
    CurveOverFq c2 = CurveOverFq::elliptic(2, 0, 0, 1, 0, 0);
    ZetaPolynomial z2 = zeta_numerator({count_points(c2, 1)}, 1, 2);
    bool p2_ok = z2.coeffs == std::vector<long long>{1, 0, 2};

    CurveOverFq c4t = CurveOverFq::elliptic(4, 0, 0, 1, 0, 2);
    ZetaPolynomial z4t = zeta_numerator({count_points(c4t, 1)}, 1, 4);
    bool twist_ok = z4t.coeffs == std::vector<long long>{1, -4, 4};
    FrobeniusSpectrum spec = frobenius_eigenvalues(z4t);
    bool mult_ok = spec.real_sqrt_q_mult == 2;

    PoincarePairing pp = poincare_pairing_matrix(spec);
    bool antisym = true;
    for (std::size_t i = 0; i < pp.form.size(); ++i)
        for (std::size_t j = 0; j < pp.form.size(); ++j)
            if (pp.form[i][j] != -pp.form[j][i]) antisym = false;
    double det = pp.form[0][0] * pp.form[1][1] - pp.form[0][1] * pp.form[1][0];
    bool pairing_ok = antisym && det != 0.0 && pp.equivariance_factor == 4 &&
                      pp.equivariance_exact;

    CurveOverFq c4 = CurveOverFq::elliptic(4, 0, 0, 1, 0, 0);
    ZetaPolynomial z4 = zeta_numerator({count_points(c4, 1)}, 1, 4);
    bool bc_ok = base_change(z2, 2) == z4;

    r.pass = p2_ok && twist_ok && mult_ok && pairing_ok && bc_ok;
    r.detail = std::string("P2 ") + (p2_ok ? "ok" : "BAD") + ", twist " +
               (twist_ok ? "ok" : "BAD") + ", sqrt(q) mult " +
               std::to_string(spec.real_sqrt_q_mult) + ", pairing " +
               (pairing_ok ? "ok" : "BAD") + ", base change " + (bc_ok ? "ok" : "BAD") +
               " (all exact arithmetic)";
    return r;
}

// --- 8: suspension ------------------------------------------------------------

inline CriterionResult ac8_suspension() {
    CriterionResult r{8, "suspension (fundamental strip, twist q^m)", false, ""};
    SuspendedSpectrum s =
        suspend(4, {{Complex(-2.0, 0.0), 1}, {Complex(2.0, 0.0), 1}});
    const SuspendedEntry& neg = s.entries[0];
    const SuspendedEntry& pos = s.entries[1];

    double want_im = PI / std::log(4.0);
    bool neg_ok = neg.exact && neg.sigma == Rational(1, 2) && neg.tau == Rational(1, 2) &&
                  close_rel(neg.s0.imag(), want_im, 1e-12) && neg.s0.imag() != 0.0;
    bool pos_ok = pos.exact && pos.sigma == Rational(1, 2) && pos.tau == Rational(0, 1) &&
                  pos.s0.imag() == 0.0;

    bool twist_ok = true;
    for (long m : {1L, 2L}) {
        TwistVerdict tv = suspension_twist_check(s, m);
        if (!tv.eigen_action_ok || !tv.pairing_twist_exact) twist_ok = false;
    }

    r.pass = neg_ok && pos_ok && twist_ok;
    r.detail = std::string("alpha=-2 at sigma=") + neg.sigma.str() + ", tau=" + neg.tau.str() +
               " (off-axis ok=" + (neg_ok ? "yes" : "NO") + "); alpha=2 real ok=" +
               (pos_ok ? "yes" : "NO") + "; twist exact for m=1,2: " + (twist_ok ? "yes" : "NO");
    return r;
}

// --- 9: elliptic weight-2 case -------------------------------------------------

inline CriterionResult ac9_elliptic() {
    CriterionResult r{9, "elliptic curves (root numbers, central zero, weight-2 pairing)",
                      false, ""};
    EllipticCurveQ e11 = EllipticCurveQ::preset("11a1");
    e11.epsilon = root_number(e11);
    EllipticCurveQ e37 = EllipticCurveQ::preset("37a1");
    e37.epsilon = root_number(e37);

    bool signs_ok = e11.epsilon == 1 && e37.epsilon == -1;

    double worst_fe = 0.0;
    for (const EllipticCurveQ& e : {e11, e37})
        for (int k = 0; k < 20; ++k) {
            Complex s(0.4 + 0.06 * k, -10.0 + 20.0 * k / 19.0);
            Complex va = lambda(e, s);
            Complex vb = lambda(e, 2.0 - s);
            worst_fe = std::max(worst_fe, std::abs(va - double(e.epsilon) * vb) /
                                              std::max(1.0, std::abs(va)));
        }

    double central37 = std::abs(lambda(e37, Complex(1.0, 0.0)));
    bool hyp37_violated = !theorem3_hypothesis(e37).satisfied;

    LineFunction line = elliptic_line(e11, 24.0);
    ZeroCatalog cat = scan_zeros(line, 20.0, 0.01, 1e-8);
    double worst_reeval = 0.0;
    for (const ZeroEntry& z : cat.zeros)
        worst_reeval = std::max(worst_reeval, std::abs(line.completed(Complex(1.0, z.gamma))));

    TestFunction fu = log_gaussian(100.0, 0.0);
    TestFunction fv = log_gaussian(100.0, 0.5);
    SpectralVector u = spectralize(fu, cat);
    SpectralVector v = spectralize(fv, cat);
    PairingValue uv = pair_sym(u, v);
    PairingValue vu = pair_sym(v, u);
    bool sym_exact = uv.value.real() == vu.value.real() && uv.value.imag() == vu.value.imag();
    double eq_dev = equivariance_check(fu, fv, 2.0, 2, cat);
    Complex herm = hermitian_form(u, u);
    bool herm_pos = herm.real() > 0.0;

    r.pass = signs_ok && worst_fe <= 1e-8 && central37 <= 1e-9 && hyp37_violated &&
             cat.zeros.size() >= 3 && worst_reeval <= 1e-8 && sym_exact && eq_dev <= 1e-9 &&
             herm_pos;
    r.detail = "eps(11a1)=" + std::to_string(e11.epsilon) + " eps(37a1)=" +
               std::to_string(e37.epsilon) + ", fe residual " + fmt_g12(worst_fe) +
               ", |Lambda(37a1,1)| = " + fmt_g12(central37) + ", hypothesis violated: " +
               (hyp37_violated ? "yes" : "NO") + ", " + std::to_string(cat.zeros.size()) +
               " zeros re-eval " + fmt_g12(worst_reeval) + ", symmetry " +
               (sym_exact ? "exact" : "BROKEN") + ", equivariance " + fmt_g12(eq_dev) +
               ", hermitian " + fmt_g12(herm.real());
    return r;
}

// --- 10: the seven-factor composite ---------------------------------------------

inline CriterionResult ac10_lambda_total() {
    CriterionResult r{10, "seven-factor composite (s <-> 2-s symmetry, factor table)", false, ""};
    EllipticCurveQ e11 = EllipticCurveQ::preset("11a1");
    e11.epsilon = root_number(e11);

    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        Complex s(0.55 + 0.09 * k, -4.0 + 8.0 * k / 9.0);
        LambdaTotalResult a = lambda_total(e11, s);
        LambdaTotalResult b = lambda_total(e11, 2.0 - s);
        worst = std::max(worst, std::abs(a.value - b.value) / std::abs(a.value));
    }

    LambdaTotalResult lt = lambda_total(e11, Complex(0.7, 1.5));
    std::vector<MotiveFactor> mf = motive_factors(e11);
    const char* want_analytic[7] = {"2*pi/s",      "xi(s)",   "2*pi/(1-s)", "1/Lambda(E,s)",
                                    "2*pi/(s-1)",  "xi(s-1)", "2*pi/(2-s)"};
    const char* want_motive[7] = {"C",    "H^1(Z)", "C(1)",      "H^2_p(E)",
                                  "C(1)", "H^1(Z)(1)", "C(2)"};
    bool table_ok = lt.factors.size() == 7 && mf.size() == 7;
    for (std::size_t i = 0; table_ok && i < 7; ++i)
        table_ok = lt.factors[i].label == want_analytic[i] && mf[i].label == want_motive[i] &&
                   mf[i].analytic == lt.factors[i].label;

    r.pass = worst <= 1e-8 && table_ok;
    r.detail = "symmetry residual " + fmt_g12(worst) + " over 10 points, factor table " +
               (table_ok ? "matches" : "MISMATCH");
    return r;
}

}  // namespace acceptance

inline std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> out;
    acceptance::Context ctx;
    bool ctx_ok = false;
    std::string ctx_err;
    try {
        ctx = acceptance::make_context();
        ctx_ok = true;
    } catch (const std::exception& e) {
        ctx_err = e.what();
    }

    auto guard = [&out](int id, const std::string& name, auto&& fn) {
        try {
            out.push_back(fn());
        } catch (const std::exception& e) {
            out.push_back({id, name, false, std::string("exception: ") + e.what()});
        }
    };
    auto skip_ctx = [&out, &ctx_err](int id, const std::string& name) {
        out.push_back({id, name, false, "shared catalog construction failed: " + ctx_err});
    };

    using namespace acceptance;
    guard(1, "zero catalog", [] { return ac1_zero_catalog(); });
    guard(2, "Mellin engine", [] { return ac2_mellin(); });
    if (ctx_ok) guard(3, "antisymmetric pairing", [&] { return ac3_theorem2(ctx); });
    else skip_ctx(3, "antisymmetric pairing");
    if (ctx_ok) guard(4, "pairing kernel", [&] { return ac4_kernel(ctx); });
    else skip_ctx(4, "pairing kernel");
    if (ctx_ok) guard(5, "positivity", [&] { return ac5_positivity(ctx); });
    else skip_ctx(5, "positivity");
    if (ctx_ok) guard(6, "truncation", [&] { return ac6_truncation(ctx); });
    else skip_ctx(6, "truncation");
    guard(7, "function field", [] { return ac7_function_field(); });
    guard(8, "suspension", [] { return ac8_suspension(); });
    guard(9, "elliptic curves", [] { return ac9_elliptic(); });
    guard(10, "seven-factor composite", [] { return ac10_lambda_total(); });
    return out;
}

inline std::string format_criterion_line(const CriterionResult& r) {
    return "AC" + std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + " — " + r.name +
           ": " + r.detail;
}

}  // namespace zsl
