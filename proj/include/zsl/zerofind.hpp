#pragma once

// Zero catalogs: scanning a completed L-function's rotated real restriction
// along the critical line, refining sign changes, counting checks against
// the theta-based density, and real-axis zero detection.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "zsl/common.hpp"
#include "zsl/specfun.hpp"

namespace zsl {

// ---------------------------------------------------------------------------
// family tags

enum class FamilyKind { riemann, elliptic, function_field };

struct Family {
    FamilyKind kind = FamilyKind::riemann;
    std::string curve_id;                  // elliptic
    std::uint32_t q = 0;                   // function field
    std::vector<std::int64_t> numerator;   // function field zeta numerator

    static Family riemann() { return Family{}; }
    static Family elliptic(std::string id) {
        Family f;
        f.kind = FamilyKind::elliptic;
        f.curve_id = std::move(id);
        return f;
    }
    static Family function_field(std::uint32_t q, std::vector<std::int64_t> P) {
        Family f;
        f.kind = FamilyKind::function_field;
        f.q = q;
        f.numerator = std::move(P);
        return f;
    }

    std::string str() const {
        switch (kind) {
            case FamilyKind::riemann: return "riemann";
            case FamilyKind::elliptic: return "elliptic:" + curve_id;
            case FamilyKind::function_field: return "ff:q=" + std::to_string(q);
        }
        return "?";
    }

    friend bool operator==(const Family& a, const Family& b) {
        return a.kind == b.kind && a.curve_id == b.curve_id && a.q == b.q &&
               a.numerator == b.numerator;
    }
};

// ---------------------------------------------------------------------------
// catalog

struct ZeroEntry {
    double gamma = 0.0;
    int mult = 1;
    friend bool operator==(const ZeroEntry& a, const ZeroEntry& b) {
        return a.gamma == b.gamma && a.mult == b.mult;
    }
};

struct RealZeroEntry {
    double sigma = 0.0;
    int mult = 1;
    bool parity_forced = false;  // center zero known only through the sign of eps
    friend bool operator==(const RealZeroEntry& a, const RealZeroEntry& b) {
        return a.sigma == b.sigma && a.mult == b.mult && a.parity_forced == b.parity_forced;
    }
};

struct ZeroCatalog {
    Family family;
    int weight = 1;
    double center = 0.5;
    double t_max = 0.0;
    double tolerance = 1e-8;
    std::vector<ZeroEntry> zeros;          // ordinates in (0, t_max], ascending
    std::vector<RealZeroEntry> real_zeros;
    bool certified = false;

    friend bool operator==(const ZeroCatalog& a, const ZeroCatalog& b) {
        return a.family == b.family && a.weight == b.weight && a.center == b.center &&
               a.t_max == b.t_max && a.tolerance == b.tolerance && a.zeros == b.zeros &&
               a.real_zeros == b.real_zeros && a.certified == b.certified;
    }
};

// ---------------------------------------------------------------------------
// line handle: what a family must expose for scanning.  `rotated` is the
// real-valued restriction along center + it (Hardy Z for zeta); `completed`
// is the full completed L; `real_axis` its restriction to real s.

struct LineFunction {
    Family family;
    int weight = 1;
    std::function<double(double)> rotated;
    std::function<Complex(Complex)> completed;
    std::function<double(double)> real_axis;
    int forced_center_parity = 0;  // 1: odd vanishing at the center is forced
};

inline LineFunction riemann_line() {
    LineFunction lf;
    lf.family = Family::riemann();
    lf.weight = 1;
    lf.rotated = [](double t) { return hardy_Z(t); };
    lf.completed = [](Complex s) { return completed_L_Q(s); };
    lf.real_axis = [](double sigma) { return completed_L_Q(Complex(sigma, 0.0)).real(); };
    return lf;
}

// ---------------------------------------------------------------------------
// bracket refinement: bisection down to a narrow bracket (width strictly
// halves), then secant steps until |dt| <= tol; 200 iterations cap.

struct RefineTrace {
    std::vector<double> bisection_widths;
    int iterations = 0;
};

inline double refine_bracket(const std::function<double(double)>& f, double lo, double hi,
                             double tol, RefineTrace* trace = nullptr) {
    if (!(lo < hi)) fail_invalid("refine_bracket: empty bracket");
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        fail_invalid("refine_bracket: no sign change in [" + fmt_g12(lo) + ", " + fmt_g12(hi) + "]");
    int iter = 0;
    const double bisect_floor = std::max(64.0 * tol, 1e-7);
    while (hi - lo > bisect_floor) {
        if (++iter > 200) fail_runtime("refine_bracket: iteration cap in bisection");
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (trace) trace->bisection_widths.push_back(hi - lo);
        if (fm == 0.0) { lo = hi = mid; flo = fhi = 0.0; break; }
        if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; }
        else { hi = mid; fhi = fm; }
    }
    // secant phase within the residual bracket
    double a = lo, b = hi, fa = flo, fb = fhi;
    double x = 0.5 * (a + b);
    while (true) {
        if (++iter > 200) fail_runtime("refine_bracket: iteration cap in secant phase");
        double denom = fb - fa;
        double cand = (denom != 0.0) ? b - fb * (b - a) / denom : 0.5 * (a + b);
        if (!(cand > lo && cand < hi)) cand = 0.5 * (a + b);
        double fc = f(cand);
        double dt = std::abs(cand - x);
        x = cand;
        if (fc == 0.0 || dt <= tol) break;
        // keep a sign-changing pair when possible, else slide the pair
        if ((fc > 0.0) == (fa > 0.0)) { a = b; fa = fb; b = cand; fb = fc; }
        else { b = cand; fb = fc; }
        if (a > b) { std::swap(a, b); std::swap(fa, fb); }
        lo = std::min(lo, a);
        hi = std::max(hi, b);
    }
    if (trace) trace->iterations = iter;
    return x;
}

// ---------------------------------------------------------------------------
// scan.  The grid is partitioned into chunks processed concurrently; the
// merge is an ordered union, so results are deterministic.  Sign-change
// cells refining to nearly the same ordinate signal a too-coarse step.

inline ZeroCatalog scan_zeros(const LineFunction& line, double t_max, double step = 0.01,
                              double tolerance = 1e-8) {
    if (!(t_max > 0.0)) fail_invalid("scan_zeros: t_max must be > 0");
    if (!(step > 0.0) || step > 0.05) fail_invalid("scan_zeros: step must lie in (0, 0.05]");

    const std::int64_t cells = std::int64_t(std::ceil(t_max / step));
    const double refine_tol = 1e-10;

    auto scan_range = [&](std::int64_t c0, std::int64_t c1) {
        std::vector<double> found;
        double prev_t = double(c0) * step;
        double prev_v = line.rotated(prev_t);
        for (std::int64_t c = c0; c < c1; ++c) {
            double t = std::min(double(c + 1) * step, t_max);
            double v = line.rotated(t);
            if (prev_v == 0.0 && prev_t > 0.0) {
                found.push_back(prev_t);
            } else if ((prev_v > 0.0) != (v > 0.0) && v != 0.0 && prev_t > 0.0) {
                found.push_back(refine_bracket(line.rotated, prev_t, t, refine_tol));
            } else if ((prev_v > 0.0) != (v > 0.0) && v != 0.0 && prev_t == 0.0) {
                // leading cell: the origin itself is not an ordinate
                found.push_back(refine_bracket(line.rotated, prev_t + 1e-12, t, refine_tol));
            }
            prev_t = t;
            prev_v = v;
        }
        return found;
    };

    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::int64_t chunk = std::max<std::int64_t>(2000, cells / (4 * hw) + 1);
    std::vector<std::future<std::vector<double>>> parts;
    for (std::int64_t c0 = 0; c0 < cells; c0 += chunk) {
        std::int64_t c1 = std::min(cells, c0 + chunk);
        parts.push_back(std::async(std::launch::async, scan_range, c0, c1));
    }
    std::vector<double> gammas;
    for (auto& p : parts) {
        auto part = p.get();
        gammas.insert(gammas.end(), part.begin(), part.end());
    }
    std::sort(gammas.begin(), gammas.end());

    ZeroCatalog cat;
    cat.family = line.family;
    cat.weight = line.weight;
    cat.center = canon12(0.5 * line.weight);
    cat.t_max = canon12(t_max);
    cat.tolerance = canon12(tolerance);
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (i > 0 && gammas[i] - gammas[i - 1] < 4.0 * step)
            fail_runtime("scan_zeros: overlapping brackets near t = " + fmt_g12(gammas[i]) +
                         " (step too coarse)");
        double g = canon12(gammas[i]);
        Complex val = line.completed(Complex(cat.center, g));
        if (std::abs(val) > tolerance)
            fail_runtime("scan_zeros: refined ordinate fails tolerance at t = " + fmt_g12(g));
        cat.zeros.push_back(ZeroEntry{g, 1});
    }
    return cat;
}

// ---------------------------------------------------------------------------
// completeness (riemann only): compare the catalog count against the
// theta-density N(T) ~ theta(T)/pi + 1 with unit slack.

struct CompletenessReport {
    bool passed = false;
    double slack = 0.0;       // worst deviation |count - predicted|
    double bad_lo = 0.0;      // offending interval when failed
    double bad_hi = 0.0;
};

inline CompletenessReport completeness_check(const ZeroCatalog& cat) {
    if (cat.family.kind != FamilyKind::riemann)
        fail_invalid("completeness_check: density law is implemented for the riemann family only");
    CompletenessReport rep;
    rep.passed = true;
    double prev_gamma = 0.0;
    for (std::size_t k = 0; k < cat.zeros.size(); ++k) {
        double predicted = hardy_theta(cat.zeros[k].gamma) / PI + 1.0;
        double dev = std::abs(double(k + 1) - predicted);
        if (dev > rep.slack) rep.slack = dev;
        if (dev > 1.0 && rep.passed) {
            rep.passed = false;
            rep.bad_lo = prev_gamma;
            rep.bad_hi = cat.zeros[k].gamma;
        }
        prev_gamma = cat.zeros[k].gamma;
    }
    double predicted_end = hardy_theta(cat.t_max) / PI + 1.0;
    double dev_end = std::abs(double(cat.zeros.size()) - predicted_end);
    if (dev_end > rep.slack) rep.slack = dev_end;
    if (dev_end > 1.0 && rep.passed) {
        rep.passed = false;
        rep.bad_lo = prev_gamma;
        rep.bad_hi = cat.t_max;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// real-axis zeros on [a, b].  Sign-change detection on the real restriction;
// a center zero forced by odd parity is reported even without a bracket.

inline std::vector<RealZeroEntry> detect_real_zeros(const LineFunction& line, double a, double b,
                                                    double step = 0.01) {
    if (!(a < b)) fail_invalid("detect_real_zeros: empty interval");
    if (!line.real_axis) fail_invalid("detect_real_zeros: family lacks a real-axis restriction");
    std::vector<RealZeroEntry> out;
    double prev_s = a;
    double prev_v = line.real_axis(a);
    for (double s = a + step; s < b + 0.5 * step; s += step) {
        double t = std::min(s, b);
        double v = line.real_axis(t);
        if (prev_v == 0.0) {
            out.push_back(RealZeroEntry{canon12(prev_s), 1, false});
        } else if ((prev_v > 0.0) != (v > 0.0) && v != 0.0) {
            double root = refine_bracket(line.real_axis, prev_s, t, 1e-10);
            out.push_back(RealZeroEntry{canon12(root), 1, false});
        }
        prev_s = t;
        prev_v = v;
    }
    if (line.forced_center_parity == 1) {
        double center = 0.5 * line.weight;
        if (center > a && center < b) {
            bool present = false;
            for (auto& rz : out)
                if (std::abs(rz.sigma - center) <= 1e-6) {
                    rz.parity_forced = true;  // odd order; order beyond 1 not resolved
                    present = true;
                }
            if (!present)
                out.push_back(RealZeroEntry{canon12(center), 1, true});
        }
        std::sort(out.begin(), out.end(),
                  [](const RealZeroEntry& x, const RealZeroEntry& y) { return x.sigma < y.sigma; });
    }
    return out;
}

}  // namespace zsl
