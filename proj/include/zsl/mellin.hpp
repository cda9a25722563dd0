#pragma once

// Symbolic test functions on the positive reals (multiplicative Haar measure
// dx/x) and their Mellin transforms M(F)(s) = int_0^inf F(x) x^s dx/x.
//
// Atoms are log-Gaussians, which have entire closed-form transforms; the
// node algebra (involution J_w, scaling, conjugation, sums, multiplicative
// convolution, theta smoothing) maps through the transform by exact rules.
// A trapezoid quadrature in logarithmic coordinates provides the independent
// numerical route used to cross-check the closed forms.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "zsl/common.hpp"
#include "zsl/specfun.hpp"

namespace zsl {

// ---------------------------------------------------------------------------
// expression tree

enum class TFKind {
    log_gaussian,   // amp * exp(-a (log x - mu)^2)
    involution,     // (J_w F)(x) = x^{-w} F(1/x)
    scaling,        // (lambda . F)(x) = F(x / lambda)
    conjugation,    // complex conjugate of F
    sum,            //
    mult_conv,      // (F * G)(x) = int F(y) G(x/y) dy/y
    theta_smoothed  // theta-tilde * h ; spectral transform xi(s) M(h)(s)
};

struct TFNode;
using TFPtr = std::shared_ptr<const TFNode>;

struct TFNode {
    TFKind kind;
    double a = 0.0, mu = 0.0;   // log_gaussian
    Complex amp{1.0, 0.0};      // log_gaussian
    double w = 0.0;             // involution weight
    double lambda = 1.0;        // scaling factor
    std::vector<TFPtr> kids;
};

struct TestFunction {
    TFPtr root;
    bool valid() const { return root != nullptr; }
};

// ---------------------------------------------------------------------------
// printing (canonical structural key; also the DSL spelling used in reports)

inline std::string to_dsl(const TFPtr& n) {
    switch (n->kind) {
        case TFKind::log_gaussian: {
            std::string s = "loggauss:a=" + fmt_g12(n->a) + ",mu=" + fmt_g12(n->mu);
            if (n->amp != Complex(1.0, 0.0)) {
                s += ",amp=" + fmt_g12(n->amp.real());
                if (n->amp.imag() > 0.0) s += "+" + fmt_g12(n->amp.imag()) + "i";
                else if (n->amp.imag() < 0.0) s += "-" + fmt_g12(-n->amp.imag()) + "i";
            }
            return s;
        }
        case TFKind::involution:
            return "j" + fmt_g12(n->w) + "(" + to_dsl(n->kids[0]) + ")";
        case TFKind::scaling:
            return "scale:" + fmt_g12(n->lambda) + "(" + to_dsl(n->kids[0]) + ")";
        case TFKind::conjugation:
            return "conj(" + to_dsl(n->kids[0]) + ")";
        case TFKind::sum: {
            std::string s = "sum(";
            for (std::size_t i = 0; i < n->kids.size(); ++i) {
                if (i) s += ";";
                s += to_dsl(n->kids[i]);
            }
            return s + ")";
        }
        case TFKind::mult_conv:
            return "conv(" + to_dsl(n->kids[0]) + "," + to_dsl(n->kids[1]) + ")";
        case TFKind::theta_smoothed:
            return "smooth(" + to_dsl(n->kids[0]) + ")";
    }
    return "?";
}

inline std::string to_dsl(const TestFunction& f) { return to_dsl(f.root); }

inline bool tf_equal(const TFPtr& x, const TFPtr& y) {
    if (x->kind != y->kind) return false;
    if (x->a != y->a || x->mu != y->mu || x->amp != y->amp) return false;
    if (x->w != y->w || x->lambda != y->lambda) return false;
    if (x->kids.size() != y->kids.size()) return false;
    for (std::size_t i = 0; i < x->kids.size(); ++i)
        if (!tf_equal(x->kids[i], y->kids[i])) return false;
    return true;
}

inline bool operator==(const TestFunction& a, const TestFunction& b) {
    return tf_equal(a.root, b.root);
}

// ---------------------------------------------------------------------------
// builders (normalizing eagerly: J_w J_w = id, scalings compose, conj conj =
// id, sums flatten, convolution is commutative via canonical ordering)

inline TestFunction log_gaussian(double a, double mu, Complex amp = Complex(1.0, 0.0)) {
    if (!(a > 0.0) || !std::isfinite(a)) fail_invalid("log_gaussian: width a must be > 0");
    check_finite(mu, "log_gaussian");
    check_finite(amp, "log_gaussian");
    auto n = std::make_shared<TFNode>();
    n->kind = TFKind::log_gaussian;
    n->a = a;
    n->mu = mu;
    n->amp = amp;
    return TestFunction{n};
}

inline TestFunction apply_J(const TestFunction& f, double w) {
    check_finite(w, "apply_J");
    if (f.root->kind == TFKind::involution && f.root->w == w)
        return TestFunction{f.root->kids[0]};
    auto n = std::make_shared<TFNode>();
    n->kind = TFKind::involution;
    n->w = w;
    n->kids = {f.root};
    return TestFunction{n};
}

inline TestFunction scale_action(const TestFunction& f, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail_invalid("scale_action: lambda must be > 0");
    if (lambda == 1.0) return f;
    if (f.root->kind == TFKind::scaling) {
        double merged = lambda * f.root->lambda;
        TestFunction kid{f.root->kids[0]};
        return merged == 1.0 ? kid : scale_action(kid, merged);
    }
    auto n = std::make_shared<TFNode>();
    n->kind = TFKind::scaling;
    n->lambda = lambda;
    n->kids = {f.root};
    return TestFunction{n};
}

inline TestFunction conjugate(const TestFunction& f) {
    if (f.root->kind == TFKind::conjugation) return TestFunction{f.root->kids[0]};
    auto n = std::make_shared<TFNode>();
    n->kind = TFKind::conjugation;
    n->kids = {f.root};
    return TestFunction{n};
}

inline TestFunction tf_sum(const std::vector<TestFunction>& parts) {
    if (parts.empty()) fail_invalid("tf_sum: empty sum");
    if (parts.size() == 1) return parts[0];
    auto n = std::make_shared<TFNode>();
    n->kind = TFKind::sum;
    for (const auto& p : parts) {
        if (p.root->kind == TFKind::sum)
            n->kids.insert(n->kids.end(), p.root->kids.begin(), p.root->kids.end());
        else
            n->kids.push_back(p.root);
    }
    return TestFunction{n};
}

inline TestFunction mult_convolve(const TestFunction& f, const TestFunction& g) {
    auto n = std::make_shared<TFNode>();
    n->kind = TFKind::mult_conv;
    if (to_dsl(f.root) <= to_dsl(g.root)) n->kids = {f.root, g.root};
    else n->kids = {g.root, f.root};
    return TestFunction{n};
}

inline TestFunction smoothed_image(const TestFunction& h) {
    auto n = std::make_shared<TFNode>();
    n->kind = TFKind::theta_smoothed;
    n->kids = {h.root};
    return TestFunction{n};
}

// real-valued in the conservative sense: no conjugation nodes, real amplitudes
inline bool is_real_valued(const TFPtr& n) {
    if (n->kind == TFKind::conjugation) return false;
    if (n->kind == TFKind::log_gaussian && n->amp.imag() != 0.0) return false;
    for (const auto& k : n->kids)
        if (!is_real_valued(k)) return false;
    return true;
}

inline bool is_real_valued(const TestFunction& f) { return is_real_valued(f.root); }

// ---------------------------------------------------------------------------
// convergence strip (for the pointwise/quadrature route; the closed forms
// continue analytically past it)

struct Strip {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

inline Strip convergence_strip(const TFPtr& n) {
    switch (n->kind) {
        case TFKind::log_gaussian: return {};
        case TFKind::involution: {
            Strip k = convergence_strip(n->kids[0]);
            return {n->w - k.hi, n->w - k.lo};
        }
        case TFKind::scaling:
        case TFKind::conjugation: return convergence_strip(n->kids[0]);
        case TFKind::sum:
        case TFKind::mult_conv: {
            Strip s;
            for (const auto& k : n->kids) {
                Strip ks = convergence_strip(k);
                s.lo = std::max(s.lo, ks.lo);
                s.hi = std::min(s.hi, ks.hi);
            }
            return s;
        }
        case TFKind::theta_smoothed: {
            Strip s = convergence_strip(n->kids[0]);
            s.lo = std::max(s.lo, 1.0);  // theta-tilde grows like 1/x at 0
            return s;
        }
    }
    return {};
}

inline Strip convergence_strip(const TestFunction& f) { return convergence_strip(f.root); }

// ---------------------------------------------------------------------------
// closed-form Mellin transform

inline Complex mellin(const TFPtr& n, Complex s) {
    switch (n->kind) {
        case TFKind::log_gaussian:
            return n->amp * std::sqrt(PI / n->a) * std::exp(s * n->mu + s * s / (4.0 * n->a));
        case TFKind::involution:
            return mellin(n->kids[0], Complex(n->w, 0.0) - s);
        case TFKind::scaling:
            return std::exp(s * std::log(n->lambda)) * mellin(n->kids[0], s);
        case TFKind::conjugation:
            return std::conj(mellin(n->kids[0], std::conj(s)));
        case TFKind::sum: {
            Complex acc(0.0, 0.0);
            for (const auto& k : n->kids) acc += mellin(k, s);
            return acc;
        }
        case TFKind::mult_conv:
            return mellin(n->kids[0], s) * mellin(n->kids[1], s);
        case TFKind::theta_smoothed:
            // completed_L_Q signals the poles at s = 0, 1
            return completed_L_Q(s) * mellin(n->kids[0], s);
    }
    fail_runtime("mellin: unreachable");
}

inline Complex mellin(const TestFunction& f, Complex s) {
    Complex v = mellin(f.root, s);
    check_finite(v, "mellin");
    return v;
}

// ---------------------------------------------------------------------------
// theta series: theta~(x) = 2 sum_{n>=1} exp(-pi n^2 x^2).  Truncation cap is
// explicit; n_cap <= 0 selects the smallest cap with tail below 1e-15 of the
// leading term.  theta_fast routes small x through the functional equation
// theta~(1/x) = x theta~(x) + x - 1 so the convolution evaluator never needs
// gigantic caps.

inline double theta_series(double x, long n_cap = 0) {
    if (!(x > 0.0)) fail_invalid("theta_series: x must be > 0");
    if (n_cap <= 0) {
        n_cap = long(std::ceil(std::sqrt(38.0 / PI) / x)) + 1;
        if (n_cap > 10000000L)
            fail_invalid("theta_series: x too small for direct summation; use the functional equation");
    }
    double q = PI * x * x;
    double sum = 0.0;
    for (long n = n_cap; n >= 1; --n) {
        double e = q * double(n) * double(n);
        if (e > 745.0) continue;  // underflows to 0
        sum += std::exp(-e);
    }
    return 2.0 * sum;
}

inline double theta_fast(double x) {
    if (x >= 0.7) return theta_series(x);
    return (1.0 + theta_series(1.0 / x)) / x - 1.0;
}

// ---------------------------------------------------------------------------
// log-coordinate envelope: where the mass of F(e^u) lives and how fast the
// dominating Gaussian decays.  Drives quadrature windows and step sizes.

struct LogEnvelope {
    double a_min = 0.0;   // slowest Gaussian decay rate (window widths)
    double a_max = 0.0;   // widest Fourier content (step / alias control)
    double c_lo = 0.0;    // mass interval in u = log x
    double c_hi = 0.0;
    bool has_theta = false;
};

inline LogEnvelope log_envelope(const TFPtr& n) {
    switch (n->kind) {
        case TFKind::log_gaussian: return {n->a, n->a, n->mu, n->mu, false};
        case TFKind::involution: {
            LogEnvelope k = log_envelope(n->kids[0]);
            double tilt = std::abs(n->w) / (2.0 * k.a_min);
            return {k.a_min, k.a_max, -k.c_hi - tilt, -k.c_lo + tilt, k.has_theta};
        }
        case TFKind::scaling: {
            LogEnvelope k = log_envelope(n->kids[0]);
            double d = std::log(n->lambda);
            return {k.a_min, k.a_max, k.c_lo + d, k.c_hi + d, k.has_theta};
        }
        case TFKind::conjugation: return log_envelope(n->kids[0]);
        case TFKind::sum: {
            LogEnvelope e = log_envelope(n->kids[0]);
            for (std::size_t i = 1; i < n->kids.size(); ++i) {
                LogEnvelope k = log_envelope(n->kids[i]);
                e.a_min = std::min(e.a_min, k.a_min);
                e.a_max = std::max(e.a_max, k.a_max);
                e.c_lo = std::min(e.c_lo, k.c_lo);
                e.c_hi = std::max(e.c_hi, k.c_hi);
                e.has_theta = e.has_theta || k.has_theta;
            }
            return e;
        }
        case TFKind::mult_conv: {
            // convolving Gaussians combines rates harmonically, for the
            // window (a_min) and the Fourier width (a_max) alike
            LogEnvelope x = log_envelope(n->kids[0]);
            LogEnvelope y = log_envelope(n->kids[1]);
            double amin = 1.0 / (1.0 / x.a_min + 1.0 / y.a_min);
            double amax = 1.0 / (1.0 / x.a_max + 1.0 / y.a_max);
            return {amin, amax, x.c_lo + y.c_lo, x.c_hi + y.c_hi,
                    x.has_theta || y.has_theta};
        }
        case TFKind::theta_smoothed: {
            LogEnvelope k = log_envelope(n->kids[0]);
            return {k.a_min, k.a_max, k.c_lo - 1.0, k.c_hi + 1.4, true};
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// pointwise evaluation

namespace detail {
inline constexpr double QUAD_D = 42.0;  // e^{-42} ~ 5.7e-19 target resolution
}

inline Complex tf_eval(const TFPtr& n, double x);

// (F * G)(e^u) by trapezoid over v; window from both envelopes
inline Complex conv_eval(const TFPtr& f, const TFPtr& g, double u) {
    LogEnvelope ef = log_envelope(f), eg = log_envelope(g);
    double mf = std::sqrt(detail::QUAD_D / ef.a_min) + 1.0;
    double mg = std::sqrt(detail::QUAD_D / eg.a_min) + 1.0;
    double vlo = std::max(ef.c_lo - mf, u - eg.c_hi - mg);
    double vhi = std::min(ef.c_hi + mf, u - eg.c_lo + mg);
    if (vhi <= vlo) return Complex(0.0, 0.0);
    double a = ef.a_max + eg.a_max;  // Gaussian rates add under pointwise product
    double step = std::min(0.25, PI / std::sqrt(a * detail::QUAD_D));
    long nsteps = long(std::ceil((vhi - vlo) / step));
    step = (vhi - vlo) / double(nsteps);
    Complex acc(0.0, 0.0);
    for (long i = 0; i <= nsteps; ++i) {
        double v = vlo + step * double(i);
        double wgt = (i == 0 || i == nsteps) ? 0.5 : 1.0;
        acc += wgt * tf_eval(f, std::exp(v)) * tf_eval(g, std::exp(u - v));
    }
    return acc * step;
}

// (theta~ * h)(e^u); theta~ lives on v <= ~1.4 and grows like e^{-v} to the
// left, the h-Gaussian wins the tail fight
inline Complex theta_conv_eval(const TFPtr& h, double u) {
    LogEnvelope eh = log_envelope(h);
    double m = std::sqrt((detail::QUAD_D + 10.0 + std::abs(u)) / eh.a_min) + 1.5;
    double vlo = u - eh.c_hi - m;
    double vhi = std::min(1.45, u - eh.c_lo + m);
    if (vhi <= vlo) return Complex(0.0, 0.0);
    // the theta factor limits the usable analyticity strip to ~pi/4, so the
    // step cap here is the accuracy bottleneck of the theta path
    double step = std::min(0.10, PI / std::sqrt(eh.a_max * detail::QUAD_D));
    long nsteps = long(std::ceil((vhi - vlo) / step));
    step = (vhi - vlo) / double(nsteps);
    Complex acc(0.0, 0.0);
    for (long i = 0; i <= nsteps; ++i) {
        double v = vlo + step * double(i);
        double wgt = (i == 0 || i == nsteps) ? 0.5 : 1.0;
        acc += wgt * theta_fast(std::exp(v)) * tf_eval(h, std::exp(u - v));
    }
    return acc * step;
}

inline Complex tf_eval(const TFPtr& n, double x) {
    if (!(x > 0.0)) fail_invalid("tf_eval: x must be > 0");
    switch (n->kind) {
        case TFKind::log_gaussian: {
            double d = std::log(x) - n->mu;
            return n->amp * std::exp(-n->a * d * d);
        }
        case TFKind::involution:
            return std::pow(x, -n->w) * tf_eval(n->kids[0], 1.0 / x);
        case TFKind::scaling:
            return tf_eval(n->kids[0], x / n->lambda);
        case TFKind::conjugation:
            return std::conj(tf_eval(n->kids[0], x));
        case TFKind::sum: {
            Complex acc(0.0, 0.0);
            for (const auto& k : n->kids) acc += tf_eval(k, x);
            return acc;
        }
        case TFKind::mult_conv:
            return conv_eval(n->kids[0], n->kids[1], std::log(x));
        case TFKind::theta_smoothed:
            return theta_conv_eval(n->kids[0], std::log(x));
    }
    fail_runtime("tf_eval: unreachable");
}

inline Complex tf_eval(const TestFunction& f, double x) { return tf_eval(f.root, x); }

// ---------------------------------------------------------------------------
// quadrature Mellin transform: trapezoid of F(e^u) e^{su} du.  The step keys
// off the oscillation |Im s| and the dominating Gaussian rate; the window
// keys off the envelope plus the peak shift Re s / 2a.  Inputs must lie in
// the convergence strip.

inline Complex mellin_quadrature(const TestFunction& f, Complex s) {
    Strip strip = convergence_strip(f);
    if (!(s.real() > strip.lo && s.real() < strip.hi))
        fail_domain("mellin_quadrature: Re s = " + fmt_g12(s.real()) +
                    " outside convergence strip (" + fmt_g12(strip.lo) + ", " +
                    fmt_g12(strip.hi) + ")");
    LogEnvelope env = log_envelope(f.root);
    const double D = detail::QUAD_D;
    double shift = std::abs(s.real()) / (2.0 * env.a_min);
    double margin = std::sqrt((D + 5.0) / env.a_min) + shift + 1.0;
    double ulo = env.c_lo - margin;
    double uhi = env.c_hi + margin;
    double step = 2.0 * PI / (std::abs(s.imag()) + 2.0 * std::sqrt(env.a_max * (D + 5.0)));
    if (env.has_theta) {
        step = std::min(step, 0.10);                    // analyticity strip of theta
        if (s.real() > strip.lo + 1e-9) {               // e^{(Re s - 1) u} left tail
            ulo = std::min(ulo, -(D + 8.0) / (s.real() - strip.lo));
        }
    }
    long nsteps = long(std::ceil((uhi - ulo) / step));
    step = (uhi - ulo) / double(nsteps);
    Complex acc(0.0, 0.0);
    for (long i = 0; i <= nsteps; ++i) {
        double u = ulo + step * double(i);
        double wgt = (i == 0 || i == nsteps) ? 0.5 : 1.0;
        acc += wgt * tf_eval(f.root, std::exp(u)) * std::exp(s * u);
    }
    return acc * step;
}

// ---------------------------------------------------------------------------
// spectral tail envelope: |M(F)(w/2 + i gamma)| <= C (1+|gamma|)^m e^{-k g^2}
// used for a-priori truncation bounds of pairings over zero catalogs.

struct TailEnvelope {
    double C = 0.0;
    int m = 0;
    double k = 0.0;
};

inline TailEnvelope tail_envelope(const TFPtr& n, double weight) {
    double c = 0.5 * weight;
    switch (n->kind) {
        case TFKind::log_gaussian:
            return {std::abs(n->amp) * std::sqrt(PI / n->a) *
                        std::exp(c * n->mu + c * c / (4.0 * n->a)),
                    0, 1.0 / (4.0 * n->a)};
        case TFKind::involution:
            // M(J_wn F)(s) = M(F)(wn - s); on the line this is the child's
            // envelope at effective weight 2 wn - w (equal to w when matched)
            return tail_envelope(n->kids[0], 2.0 * n->w - weight);
        case TFKind::scaling: {
            TailEnvelope e = tail_envelope(n->kids[0], weight);
            e.C *= std::pow(n->lambda, c);
            return e;
        }
        case TFKind::conjugation: return tail_envelope(n->kids[0], weight);
        case TFKind::sum: {
            TailEnvelope e{0.0, 0, std::numeric_limits<double>::infinity()};
            for (const auto& kid : n->kids) {
                TailEnvelope ke = tail_envelope(kid, weight);
                e.C += ke.C;
                e.m = std::max(e.m, ke.m);
                e.k = std::min(e.k, ke.k);
            }
            return e;
        }
        case TFKind::mult_conv: {
            TailEnvelope x = tail_envelope(n->kids[0], weight);
            TailEnvelope y = tail_envelope(n->kids[1], weight);
            return {x.C * y.C, x.m + y.m, x.k + y.k};
        }
        case TFKind::theta_smoothed: {
            // |xi(1/2+it)| <= Gamma(1/4) pi^{-1/4} * 3 (1+t)^{1/2}; the root
            // is absorbed into one extra polynomial degree
            TailEnvelope e = tail_envelope(n->kids[0], weight);
            return {8.2 * e.C, e.m + 1, e.k};
        }
    }
    return {};
}

inline TailEnvelope tail_envelope(const TestFunction& f, double weight) {
    return tail_envelope(f.root, weight);
}

}  // namespace zsl
