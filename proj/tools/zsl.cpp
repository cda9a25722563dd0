// Batch front door: catalogs, pairing reports, Gram matrices, function-field
// and elliptic reports, suspension, and the acceptance suite.  All stdout
// output is deterministic given the flags (%.12g formatting, fixed field
// order); progress and self-check notes go to stderr.
//
// Exit codes: 0 success, 1 failed computation or failed verify, 2 bad usage
// (flag or descriptor parse errors, always naming the offending token).

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zsl/acceptance.hpp"
#include "zsl/dsl.hpp"
#include "zsl/ellcurve.hpp"
#include "zsl/ffield.hpp"
#include "zsl/mellin.hpp"
#include "zsl/pairing.hpp"
#include "zsl/serialize.hpp"
#include "zsl/suspension.hpp"
#include "zsl/zerofind.hpp"

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        zsl::write_text_file(out_path, text);
}

// line handle for a named family: "riemann", a preset curve, or "ec:..."
zsl::LineFunction build_line(const std::string& family, double t_cap) {
    if (family == "riemann") return zsl::riemann_line();
    zsl::EllipticCurveQ e = zsl::parse_elliptic_curve(family);
    e.epsilon = zsl::root_number(e);
    return zsl::elliptic_line(e, t_cap);
}

zsl::ZeroCatalog scan_family(const std::string& family, bool by_count, long count, double t_max,
                             double step, double tol) {
    zsl::ZeroCatalog cat;
    if (by_count) {
        double t = 30.0;
        for (;;) {
            cat = zsl::scan_zeros(build_line(family, t), t, step, tol);
            if (long(cat.zeros.size()) >= count) break;
            if (t > 5000.0)
                zsl::fail_runtime("zeros: gave up below t = " + zsl::fmt_g12(t) + " with " +
                                  std::to_string(cat.zeros.size()) + " zeros, wanted " +
                                  std::to_string(count));
            t *= 1.6;
        }
        if (long(cat.zeros.size()) > count) {
            cat.zeros.resize(std::size_t(count));
            cat.t_max = cat.zeros.back().gamma;  // coverage claimed only this far
        }
    } else {
        cat = zsl::scan_zeros(build_line(family, t_max), t_max, step, tol);
    }

    // real-axis sweep over the central 80% of the critical segment
    zsl::LineFunction line = build_line(family, cat.t_max);
    cat.real_zeros = zsl::detect_real_zeros(line, 0.1 * cat.weight, 0.9 * cat.weight, step);

    if (cat.family.kind == zsl::FamilyKind::riemann)
        cat.certified = zsl::completeness_check(cat).passed;
    return cat;
}

std::pair<zsl::Complex, long> parse_eigen_token(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    long mult = 1;
    auto xpos = s.find('x');
    if (xpos != std::string::npos) {
        std::size_t used = 0;
        try {
            mult = std::stol(s.substr(xpos + 1), &used);
        } catch (const std::exception&) {
            zsl::fail_invalid("suspend: bad multiplicity in \"" + raw + "\"");
        }
        if (used != s.size() - xpos - 1)
            zsl::fail_invalid("suspend: bad multiplicity in \"" + raw + "\"");
        s = s.substr(0, xpos);
    }
    const char* p = s.c_str();
    char* end = nullptr;
    double re = std::strtod(p, &end);
    if (end == p) zsl::fail_invalid("suspend: bad eigenvalue \"" + raw + "\"");
    double im = 0.0;
    if (*end == '+' || *end == '-') {
        char* e2 = nullptr;
        double v = std::strtod(end, &e2);
        if (e2 == end || *e2 != 'i')
            zsl::fail_invalid("suspend: bad imaginary part in \"" + raw + "\"");
        im = v;
        end = e2 + 1;
    }
    if (*end != '\0') zsl::fail_invalid("suspend: trailing characters in \"" + raw + "\"");
    return {zsl::Complex(re, im), mult};
}

std::string json_real_zero(const zsl::RealZeroEntry& rz) {
    return "{\"sigma\": " + zsl::fmt_g12(rz.sigma) + ", \"mult\": " + std::to_string(rz.mult) +
           ", \"parity_forced\": " + (rz.parity_forced ? "true" : "false") + "}";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zsl — a desk-scale laboratory for the spectral side of L-functions"};
    app.require_subcommand(1);

    double tol = 1e-10;
    double step = 0.01;
    std::string out_path;
    app.add_option("--tol", tol, "verification tolerance (env ZSL_TOL)")
        ->envname("ZSL_TOL")
        ->check(CLI::PositiveNumber);

    int rc = 0;

    // --- zeros ---------------------------------------------------------------
    auto* sc_zeros = app.add_subcommand("zeros", "build and serialize a zero catalog");
    std::string zf_family = "riemann";
    long zf_count = 0;
    double zf_tmax = 0.0;
    sc_zeros->add_option("--family", zf_family, "riemann | 11a1 | 37a1 | ec:<...>");
    auto* opt_count = sc_zeros->add_option("--count", zf_count, "number of zeros wanted")
                          ->check(CLI::Range(1L, 100000L));
    auto* opt_tmax = sc_zeros->add_option("--t-max", zf_tmax, "scan ordinates up to this height")
                         ->check(CLI::PositiveNumber);
    opt_count->excludes(opt_tmax);
    sc_zeros->add_option("--step", step, "scan step (default 0.01)")->check(CLI::PositiveNumber);
    sc_zeros->add_option("--out", out_path, "output path (default stdout)");
    sc_zeros->callback([&] {
        if (!*opt_count && !*opt_tmax)
            zsl::fail_invalid("zeros: exactly one of --count and --t-max is required");
        double scan_tol = (tol == 1e-10 && !app.count("--tol")) ? 1e-8 : tol;
        zsl::ZeroCatalog cat =
            scan_family(zf_family, opt_count->count() > 0, zf_count, zf_tmax, step, scan_tol);
        emit(zsl::write_catalog(cat), out_path);
    });

    // --- pair ------------------------------------------------------------------
    auto* sc_pair = app.add_subcommand("pair", "pair two test functions over a catalog");
    std::string pr_form, pr_catalog;
    std::vector<std::string> pr_fns;
    sc_pair->add_option("--form", pr_form, "antisym | sym | hermitian")
        ->required()
        ->check(CLI::IsMember({"antisym", "sym", "hermitian"}));
    sc_pair->add_option("--catalog", pr_catalog, "catalog JSON path")->required();
    sc_pair->add_option("--fn", pr_fns, "test-function DSL expression (exactly two)")
        ->expected(1)
        ->take_all();
    sc_pair->add_option("--out", out_path, "output path (default stdout)");
    sc_pair->callback([&] {
        if (pr_fns.size() != 2) zsl::fail_invalid("pair: exactly two --fn expressions required");
        zsl::ZeroCatalog cat = zsl::read_catalog(zsl::read_text_file(pr_catalog));
        zsl::SpectralVector u = zsl::spectralize(zsl::parse_test_function(pr_fns[0]), cat);
        zsl::SpectralVector v = zsl::spectralize(zsl::parse_test_function(pr_fns[1]), cat);
        zsl::PairingValue p;
        if (pr_form == "antisym") {
            p = zsl::pair_antisym(u, v);
            zsl::PairingValue q = zsl::pair_antisym(v, u);
            if (p.value.real() == -q.value.real() && p.value.imag() == -q.value.imag())
                std::fputs("self-check: antisymmetry exact (bit level)\n", stderr);
            else
                zsl::fail_runtime("pair: antisymmetry self-check failed");
        } else if (pr_form == "sym") {
            p = zsl::pair_sym(u, v);
            zsl::PairingValue q = zsl::pair_sym(v, u);
            if (p.value.real() == q.value.real() && p.value.imag() == q.value.imag())
                std::fputs("self-check: symmetry exact (bit level)\n", stderr);
            else
                zsl::fail_runtime("pair: symmetry self-check failed");
        } else {
            p.value = zsl::hermitian_form(u, v);
            p.twist = cat.weight;
            p.truncation_bound = zsl::truncation_estimate(u, v, &p.flags);
            zsl::Complex h2 = zsl::hermitian_form(v, u);
            if (p.value.real() == h2.real() && p.value.imag() == -h2.imag())
                std::fputs("self-check: Hermitian symmetry exact (bit level)\n", stderr);
            else
                zsl::fail_runtime("pair: Hermitian self-check failed");
        }
        emit(zsl::write_pairing_report(pr_form, cat.weight, pr_catalog, p), out_path);
    });

    // --- gram ---------------------------------------------------------------------
    auto* sc_gram = app.add_subcommand("gram", "Gram matrix of a test-function family");
    std::string gr_form, gr_catalog, gr_format = "csv";
    std::vector<std::string> gr_fns;
    sc_gram->add_option("--form", gr_form, "antisym | sym | hermitian")
        ->required()
        ->check(CLI::IsMember({"antisym", "sym", "hermitian"}));
    sc_gram->add_option("--catalog", gr_catalog, "catalog JSON path")->required();
    sc_gram->add_option("--fn", gr_fns, "family members (default: the five-atom family, "
                                        "plus J1 partners for antisym)")
        ->expected(1)
        ->take_all();
    sc_gram->add_option("--format", gr_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sc_gram->add_option("--out", out_path, "matrix output path (default stdout)");
    sc_gram->callback([&] {
        zsl::ZeroCatalog cat = zsl::read_catalog(zsl::read_text_file(gr_catalog));
        std::vector<zsl::TestFunction> fam;
        if (gr_fns.empty()) {
            fam = zsl::default_family();
            if (gr_form == "antisym")
                for (std::size_t i = 0, n = fam.size(); i < n; ++i)
                    fam.push_back(zsl::apply_J(fam[i], double(cat.weight)));
        } else {
            for (const std::string& text : gr_fns) fam.push_back(zsl::parse_test_function(text));
        }
        std::vector<std::string> labels;
        for (const zsl::TestFunction& f : fam) labels.push_back(zsl::to_dsl(f));

        zsl::FormTag form = gr_form == "antisym" ? zsl::FormTag::antisym
                            : gr_form == "sym"   ? zsl::FormTag::sym
                                                 : zsl::FormTag::hermitian;
        zsl::ComplexMatrix g = zsl::gram_matrix(fam, form, cat);

        std::string report;
        if (gr_form == "hermitian") {
            auto [lo, hi] = zsl::psd_check(g);
            report = "min_eigenvalue = " + zsl::fmt_g12(lo) + "\nmax_eigenvalue = " +
                     zsl::fmt_g12(hi) + "\npositive_definite = " + (lo > 0.0 ? "true" : "false") +
                     "\n";
        } else {
            int rank = zsl::numeric_rank(g, 1e-9);
            report = "numeric_rank = " + std::to_string(rank) + " of " +
                     std::to_string(g.size()) + " at threshold 1e-09\n";
        }

        std::string matrix_text;
        if (gr_format == "csv") {
            matrix_text = zsl::write_gram_csv(labels, g);
        } else {
            matrix_text = "{\n  \"form\": \"" + gr_form + "\",\n  \"catalog_ref\": " +
                          zsl::detail::json_quote(gr_catalog) + ",\n  \"exprs\": [";
            for (std::size_t i = 0; i < labels.size(); ++i) {
                if (i) matrix_text += ", ";
                matrix_text += zsl::detail::json_quote(labels[i]);
            }
            matrix_text += "],\n  \"matrix\": [";
            for (std::size_t i = 0; i < g.size(); ++i) {
                matrix_text += (i ? ",\n             " : "\n             ") + std::string("[");
                for (std::size_t j = 0; j < g[i].size(); ++j) {
                    if (j) matrix_text += ", ";
                    matrix_text += zsl::detail::json_complex(g[i][j]);
                }
                matrix_text += "]";
            }
            matrix_text += "\n  ]\n}\n";
        }
        emit(matrix_text, out_path);
        // the scalar summary goes wherever the matrix is not
        if (out_path.empty())
            std::fputs(report.c_str(), stderr);
        else
            std::fputs(report.c_str(), stdout);
    });

    // --- ff ---------------------------------------------------------------------------
    auto* sc_ff = app.add_subcommand("ff", "function-field zeta, eigenvalues, duality pairing");
    std::string ff_curve;
    sc_ff->add_option("--curve", ff_curve, "ell:q=<pk>;a1=..,a2=..,a3=..,a4=..,a6=..  or  "
                                           "counts:q=<pk>;g=<g>;N=<n1>[,...]")
        ->required();
    sc_ff->add_option("--out", out_path, "output path (default stdout)");
    sc_ff->callback([&] {
        zsl::CurveOverFq c = zsl::parse_curve(ff_curve);
        std::vector<long> counts;
        for (int d = 1; d <= c.genus; ++d) counts.push_back(zsl::count_points(c, d));
        zsl::ZetaPolynomial zp = zsl::zeta_numerator(counts, c.genus, c.q);
        zsl::FrobeniusSpectrum spec = zsl::frobenius_eigenvalues(zp);
        zsl::PoincarePairing pp = zsl::poincare_pairing_matrix(spec);
        emit(zsl::write_ff_report(zp, spec, pp), out_path);
    });

    // --- ec ---------------------------------------------------------------------------
    auto* sc_ec = app.add_subcommand("ec", "elliptic curve report: Lambda, zeros, factor table");
    std::string ec_curve;
    double ec_tmax = 20.0;
    sc_ec->add_option("--curve", ec_curve, "11a1 | 37a1 | ec:<a1>,..,<a6>@N=<N>[;ap:<p>=<v>]")
        ->required();
    sc_ec->add_option("--t-max", ec_tmax, "zero scan height (default 20)")
        ->check(CLI::PositiveNumber);
    sc_ec->add_option("--step", step, "scan step (default 0.01)")->check(CLI::PositiveNumber);
    sc_ec->add_option("--out", out_path, "output path (default stdout)");
    sc_ec->callback([&] {
        zsl::EllipticCurveQ e = zsl::parse_elliptic_curve(ec_curve);
        e.epsilon = zsl::root_number(e);

        double worst_fe = 0.0;
        for (int k = 0; k < 20; ++k) {
            zsl::Complex s(0.4 + 0.06 * k, -10.0 + 20.0 * k / 19.0);
            zsl::Complex va = zsl::lambda(e, s);
            zsl::Complex vb = zsl::lambda(e, 2.0 - s);
            worst_fe = std::max(worst_fe, std::abs(va - double(e.epsilon) * vb) /
                                              std::max(1.0, std::abs(va)));
        }
        zsl::Complex central = zsl::lambda(e, zsl::Complex(1.0, 0.0));
        zsl::Theorem3Verdict t3 = zsl::theorem3_hypothesis(e);

        double scan_tol = (tol == 1e-10 && !app.count("--tol")) ? 1e-8 : tol;
        zsl::LineFunction line = zsl::elliptic_line(e, ec_tmax * 1.2);
        zsl::ZeroCatalog cat = zsl::scan_zeros(line, ec_tmax, step, scan_tol);
        cat.real_zeros = t3.violations;

        // the composite transforms by the root number: lt(2-s) = eps * lt(s)
        zsl::Complex s0(0.7, 1.5);
        zsl::LambdaTotalResult lt = zsl::lambda_total(e, s0);
        zsl::LambdaTotalResult lt2 = zsl::lambda_total(e, 2.0 - s0);
        double lt_res =
            std::abs(lt.value - double(e.epsilon) * lt2.value) / std::abs(lt.value);

        std::string out = "{\n";
        out += "  \"curve\": " + zsl::detail::json_quote(e.label) + ",\n";
        out += "  \"conductor\": " + std::to_string(e.conductor) + ",\n";
        out += "  \"root_number\": " + std::to_string(e.epsilon) + ",\n";
        out += "  \"fe_residual\": " + zsl::fmt_g12(worst_fe) + ",\n";
        out += "  \"lambda_1\": " + zsl::detail::json_complex(central) + ",\n";
        out += "  \"theorem3\": {\"satisfied\": " + std::string(t3.satisfied ? "true" : "false") +
               ", \"violations\": [";
        for (std::size_t i = 0; i < t3.violations.size(); ++i) {
            if (i) out += ", ";
            out += json_real_zero(t3.violations[i]);
        }
        out += "]},\n";
        out += "  \"lambda_total\": {\"s\": " + zsl::detail::json_complex(s0) +
               ", \"value\": " + zsl::detail::json_complex(lt.value) +
               ", \"symmetry_residual\": " + zsl::fmt_g12(lt_res) + ", \"factors\": [";
        for (std::size_t i = 0; i < lt.factors.size(); ++i) {
            out += (i ? ",\n    " : "\n    ");
            out += "{\"label\": " + zsl::detail::json_quote(lt.factors[i].label) +
                   ", \"value\": " + zsl::detail::json_complex(lt.factors[i].value) + "}";
        }
        out += "\n  ]},\n";
        std::vector<zsl::MotiveFactor> mf = zsl::motive_factors(e);
        out += "  \"motive\": [";
        for (std::size_t i = 0; i < mf.size(); ++i) {
            out += (i ? ",\n    " : "\n    ");
            out += "{\"label\": " + zsl::detail::json_quote(mf[i].label) + ", ";
            out += mf[i].has_twist ? "\"twist\": " + std::to_string(mf[i].twist) + ", "
                                   : std::string("\"twist\": null, ");
            out += "\"analytic\": " + zsl::detail::json_quote(mf[i].analytic);
            if (!mf[i].family_note.empty())
                out += ", \"family_note\": " + zsl::detail::json_quote(mf[i].family_note);
            out += "}";
        }
        out += "\n  ],\n";
        out += "  \"catalog\": ";
        {
            std::string cat_text = zsl::write_catalog(cat);
            // indent the nested document by two spaces for readability
            std::string indented;
            for (char ch : cat_text) {
                indented += ch;
                if (ch == '\n') indented += "  ";
            }
            while (!indented.empty() && (indented.back() == ' ' || indented.back() == '\n'))
                indented.pop_back();
            out += indented;
        }
        out += "\n}\n";
        emit(out, out_path);
    });

    // --- suspend -------------------------------------------------------------------------
    auto* sc_sus = app.add_subcommand("suspend", "suspend eigenvalues to the fundamental strip");
    long sus_q = 0;
    long sus_m = 1;
    std::vector<std::string> sus_eigen;
    sc_sus->add_option("--q", sus_q, "prime power base")->required()->check(CLI::Range(2L, 1L << 20));
    sc_sus->add_option("--eigen", sus_eigen, "eigenvalue <re>[(+|-)<im>i][x<mult>]")
        ->required()
        ->expected(1)
        ->take_all();
    sc_sus->add_option("--m", sus_m, "twist power for the q^m check (default 1)");
    sc_sus->add_option("--out", out_path, "output path (default stdout)");
    sc_sus->callback([&] {
        std::vector<std::pair<zsl::Complex, long>> eigen;
        for (const std::string& tok : sus_eigen) eigen.push_back(parse_eigen_token(tok));
        zsl::SuspendedSpectrum s = zsl::suspend(sus_q, eigen);
        emit(zsl::write_suspension_report(s), out_path);
        zsl::TwistVerdict tv = zsl::suspension_twist_check(s, sus_m);
        std::fprintf(stderr, "twist check at m=%ld: eigen action %s, pairing twist %s\n", sus_m,
                     tv.eigen_action_ok ? "ok" : "FAILED",
                     tv.pairing_twist_exact ? "exact" : "FAILED");
        if (!tv.eigen_action_ok || !tv.pairing_twist_exact) rc = 1;
    });

    // --- verify -------------------------------------------------------------------------
    auto* sc_verify = app.add_subcommand("verify", "run the full acceptance suite");
    sc_verify->callback([&] {
        std::vector<zsl::CriterionResult> results = zsl::run_acceptance();
        int failures = 0;
        for (const zsl::CriterionResult& r : results) {
            std::printf("%s\n", zsl::format_criterion_line(r).c_str());
            std::fflush(stdout);
            if (!r.pass) ++failures;
        }
        std::printf("%d/%zu criteria passed\n", int(results.size()) - failures, results.size());
        if (failures > 0) rc = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "zsl: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "zsl: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "zsl: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
