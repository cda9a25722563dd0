#pragma once

// Flat-file interchange.  Writers are hand-rolled so field order and number
// formatting (%.12g) are fixed byte-for-byte; the reader side leans on a
// standard JSON parser and validates shape.  Catalog ordinates are stored
// canonicalized to 12 significant digits, which makes write -> read the
// identity on catalogs (12 decimal digits resolve more coarsely than the 15
// significant digits a double carries, so parsing the printed form recovers
// the canonical double exactly).

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsl/common.hpp"
#include "zsl/ffield.hpp"
#include "zsl/linalg.hpp"
#include "zsl/pairing.hpp"
#include "zsl/suspension.hpp"
#include "zsl/zerofind.hpp"

namespace zsl {

// ---------------------------------------------------------------------------
// family tag: a one-line spelling that captures everything Family equality
// sees, so catalogs round-trip through it

inline std::string family_tag(const Family& f) {
    switch (f.kind) {
        case FamilyKind::riemann: return "riemann";
        case FamilyKind::elliptic: return "elliptic:" + f.curve_id;
        case FamilyKind::function_field: {
            std::string s = "ff:q=" + std::to_string(f.q) + ";P=";
            for (std::size_t i = 0; i < f.numerator.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(f.numerator[i]);
            }
            return s;
        }
    }
    fail_runtime("family_tag: unreachable");
}

inline Family parse_family_tag(const std::string& tag) {
    if (tag == "riemann") return Family::riemann();
    if (tag.rfind("elliptic:", 0) == 0) return Family::elliptic(tag.substr(9));
    if (tag.rfind("ff:q=", 0) == 0) {
        auto semi = tag.find(";P=");
        if (semi == std::string::npos)
            fail_invalid("parse_family_tag: missing ';P=' in \"" + tag + "\"");
        std::uint32_t q = std::uint32_t(std::stoul(tag.substr(5, semi - 5)));
        std::vector<std::int64_t> coeffs;
        std::stringstream ss(tag.substr(semi + 3));
        std::string item;
        while (std::getline(ss, item, ',')) coeffs.push_back(std::stoll(item));
        return Family::function_field(q, std::move(coeffs));
    }
    fail_invalid("parse_family_tag: unknown family \"" + tag + "\"");
}

// ---------------------------------------------------------------------------
// small append-only JSON writer: we control field order, nlohmann would sort

namespace detail {

inline std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

inline std::string json_complex(const Complex& z) {
    return "{\"re\": " + fmt_g12(z.real()) + ", \"im\": " + fmt_g12(z.imag()) + "}";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// zero catalog <-> JSON

inline std::string write_catalog(const ZeroCatalog& cat) {
    std::string out = "{\n";
    out += "  \"family\": " + detail::json_quote(family_tag(cat.family)) + ",\n";
    out += "  \"weight\": " + std::to_string(cat.weight) + ",\n";
    out += "  \"center\": " + fmt_g12(cat.center) + ",\n";
    out += "  \"t_max\": " + fmt_g12(cat.t_max) + ",\n";
    out += "  \"tolerance\": " + fmt_g12(cat.tolerance) + ",\n";
    out += "  \"zeros\": [";
    for (std::size_t i = 0; i < cat.zeros.size(); ++i) {
        out += (i ? ",\n           " : "\n           ");
        out += "{\"gamma\": " + fmt_g12(cat.zeros[i].gamma) +
               ", \"mult\": " + std::to_string(cat.zeros[i].mult) + "}";
    }
    out += cat.zeros.empty() ? "],\n" : "\n  ],\n";
    out += "  \"real_zeros\": [";
    for (std::size_t i = 0; i < cat.real_zeros.size(); ++i) {
        out += (i ? ",\n                " : "\n                ");
        out += "{\"sigma\": " + fmt_g12(cat.real_zeros[i].sigma) +
               ", \"mult\": " + std::to_string(cat.real_zeros[i].mult) + "}";
    }
    out += cat.real_zeros.empty() ? "],\n" : "\n  ],\n";
    out += "  \"certified\": " + std::string(cat.certified ? "true" : "false") + "\n";
    out += "}\n";
    return out;
}

inline ZeroCatalog read_catalog(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail_invalid(std::string("read_catalog: not valid JSON (") + e.what() + ")");
    }
    for (const char* key : {"family", "weight", "center", "t_max", "tolerance", "zeros",
                            "real_zeros", "certified"})
        if (!j.contains(key))
            fail_invalid(std::string("read_catalog: missing field \"") + key + "\"");
    ZeroCatalog cat;
    cat.family = parse_family_tag(j["family"].get<std::string>());
    cat.weight = j["weight"].get<int>();
    cat.center = j["center"].get<double>();
    cat.t_max = j["t_max"].get<double>();
    cat.tolerance = j["tolerance"].get<double>();
    for (const auto& z : j["zeros"]) {
        ZeroEntry e;
        e.gamma = z.at("gamma").get<double>();
        e.mult = z.at("mult").get<int>();
        cat.zeros.push_back(e);
    }
    for (const auto& z : j["real_zeros"]) {
        RealZeroEntry e;
        e.sigma = z.at("sigma").get<double>();
        e.mult = z.at("mult").get<int>();
        cat.real_zeros.push_back(e);
    }
    cat.certified = j["certified"].get<bool>();
    return cat;
}

// ---------------------------------------------------------------------------
// pairing report

inline std::string write_pairing_report(const std::string& form, int weight,
                                        const std::string& catalog_ref, const PairingValue& p) {
    std::string out = "{\n";
    out += "  \"form\": " + detail::json_quote(form) + ",\n";
    out += "  \"weight\": " + std::to_string(weight) + ",\n";
    out += "  \"catalog_ref\": " + detail::json_quote(catalog_ref) + ",\n";
    out += "  \"value\": " + detail::json_complex(p.value) + ",\n";
    out += "  \"twist\": " + std::to_string(p.twist) + ",\n";
    out += "  \"truncation_bound\": " + fmt_g12(p.truncation_bound) + ",\n";
    out += "  \"flags\": [";
    for (std::size_t i = 0; i < p.flags.size(); ++i) {
        if (i) out += ", ";
        out += detail::json_quote(p.flags[i]);
    }
    out += "]\n}\n";
    return out;
}

// ---------------------------------------------------------------------------
// function-field report

inline std::string write_ff_report(const ZetaPolynomial& zp, const FrobeniusSpectrum& spec,
                                   const PoincarePairing& pairing) {
    std::string out = "{\n";
    out += "  \"q\": " + std::to_string(zp.q) + ",\n";
    out += "  \"g\": " + std::to_string(zp.g) + ",\n";
    out += "  \"P\": [";
    for (std::size_t i = 0; i < zp.coeffs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(zp.coeffs[i]);
    }
    out += "],\n";
    out += "  \"eigenvalues\": [";
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        const FrobeniusEigenvalue& ev = spec.eigenvalues[i];
        out += (i ? ",\n                  " : "\n                  ");
        out += "{\"re\": " + fmt_g12(ev.value.real()) + ", \"im\": " + fmt_g12(ev.value.imag()) +
               ", \"mult\": " + std::to_string(ev.mult) +
               ", \"exact\": " + (ev.exact ? "true" : "false") + "}";
    }
    out += spec.eigenvalues.empty() ? "],\n" : "\n  ],\n";
    out += "  \"real_sqrt_q_mult\": " + std::to_string(spec.real_sqrt_q_mult) + ",\n";
    out += "  \"pairing\": {\"blocks\": " + std::to_string(pairing.form.size() / 2) +
           ", \"equivariance_factor\": " + std::to_string(pairing.equivariance_factor) + "}\n";
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// suspension report

inline std::string write_suspension_report(const SuspendedSpectrum& s) {
    std::string out = "{\n";
    out += "  \"base\": " + detail::json_quote(s.archimedean ? "archimedean" : "finite") + ",\n";
    out += "  \"q\": " + std::to_string(s.q) + ",\n";
    out += "  \"period\": " + fmt_g12(s.period) + ",\n";
    out += "  \"entries\": [";
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        const SuspendedEntry& e = s.entries[i];
        out += (i ? ",\n              " : "\n              ");
        out += "{\"s0\": " + detail::json_complex(e.s0) + ", \"mult\": " + std::to_string(e.mult) +
               ", \"exact\": " + (e.exact ? "true" : "false");
        if (e.exact)
            out += ", \"sigma\": " + detail::json_quote(e.sigma.str()) +
                   ", \"tau\": " + detail::json_quote(e.tau.str());
        out += "}";
    }
    out += s.entries.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// Gram matrix CSV: header row names the DSL expressions, each data row leads
// with its own expression; complex cells print as <re>(+|-)<im>i

namespace detail {

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_complex(const Complex& z) {
    std::string out = fmt_g12(z.real());
    if (z.imag() >= 0.0) out += "+" + fmt_g12(z.imag());
    else out += "-" + fmt_g12(-z.imag());
    return out + "i";
}

}  // namespace detail

inline std::string write_gram_csv(const std::vector<std::string>& exprs,
                                  const ComplexMatrix& gram) {
    if (exprs.size() != gram.size()) fail_invalid("write_gram_csv: label/matrix size mismatch");
    std::string out = "expr";
    for (const std::string& e : exprs) out += "," + detail::csv_quote(e);
    out += "\n";
    for (std::size_t i = 0; i < gram.size(); ++i) {
        if (gram[i].size() != exprs.size())
            fail_invalid("write_gram_csv: matrix is not square");
        out += detail::csv_quote(exprs[i]);
        for (const Complex& z : gram[i]) out += "," + detail::csv_complex(z);
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// file helpers

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_runtime("cannot open \"" + path + "\" for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_runtime("cannot open \"" + path + "\" for writing");
    out << content;
    if (!out.flush()) fail_runtime("short write to \"" + path + "\"");
}

}  // namespace zsl
