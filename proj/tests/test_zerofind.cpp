#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "zsl/zerofind.hpp"

using zsl::Complex;

namespace {

// Independent oracle for the first ordinate: plain midpoint bisection on
// hardy_Z over a hand-picked sign-changing interval, no secant stage.
double first_zero_oracle() {
    double lo = 14.0, hi = 14.2;
    double flo = zsl::hardy_Z(lo);
    REQUIRE(flo * zsl::hardy_Z(hi) < 0.0);
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = zsl::hardy_Z(mid);
        if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; }
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

const zsl::ZeroCatalog& riemann100() {
    static zsl::ZeroCatalog cat = zsl::scan_zeros(zsl::riemann_line(), 100.0);
    return cat;
}

}  // namespace

TEST_CASE("first ordinate matches the bisection oracle") {
    double oracle = first_zero_oracle();
    CHECK(std::abs(oracle - 14.134725) <= 1e-6);
    auto cat = zsl::scan_zeros(zsl::riemann_line(), 16.0);
    REQUIRE(cat.zeros.size() == 1);
    CHECK(std::abs(cat.zeros[0].gamma - oracle) <= 1e-9);
    CHECK(cat.zeros[0].mult == 1);
    CHECK(cat.center == 0.5);
    CHECK(cat.weight == 1);
}

TEST_CASE("empty catalog below the first zero") {
    auto cat = zsl::scan_zeros(zsl::riemann_line(), 14.0);
    CHECK(cat.zeros.empty());
    CHECK(cat.real_zeros.empty());
}

TEST_CASE("29 zeros below 100 and density completeness") {
    const auto& cat = riemann100();
    CHECK(cat.zeros.size() == 29);
    for (std::size_t i = 1; i < cat.zeros.size(); ++i)
        CHECK(cat.zeros[i - 1].gamma < cat.zeros[i].gamma);
    for (const auto& z : cat.zeros)
        CHECK(std::abs(zsl::completed_L_Q(Complex(0.5, z.gamma))) <= cat.tolerance);
    auto rep = zsl::completeness_check(cat);
    CHECK(rep.passed);
    CHECK(rep.slack <= 1.0);
}

TEST_CASE("deleting a zero breaks completeness and flags the gap") {
    auto cat = riemann100();
    double removed = cat.zeros[9].gamma;
    cat.zeros.erase(cat.zeros.begin() + 9);
    auto rep = zsl::completeness_check(cat);
    CHECK_FALSE(rep.passed);
    CHECK(rep.slack > 1.0);
    // the deficit shows up at the gap; the oscillating count term may push the
    // first over-unit deviation a few ordinates past it, never before it
    CHECK(rep.bad_hi >= removed);
    CHECK(rep.bad_lo < rep.bad_hi);
}

TEST_CASE("scan is idempotent bit-for-bit") {
    auto a = zsl::scan_zeros(zsl::riemann_line(), 50.0);
    auto b = zsl::scan_zeros(zsl::riemann_line(), 50.0);
    CHECK(a == b);
}

TEST_CASE("density slack stays within 1 up to T = 200") {
    auto cat = zsl::scan_zeros(zsl::riemann_line(), 200.0);
    auto rep = zsl::completeness_check(cat);
    CHECK(rep.passed);
    CHECK(std::abs(double(cat.zeros.size()) - (zsl::hardy_theta(200.0) / zsl::PI + 1.0)) <= 1.0);
}

TEST_CASE("bisection widths strictly halve until secant takeover") {
    zsl::RefineTrace trace;
    auto f = [](double t) { return zsl::hardy_Z(t); };
    double root = zsl::refine_bracket(f, 14.0, 14.2, 1e-10, &trace);
    CHECK(std::abs(root - first_zero_oracle()) <= 1e-9);
    REQUIRE(trace.bisection_widths.size() >= 2);
    for (std::size_t i = 1; i < trace.bisection_widths.size(); ++i)
        CHECK(trace.bisection_widths[i] == Catch::Approx(0.5 * trace.bisection_widths[i - 1]));
    CHECK(trace.iterations <= 200);
}

TEST_CASE("refinement rejects a bracket without sign change") {
    auto f = [](double t) { return zsl::hardy_Z(t); };
    CHECK_THROWS_AS(zsl::refine_bracket(f, 2.0, 3.0, 1e-10), std::invalid_argument);
}

TEST_CASE("scan parameter validation") {
    CHECK_THROWS_AS(zsl::scan_zeros(zsl::riemann_line(), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(zsl::scan_zeros(zsl::riemann_line(), 10.0, 0.2), std::invalid_argument);
}

TEST_CASE("no real zeros of the completed zeta inside (0, 1)") {
    auto rz = zsl::detect_real_zeros(zsl::riemann_line(), 0.05, 0.95);
    CHECK(rz.empty());
}

TEST_CASE("completeness rejects non-riemann catalogs") {
    zsl::ZeroCatalog cat;
    cat.family = zsl::Family::elliptic("11a1");
    CHECK_THROWS_AS(zsl::completeness_check(cat), std::invalid_argument);
}
