// Spectral vectors and pairings: bit-exact algebraic identities, brute-force
// summation oracles, kernel/equivariance/positivity invariants, truncation
// soundness, and the exact-rational suspension of finite-base spectra.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "zsl/linalg.hpp"
#include "zsl/mellin.hpp"
#include "zsl/pairing.hpp"
#include "zsl/suspension.hpp"
#include "zsl/zerofind.hpp"

using zsl::Complex;
using zsl::PI;

namespace {

// gamma_50 = 143.11..., gamma_51 = 146.00...: t_max 144 holds exactly 50 zeros
const zsl::ZeroCatalog& riemann50() {
    static const zsl::ZeroCatalog cat = zsl::scan_zeros(zsl::riemann_line(), 144.0);
    return cat;
}

// gamma_100 = 236.52..., gamma_101 = 237.76...: t_max 237 holds exactly 100
const zsl::ZeroCatalog& riemann100() {
    static const zsl::ZeroCatalog cat = zsl::scan_zeros(zsl::riemann_line(), 237.0);
    return cat;
}

// synthetic line-located weight-2 catalog; the pairing layer is agnostic to
// where the ordinates came from
zsl::ZeroCatalog weight2_catalog(bool with_real_zero) {
    zsl::ZeroCatalog cat;
    cat.family = zsl::Family::elliptic("synthetic");
    cat.weight = 2;
    cat.center = 1.0;
    cat.t_max = 12.0;
    cat.tolerance = 1e-8;
    cat.zeros = {{2.47, 1}, {5.11, 1}, {7.89, 1}, {9.93, 1}};
    if (with_real_zero) cat.real_zeros = {{1.0, 1, true}};
    cat.certified = false;
    return cat;
}

}  // namespace

TEST_CASE("spectralize: lengths, Schwarz reflection, closed-form anchor") {
    const zsl::ZeroCatalog& cat = riemann50();
    REQUIRE(cat.zeros.size() == 50);

    zsl::TestFunction f = zsl::log_gaussian(100.0, 0.0);
    zsl::SpectralVector u = zsl::spectralize(f, cat);
    REQUIRE(u.plus.size() == 50);
    REQUIRE(u.minus.size() == 50);
    CHECK(u.zero_coeffs.empty());
    CHECK(u.has_envelope);

    // real-valued F on a line-located catalog: minus = conj(plus)
    for (std::size_t k = 0; k < u.plus.size(); ++k)
        CHECK(std::abs(u.minus[k] - std::conj(u.plus[k])) <= 1e-10 * std::abs(u.plus[k]));

    // first coefficient against the closed form at rho_1
    Complex rho(0.5, cat.zeros[0].gamma);
    Complex want = std::sqrt(PI / 100.0) * std::exp(rho * rho / 400.0);
    CHECK(std::abs(u.plus[0] - want) <= 1e-14 * std::abs(want));
}

TEST_CASE("spectralize of a smoothed image lands in the kernel coefficientwise") {
    const zsl::ZeroCatalog& cat = riemann50();
    zsl::TestFunction h = zsl::log_gaussian(100.0, 0.5);
    zsl::SpectralVector u = zsl::spectralize(zsl::smoothed_image(h), cat);
    for (std::size_t k = 0; k < u.plus.size(); ++k) {
        double scale = std::abs(zsl::mellin(h, Complex(0.5, cat.zeros[k].gamma)));
        CHECK(std::abs(u.plus[k]) <= 1e-8 * scale);
    }
}

TEST_CASE("antisymmetric pairing: exact self-annihilation and sign flip") {
    const zsl::ZeroCatalog& cat = riemann50();
    zsl::SpectralVector u = zsl::spectralize(zsl::log_gaussian(100.0, 0.0), cat);
    zsl::SpectralVector v = zsl::spectralize(zsl::log_gaussian(100.0, 0.5), cat);

    zsl::PairingValue uu = zsl::pair_antisym(u, u);
    CHECK(uu.value.real() == 0.0);
    CHECK(uu.value.imag() == 0.0);
    CHECK(uu.twist == 1);

    zsl::PairingValue uv = zsl::pair_antisym(u, v);
    zsl::PairingValue vu = zsl::pair_antisym(v, u);
    // bit-exact antisymmetry, not merely to rounding
    CHECK(uv.value.real() == -vu.value.real());
    CHECK(uv.value.imag() == -vu.value.imag());
    CHECK(std::abs(uv.value) > 1e-12);
}

TEST_CASE("antisymmetric pairing reproduces the direct two-loop oracle") {
    const zsl::ZeroCatalog& cat = riemann50();
    zsl::TestFunction f = zsl::log_gaussian(100.0, 0.0);
    zsl::TestFunction g = zsl::log_gaussian(100.0, 0.5);
    Complex got = zsl::pair_antisym(zsl::spectralize(f, cat), zsl::spectralize(g, cat)).value;

    // brute force, reversed order, straight from the Mellin closed forms
    Complex oracle(0.0, 0.0);
    for (std::size_t k = cat.zeros.size(); k-- > 0;) {
        Complex rho(0.5, cat.zeros[k].gamma);
        Complex rho_bar = Complex(1.0, 0.0) - rho;
        oracle += double(cat.zeros[k].mult) *
                  (zsl::mellin(f, rho) * zsl::mellin(g, rho_bar) -
                   zsl::mellin(g, rho) * zsl::mellin(f, rho_bar));
    }
    CHECK(std::abs(got - oracle) <= 1e-13 * std::abs(oracle));
}

TEST_CASE("symmetric pairing: exact symmetry, doubling identity, hypothesis flag") {
    zsl::ZeroCatalog clean = weight2_catalog(false);
    zsl::TestFunction f = zsl::log_gaussian(50.0, 0.2);
    zsl::TestFunction g = zsl::log_gaussian(80.0, -0.3);
    zsl::SpectralVector u = zsl::spectralize(f, clean);
    zsl::SpectralVector v = zsl::spectralize(g, clean);

    zsl::PairingValue uv = zsl::pair_sym(u, v);
    zsl::PairingValue vu = zsl::pair_sym(v, u);
    CHECK(uv.value.real() == vu.value.real());
    CHECK(uv.value.imag() == vu.value.imag());
    CHECK(uv.twist == 2);
    CHECK(uv.flags.empty());

    // pair_sym(u, u) = 2 sum u.plus u.minus, bit-exact (powers of two scale
    // commutes with rounding)
    Complex half(0.0, 0.0);
    for (std::size_t k = 0; k < u.plus.size(); ++k) half += u.plus[k] * u.minus[k];
    Complex doubled = 2.0 * half;
    zsl::PairingValue uu = zsl::pair_sym(u, u);
    CHECK(uu.value.real() == doubled.real());
    CHECK(uu.value.imag() == doubled.imag());

    // a real zero on the catalog raises the hypothesis flag
    zsl::ZeroCatalog flagged = weight2_catalog(true);
    zsl::SpectralVector uf = zsl::spectralize(f, flagged);
    zsl::SpectralVector vf = zsl::spectralize(g, flagged);
    zsl::PairingValue pf = zsl::pair_sym(uf, vf);
    REQUIRE(pf.flags.size() == 1);
    CHECK(pf.flags[0] == "theorem3_hypothesis_violated");

    // weight mismatches are errors
    CHECK_THROWS_AS(zsl::pair_sym(zsl::spectralize(f, riemann50()),
                                  zsl::spectralize(g, riemann50())),
                    std::invalid_argument);
    CHECK_THROWS_AS(zsl::pair_antisym(u, v), std::invalid_argument);
    // catalog mismatch too
    CHECK_THROWS_AS(zsl::pair_sym(u, vf), std::invalid_argument);
}

TEST_CASE("hermitian form: positivity, bit-exact conjugate symmetry, kernel") {
    const zsl::ZeroCatalog& cat = riemann50();
    zsl::SpectralVector u = zsl::spectralize(zsl::log_gaussian(100.0, 0.0), cat);
    zsl::SpectralVector v =
        zsl::spectralize(zsl::log_gaussian(100.0, 0.5, Complex(1.0, -2.0)), cat);

    Complex uu = zsl::hermitian_form(u, u);
    CHECK(uu.imag() == 0.0);
    CHECK(uu.real() > 0.0);

    Complex uv = zsl::hermitian_form(u, v);
    Complex vu = zsl::hermitian_form(v, u);
    CHECK(uv.real() == vu.real());
    CHECK(uv.imag() == -vu.imag());

    zsl::SpectralVector ker =
        zsl::spectralize(zsl::smoothed_image(zsl::log_gaussian(100.0, 0.5)), cat);
    double scale = zsl::coefficient_norm(zsl::spectralize(zsl::log_gaussian(100.0, 0.5), cat)) *
                   zsl::coefficient_norm(v);
    CHECK(std::abs(zsl::hermitian_form(ker, v)) <= 1e-8 * scale);
}

TEST_CASE("kernel invariant: smoothed images pair to zero against the default family") {
    const zsl::ZeroCatalog& cat = riemann50();
    std::vector<zsl::TestFunction> fam = zsl::default_family();
    std::vector<zsl::SpectralVector> vecs;
    for (const auto& f : fam) vecs.push_back(zsl::spectralize(f, cat));
    for (const auto& h : fam) {
        zsl::SpectralVector ker = zsl::spectralize(zsl::smoothed_image(h), cat);
        double hnorm = zsl::coefficient_norm(zsl::spectralize(h, cat));
        for (const auto& v : vecs) {
            double scale = hnorm * zsl::coefficient_norm(v);
            CHECK(std::abs(zsl::pair_antisym(ker, v).value) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("equivariance: psi(lambda F, lambda G) = lambda^w psi(F, G)") {
    const zsl::ZeroCatalog& cat1 = riemann50();
    zsl::ZeroCatalog cat2 = weight2_catalog(false);
    zsl::TestFunction f = zsl::log_gaussian(100.0, 0.0);
    zsl::TestFunction g = zsl::log_gaussian(100.0, 0.5);

    CHECK(zsl::equivariance_check(f, g, 1.0, 1, cat1) == 0.0);
    for (double lambda : {1.0 / 3.0, 2.0, std::exp(1.0)}) {
        CHECK(zsl::equivariance_check(f, g, lambda, 1, cat1) <= 1e-9);
        CHECK(zsl::equivariance_check(f, g, lambda, 2, cat2) <= 1e-9);
    }
    CHECK_THROWS_AS(zsl::equivariance_check(f, g, 2.0, 2, cat1), std::invalid_argument);
    CHECK_THROWS_AS(zsl::equivariance_check(f, g, -1.0, 1, cat1), std::invalid_argument);
}

TEST_CASE("functional-equation trace identity residual") {
    const zsl::ZeroCatalog& cat = riemann50();
    zsl::SpectralVector u = zsl::spectralize(zsl::log_gaussian(100.0, 0.0), cat);
    zsl::SpectralVector v = zsl::spectralize(zsl::log_gaussian(100.0, 0.5), cat);
    double scale = zsl::coefficient_norm(u) * zsl::coefficient_norm(v);

    CHECK(zsl::funceq_identity_residual(u, v) <= 1e-10 * scale);

    // independent accumulation orders keep u = v at rounding level, not an
    // exact zero; the chosen definition trades the exact-zero corner for a
    // genuinely independent second code path
    CHECK(zsl::funceq_identity_residual(u, u) <=
          1e-14 * zsl::coefficient_norm(u) * zsl::coefficient_norm(u));

    zsl::SpectralVector cu =
        zsl::spectralize(zsl::log_gaussian(100.0, 0.0, Complex(2.0, 3.0)), cat);
    zsl::SpectralVector cv =
        zsl::spectralize(zsl::log_gaussian(100.0, 0.4, Complex(1.0, -1.0)), cat);
    double cscale = zsl::coefficient_norm(cu) * zsl::coefficient_norm(cv);
    CHECK(zsl::funceq_identity_residual(cu, cv) <= 1e-10 * cscale);
}

TEST_CASE("truncation soundness: doubling the catalog moves psi below the bound") {
    const zsl::ZeroCatalog& cat50 = riemann50();
    const zsl::ZeroCatalog& cat100 = riemann100();
    REQUIRE(cat100.zeros.size() == 100);

    zsl::TestFunction f = zsl::log_gaussian(100.0, 0.0);
    zsl::TestFunction g = zsl::log_gaussian(100.0, 0.5);
    zsl::PairingValue p50 = zsl::pair_antisym(zsl::spectralize(f, cat50),
                                              zsl::spectralize(g, cat50));
    zsl::PairingValue p100 = zsl::pair_antisym(zsl::spectralize(f, cat100),
                                               zsl::spectralize(g, cat100));

    double diff = std::abs(p100.value - p50.value);
    CHECK(diff <= 1e-12 * std::abs(p50.value));
    // the analytic tail bound of the 50-zero catalog certifies the change
    CHECK(p50.truncation_bound >= 0.0);
    CHECK(diff <= p50.truncation_bound + 1e-300);
    CHECK(p50.truncation_bound <= 1e-12 * std::abs(p50.value));
    CHECK(p50.flags.empty());

    // hand-built vectors without envelopes get flagged, not silently certified
    zsl::SpectralVector raw_u, raw_v;
    raw_u.catalog = std::make_shared<const zsl::ZeroCatalog>(cat50);
    raw_v.catalog = raw_u.catalog;
    raw_u.plus.assign(50, Complex(1.0, 0.0));
    raw_u.minus.assign(50, Complex(1.0, 0.0));
    raw_v.plus.assign(50, Complex(0.0, 1.0));
    raw_v.minus.assign(50, Complex(0.0, -1.0));
    zsl::PairingValue praw = zsl::pair_antisym(raw_u, raw_v);
    REQUIRE(praw.flags.size() == 1);
    CHECK(praw.flags[0] == "truncation_bound_unavailable");
}

TEST_CASE("gram matrices: positivity, oracle entries, ranks") {
    const zsl::ZeroCatalog& cat = riemann100();
    std::vector<zsl::TestFunction> fam = zsl::default_family();

    zsl::ComplexMatrix gh = zsl::gram_matrix(fam, zsl::FormTag::hermitian, cat);
    auto [lo, hi] = zsl::psd_check(gh);
    CHECK(lo > 0.0);
    CHECK(hi >= lo);

    // one entry against a from-scratch summation oracle
    Complex oracle(0.0, 0.0);
    for (const zsl::ZeroEntry& z : cat.zeros) {
        Complex rho(0.5, z.gamma);
        Complex rho_bar = Complex(1.0, 0.0) - rho;
        oracle += double(z.mult) *
                  (zsl::mellin(fam[1], rho) * std::conj(zsl::mellin(fam[3], rho)) +
                   std::conj(zsl::mellin(fam[3], rho_bar)) * zsl::mellin(fam[1], rho_bar));
    }
    CHECK(std::abs(gh[1][3] - oracle) <= 1e-13 * std::abs(oracle));

    // antisymmetric Gram: zero diagonal exactly
    zsl::ComplexMatrix ga = zsl::gram_matrix(fam, zsl::FormTag::antisym, cat);
    for (std::size_t i = 0; i < ga.size(); ++i) {
        CHECK(ga[i][i].real() == 0.0);
        CHECK(ga[i][i].imag() == 0.0);
    }

    // {F_i, J_1 F_i} spans a rank-10 antisymmetric form
    std::vector<zsl::TestFunction> doubled = fam;
    for (const auto& f : fam) doubled.push_back(zsl::apply_J(f, 1.0));
    zsl::ComplexMatrix g10 = zsl::gram_matrix(doubled, zsl::FormTag::antisym, cat);
    CHECK(zsl::numeric_rank(g10, 1e-9) == 10);

    // duplicating a function collapses the rank
    std::vector<zsl::TestFunction> degen = {fam[0], fam[1], fam[0]};
    zsl::ComplexMatrix gd = zsl::gram_matrix(degen, zsl::FormTag::antisym, cat);
    CHECK(zsl::numeric_rank(gd, 1e-9) == 2);

    CHECK_THROWS_AS(zsl::gram_matrix({}, zsl::FormTag::hermitian, cat), std::invalid_argument);
}

TEST_CASE("jacobi eigenvalues, psd_check, singular values on known matrices") {
    zsl::RealMatrix sym = {{4.0, 1.0}, {1.0, 4.0}};
    std::vector<double> eig = zsl::jacobi_eigenvalues(sym);
    CHECK(std::abs(eig[0] - 3.0) < 1e-12);
    CHECK(std::abs(eig[1] - 5.0) < 1e-12);

    zsl::ComplexMatrix herm = {{Complex(2.0, 0.0), Complex(0.0, 1.0)},
                               {Complex(0.0, -1.0), Complex(2.0, 0.0)}};
    auto [lo, hi] = zsl::psd_check(herm);
    CHECK(std::abs(lo - 1.0) < 1e-12);
    CHECK(std::abs(hi - 3.0) < 1e-12);

    zsl::ComplexMatrix nil = {{Complex(0.0, 0.0), Complex(1.0, 0.0)},
                              {Complex(0.0, 0.0), Complex(0.0, 0.0)}};
    CHECK_THROWS_AS(zsl::psd_check(nil), std::invalid_argument);
    std::vector<double> sv = zsl::singular_values(nil);
    CHECK(std::abs(sv[0] - 1.0) < 1e-12);
    CHECK(std::abs(sv[1]) < 1e-12);

    zsl::ComplexMatrix nearly = {{Complex(1.0, 0.0), Complex(0.0, 0.0)},
                                 {Complex(0.0, 0.0), Complex(1e-12, 0.0)}};
    CHECK(zsl::numeric_rank(nearly, 1e-9) == 1);
    CHECK(zsl::numeric_rank(nearly, 1e-13) == 2);
}

TEST_CASE("suspension: fundamental-strip placement with exact coordinates") {
    // alpha = 1 is the trivial suspension L
    zsl::SuspendedSpectrum triv = zsl::suspend(9, {{Complex(1.0, 0.0), 1}});
    CHECK(triv.entries[0].s0 == Complex(0.0, 0.0));
    CHECK(triv.entries[0].exact);
    CHECK(triv.entries[0].sigma == zsl::Rational(0, 1));
    CHECK(std::abs(triv.period - 2.0 * PI / std::log(9.0)) < 1e-15);

    // alpha = q is the suspended C(1)
    zsl::SuspendedSpectrum one = zsl::suspend(9, {{Complex(9.0, 0.0), 1}});
    CHECK(one.entries[0].s0 == Complex(1.0, 0.0));
    CHECK(one.entries[0].sigma == zsl::Rational(1, 1));

    // alpha = -2 over q = 4: s0 = 1/2 + i pi / log 4, not a real zero
    zsl::SuspendedSpectrum half = zsl::suspend(4, {{Complex(-2.0, 0.0), 1}});
    const zsl::SuspendedEntry& e = half.entries[0];
    REQUIRE(e.exact);
    CHECK(e.sigma == zsl::Rational(1, 2));
    CHECK(e.tau == zsl::Rational(1, 2));
    CHECK(std::abs(e.s0 - Complex(0.5, PI / std::log(4.0))) < 1e-15);
    CHECK(e.s0.imag() != 0.0);

    // alpha = +2 over q = 4 is the real zero s0 = 1/2
    zsl::SuspendedSpectrum re = zsl::suspend(4, {{Complex(2.0, 0.0), 1}});
    CHECK(re.entries[0].sigma == zsl::Rational(1, 2));
    CHECK(re.entries[0].tau == zsl::Rational(0, 1));
    CHECK(re.entries[0].s0 == Complex(0.5, 0.0));

    // purely imaginary Gaussian integer: quarter-turn tau
    zsl::SuspendedSpectrum im = zsl::suspend(4, {{Complex(0.0, 2.0), 1}});
    CHECK(im.entries[0].sigma == zsl::Rational(1, 2));
    CHECK(im.entries[0].tau == zsl::Rational(1, 4));

    CHECK_THROWS_AS(zsl::suspend(4, {{Complex(0.0, 0.0), 1}}), std::invalid_argument);
    CHECK_THROWS_AS(zsl::suspend(6, {{Complex(2.0, 0.0), 1}}), std::invalid_argument);
    CHECK_THROWS_AS(zsl::suspend(1, {{Complex(2.0, 0.0), 1}}), std::invalid_argument);
    CHECK_THROWS_AS(zsl::suspend(4, {{Complex(2.0, 0.0), 0}}), std::invalid_argument);
}

TEST_CASE("suspension twist: action by q^m and the exact q^m pairing twist") {
    zsl::SuspendedSpectrum s =
        zsl::suspend(4, {{Complex(-2.0, 0.0), 1}, {Complex(2.0, 0.0), 1}, {Complex(0.0, 2.0), 1}});
    for (long m : {1L, 2L, 3L, -1L}) {
        zsl::TwistVerdict v = zsl::suspension_twist_check(s, m);
        CHECK(v.eigen_action_ok);
        CHECK(v.pairing_twist_exact);
        CHECK(v.worst_eigen_dev <= 1e-12);
    }

    // non-Gaussian-integer eigenvalue exercises the numeric fallback
    zsl::SuspendedSpectrum loose = zsl::suspend(5, {{Complex(1.0, 2.0), 1}});
    CHECK_FALSE(loose.entries[0].exact);
    zsl::TwistVerdict v = zsl::suspension_twist_check(loose, 2);
    CHECK(v.eigen_action_ok);
    CHECK(v.pairing_twist_exact);  // numeric path within 1e-9
    CHECK(v.worst_twist_dev <= 1e-12);

    CHECK_THROWS_AS(zsl::suspension_twist_check(zsl::archimedean_spectrum({{Complex(0.5, 14.1), 1}}), 1),
                    std::invalid_argument);
}

TEST_CASE("suspension functoriality: base change commutes with strip reduction") {
    // alpha = -2 over q = 4, extend by r = 2: alpha^2 = 4 over q^2 = 16
    zsl::SuspendedSpectrum base = zsl::suspend(4, {{Complex(-2.0, 0.0), 1}});
    zsl::SuspendedSpectrum ext = zsl::suspend(16, {{Complex(4.0, 0.0), 1}});
    Complex reduced = zsl::reduce_to_strip(base.entries[0].s0, ext.period);
    CHECK(std::abs(reduced - ext.entries[0].s0) < 1e-12);

    // alpha = 1 + i over q = 2, r = 2 and r = 3
    zsl::SuspendedSpectrum b2 = zsl::suspend(2, {{Complex(1.0, 1.0), 1}});
    REQUIRE(b2.entries[0].exact);
    CHECK(b2.entries[0].sigma == zsl::Rational(1, 2));
    CHECK(b2.entries[0].tau == zsl::Rational(1, 8));
    zsl::SuspendedSpectrum e2 = zsl::suspend(4, {{Complex(1.0, 1.0) * Complex(1.0, 1.0), 1}});
    CHECK(std::abs(zsl::reduce_to_strip(b2.entries[0].s0, e2.period) - e2.entries[0].s0) < 1e-12);
    Complex a3 = Complex(1.0, 1.0) * Complex(1.0, 1.0) * Complex(1.0, 1.0);
    zsl::SuspendedSpectrum e3 = zsl::suspend(8, {{a3, 1}});
    CHECK(std::abs(zsl::reduce_to_strip(b2.entries[0].s0, e3.period) - e3.entries[0].s0) < 1e-12);

    // archimedean: the suspension is the identity with period 0
    zsl::SuspendedSpectrum arch = zsl::archimedean_spectrum({{Complex(0.5, 14.134725), 1}});
    CHECK(arch.archimedean);
    CHECK(arch.period == 0.0);
    CHECK(arch.entries[0].s0 == Complex(0.5, 14.134725));
    CHECK(zsl::reduce_to_strip(arch.entries[0].s0, arch.period) == arch.entries[0].s0);
}
