// The exact analogue: count points on y^2 + y = x^3 over F_2, produce the
// zeta numerator by Newton identities, factor out the Frobenius
// eigenvalues, build the duality pairing (antisymmetric, Frobenius twists it
// by exactly q), and suspend the spectrum to the fundamental strip.
//
//   ./demos/function_field_duality

#include <cstdio>

#include "zsl/ffield.hpp"
#include "zsl/suspension.hpp"

int main() {
    zsl::CurveOverFq curve = zsl::CurveOverFq::elliptic(2, 0, 0, 1, 0, 0);
    long n1 = zsl::count_points(curve, 1);
    zsl::ZetaPolynomial zp = zsl::zeta_numerator({n1}, 1, 2);
    std::printf("y^2 + y = x^3 over F_2: N_1 = %ld, P(T) = %lld %+lld T %+lld T^2\n", n1,
                zp.coeffs[0], zp.coeffs[1], zp.coeffs[2]);

    zsl::FrobeniusSpectrum spec = zsl::frobenius_eigenvalues(zp);
    for (const zsl::FrobeniusEigenvalue& ev : spec.eigenvalues)
        std::printf("  eigenvalue %+.6f %+.6f i  (mult %ld, %s)\n", ev.value.real(),
                    ev.value.imag(), ev.mult, ev.exact ? "exact" : "numeric");

    zsl::PoincarePairing pp = zsl::poincare_pairing_matrix(spec);
    std::printf("pairing form [[%g, %g], [%g, %g]], Frobenius twists by %ld (%s)\n",
                pp.form[0][0], pp.form[0][1], pp.form[1][0], pp.form[1][1],
                pp.equivariance_factor, pp.equivariance_exact ? "exact" : "numeric");

    // base change to F_4 agrees with recounting over the extension
    zsl::ZetaPolynomial z4 = zsl::base_change(zp, 2);
    std::printf("base change to F_4: P(T) = %lld %+lld T %+lld T^2\n", z4.coeffs[0], z4.coeffs[1],
                z4.coeffs[2]);

    // suspension: each eigenvalue alpha lands at s0 = log_q(alpha) in the strip
    std::vector<std::pair<zsl::Complex, long>> eigen;
    for (const zsl::FrobeniusEigenvalue& ev : spec.eigenvalues)
        eigen.push_back({ev.value, ev.mult});
    zsl::SuspendedSpectrum sus = zsl::suspend(2, eigen);
    for (const zsl::SuspendedEntry& e : sus.entries)
        std::printf("suspended: s0 = %.6f + %.6f i%s\n", e.s0.real(), e.s0.imag(),
                    e.exact ? "  (sigma, tau exact rationals)" : "");
    return 0;
}
