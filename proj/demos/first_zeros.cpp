// Scan the critical line up to height 50, print each ordinate next to the
// counting-function prediction theta(t)/pi + 1, and confirm the bracket
// count is complete.
//
//   ./demos/first_zeros

#include <cstdio>

#include "zsl/specfun.hpp"
#include "zsl/zerofind.hpp"

int main() {
    zsl::ZeroCatalog cat = zsl::scan_zeros(zsl::riemann_line(), 50.0);
    std::printf("%-4s %-16s %-10s\n", "k", "gamma_k", "theta/pi+1");
    for (std::size_t k = 0; k < cat.zeros.size(); ++k) {
        double g = cat.zeros[k].gamma;
        std::printf("%-4zu %-16.10f %-10.4f\n", k + 1, g, zsl::hardy_theta(g) / zsl::PI + 1.0);
    }
    zsl::CompletenessReport rep = zsl::completeness_check(cat);
    std::printf("\n%zu zeros below 50; completeness slack %.4f (%s)\n", cat.zeros.size(),
                rep.slack, rep.passed ? "complete" : "INCOMPLETE");
    return rep.passed ? 0 : 1;
}
