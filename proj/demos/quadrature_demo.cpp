// Gauss rule for the Lebesgue measure on [-1,1]: nodes, weights, and the
// exactness ledger through degree 2n-1.

#include "apolar/apolar.hpp"

#include <cstdio>

int main() {
    using namespace apolar;
    const std::uint32_t n = 4;
    auto M = MomentFunctional::builtin("uniform_pm1", 2 * n + 2);
    const auto report = sylvester_decompose(M, n);
    std::printf("%u-point rule for the flat measure on [-1,1]\n", n);
    for (std::uint32_t i = 0; i < n; ++i)
        std::printf("  node %+.17g   weight %.17g\n", report.rule.nodes[i], report.rule.weights[i]);
    for (std::uint32_t k = 0; k < 2 * n; ++k)
        std::printf("  |sum c z^%u - a_%u| = %.3g\n", k, k, report.residuals[k]);
    std::printf("max residual %.3g\n", report.max_residual);

    // the same functional drives discriminant moments
    const auto dm = discriminant_moment(M, 2, 1, n);
    std::printf("expected squared spacing of two draws: exact %s, via roots %.17g\n",
                rational_to_string(dm.exact).c_str(), dm.quadrature);
    return 0;
}
