// Builds the first few orthogonal polynomials of the unit Gaussian moment
// table by both routes and prints them with their orthogonality reports.

#include "apolar/apolar.hpp"

#include <iostream>

int main() {
    using namespace apolar;
    auto M = MomentFunctional::builtin("hermite", 20);
    std::vector<GopsEntry> prior;
    for (std::uint32_t n = 1; n <= 5; ++n) {
        GopsEntry det_path = gops_det(M, n, 1);
        GopsEntry sym_path = gops_symbolic(M, n, 1);
        const auto report = check_orthogonality(M, det_path, prior);
        std::cout << "p_" << n << "  det: " << det_path.poly.to_string()
                  << "   sym/" << factorial(n).str() << ": "
                  << (sym_path.poly / Rational(factorial(n))).to_string()
                  << "   orthogonal: " << (report.all_zero ? "yes" : "NO") << "\n";
        prior.push_back(det_path);
    }
    std::cout << "\nraw determinant table:\n" << emit_table_csv(prior);
    return 0;
}
