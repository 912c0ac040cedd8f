#pragma once

// Shared moment-table fixtures. Auxiliary classes rotate through tables
// distinct from class 1 (and from each other) so the determinants do not
// degenerate by repeated rows; a unit-interval table extends the builtin pool
// when more than three auxiliaries are needed.

#include "apolar/moments.hpp"

#include <random>
#include <string>
#include <vector>

namespace apolar::fixtures {

inline std::vector<Rational> unit_interval_moments(std::uint32_t up_to) {
    std::vector<Rational> a;
    for (std::uint32_t k = 0; k <= up_to; ++k) a.emplace_back(1, k + 1);
    return a;
}

inline std::vector<std::vector<Rational>> aux_pool(const std::string& class1, std::uint32_t up_to) {
    std::vector<std::vector<Rational>> pool;
    for (const char* name : {"laguerre", "chebyshev1", "uniform_pm1", "hermite"})
        if (class1 != name) pool.push_back(builtin_moments({name, {}}, up_to));
    pool.push_back(unit_interval_moments(up_to));
    return pool;
}

// Class 1 = the named builtin table; classes 2..m get pairwise distinct
// auxiliary tables. Moments reach well past the 2n-m the determinant needs so
// that orthogonality scans can run beyond order n.
inline MomentFunctional gops_fixture(const std::string& class1, std::uint32_t n, std::uint32_t m) {
    const std::uint32_t up_to = 2 * n + 4;
    MomentFunctional M(0);
    M.set_class_moments(1, builtin_moments({class1, {}}, up_to));
    const auto pool = aux_pool(class1, up_to);
    for (std::uint32_t cls = 2; cls <= m; ++cls) M.set_class_moments(cls, pool[(cls - 2) % pool.size()]);
    return M;
}

// Deterministic random moment tables (nonzero order-0 class-1 moment).
inline MomentFunctional random_moment_fixture(std::uint32_t n, std::uint32_t m,
                                              std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    const std::uint32_t up_to = 2 * n + 4;
    MomentFunctional M(0);
    for (std::uint32_t cls = 1; cls <= m; ++cls) {
        std::vector<Rational> a;
        for (std::uint32_t k = 0; k <= up_to; ++k) a.emplace_back(num(gen), den(gen));
        if (cls == 1 && a[0] == 0) a[0] = Rational(1);
        M.set_class_moments(cls, a);
    }
    return M;
}

}  // namespace apolar::fixtures
