#pragma once

#include <cstdint>
#include <vector>

#include "tatesplit/lattice.hpp"

namespace tatesplit {

/// h^0..h^m of a sheaf at one twist.
using CohomologyVector = std::vector<std::int64_t>;

/// C(n, k) for 0 <= k <= n, zero otherwise.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// Polynomial extension x(x-1)...(x-k+1)/k!, defined for every integer x.
std::int64_t binomial_poly(std::int64_t x, std::int64_t k);

/// Cohomology of O(a) on P^n: h^0 = C(a+n, n) for a >= 0, h^n = C(-a-1, n) for a <= -n-1.
CohomologyVector factor_h(int n, int a);

/// Kunneth product of factor_h over the factors.
CohomologyVector line_bundle_h(const ProductSpace& space, const MultiDegree& a);

/// chi(O(a)) = prod_j C(a_j + n_j, n_j) as a polynomial in a.
std::int64_t euler_characteristic(const ProductSpace& space, const MultiDegree& a);

struct Signature {
    bool zero = true;
    int index = 0;                        // the unique i with h^i != 0
    std::vector<std::size_t> factors;     // S = {j : a_j <= -n_j - 1}

    bool intermediate(int m) const { return !zero && index > 0 && index < m; }
};

Signature signature(const ProductSpace& space, const MultiDegree& a);

/// Full cohomology of a sum of line bundles, sum of line_bundle_h(a + b).
CohomologyVector sum_line_bundles_h(const ProductSpace& space, const std::vector<MultiDegree>& twists,
                                    const MultiDegree& a);

}  // namespace tatesplit

namespace tatesplit {

/// Twists a of the window where O(a) has some nonzero cohomology, or, with
/// intermediate_only, some nonzero h^i with 0 < i < m.
std::vector<MultiDegree> nonvanishing_region(const ProductSpace& space, const Window& window, bool intermediate_only);

}  // namespace tatesplit
