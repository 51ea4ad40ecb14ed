#pragma once

// Sheaf cohomology of twists of a LineBundleComplex through the total complex
// of (tensor product of the per-factor standard Cech complexes) (x) C.
//
// In a fixed multidegree the Cech cochains are spanned by Laurent monomials,
// infinitely many because exponents on inverted variables are unbounded below.
// Exponents are truncated at -depth_j on factor j; the truncated cochains form a
// subcomplex, and for depth_j >= -(a_j + b_j) - n_j over all summands O(b) the
// quotient is a sum of acyclic fine-degree pieces. Every value is recomputed at
// depth + 1 and a disagreement raises TruncationError.

#include <cstdint>
#include <optional>
#include <vector>

#include "tatesplit/bott.hpp"
#include "tatesplit/coxring.hpp"
#include "tatesplit/exec.hpp"
#include "tatesplit/field.hpp"
#include "tatesplit/table.hpp"

namespace tatesplit {

/// One nonempty subset S_j of {0..n_j} per factor, stored as bitmasks.
struct CoverIndex {
    std::vector<std::uint32_t> sets;

    /// p = sum_j (|S_j| - 1)
    int cech_degree() const;
};

/// Laurent monomials of multidegree a + b whose exponent on x_{j,i} is >= 0 unless
/// i is in S_j, where it is >= -depth[j]. Lexicographic in the flat exponent vector.
std::vector<ExponentVector> cech_basis(const ProductSpace& space, const MultiDegree& b, const CoverIndex& idx,
                                       const MultiDegree& a, const std::vector<int>& depth);

/// Smallest certified truncation depth per factor for the given summand twists at a.
std::vector<int> truncation_depth(const ProductSpace& space, const std::vector<MultiDegree>& twists,
                                  const MultiDegree& a);

struct CechOptions {
    FieldSpec field{};
    /// Recompute every rank modulo this prime too; disagreement raises PrimeMismatchError.
    std::optional<std::uint64_t> cross_check_prime;
    /// Added to the certified truncation depth; negative values probe below the bound
    /// (diagnostics only, expect TruncationError).
    int extra_depth = 0;
    bool stability_check = true;
    Exec exec = Exec::parallel;
};

/// Cohomology of the Cech complex of O(b) twisted by a; equals h^i(O(a + b)).
CohomologyVector cech_line_bundle_h(const ProductSpace& space, const MultiDegree& b, const MultiDegree& a,
                                    const CechOptions& opts = {});

/// h^i(F(a)), 0 <= i <= m, for F the degree-0 cohomology sheaf of c.
/// Throws InputError if the total complex has cohomology outside [0, m]
/// (the complex is then not a resolution of a sheaf).
CohomologyVector hypercohomology(const LineBundleComplex& c, const MultiDegree& a, const CechOptions& opts = {});

/// Hypercohomology over every twist of the window, all cells computed.
/// Exec::parallel distributes twists over OpenMP threads.
CohomologyTable cohomology_table(const LineBundleComplex& c, const Window& window, const CechOptions& opts = {});

}  // namespace tatesplit
