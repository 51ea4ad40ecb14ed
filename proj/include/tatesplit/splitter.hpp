#pragma once

// Splitting criterion for sheaves on products of projective spaces polarized
// by O(H) = O(d_1,...,d_t): F is a sum of twists O(kH) exactly when F(a) has no
// intermediate cohomology at every twist a for which no O(kH)(a) has any.
// On a finite window the decision is NonSplit (witness found), Split (multiset
// recovered and verified cell by cell) or Inconclusive.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tatesplit/cech.hpp"
#include "tatesplit/table.hpp"

namespace tatesplit {

/// O(kH) with multiplicity mult.
struct Summand {
    int k;
    std::int64_t mult;
    bool operator==(const Summand&) const = default;
};
/// Sorted by k descending.
using Multiset = std::vector<Summand>;

std::vector<MultiDegree> multiset_twists(const Multiset& ms, const Polarization& d);
std::string multiset_str(const Multiset& ms);

struct CellRef {
    MultiDegree a;
    int i;
    bool operator==(const CellRef&) const = default;
};

/// Safe twists of the window with a known nonzero h^i, 0 < i < m; lexicographic, lowest i first.
std::vector<CellRef> hypothesis_violations(const CohomologyTable& t, const Polarization& d);

/// h^m(a) != 0 but h^m(c) = 0 for some known c <= a.
struct MonotonicityViolation {
    MultiDegree nonzero, zero;
};

std::optional<MonotonicityViolation> hm_monotonicity_check(const CohomologyTable& t);

struct ExtremalReport {
    /// Maximal elements of the known h^m != 0 locus, lexicographic.
    std::vector<MultiDegree> positions;
    /// k with position = k d - n - 1, when some position has that form.
    std::optional<int> of_theorem_form;
    /// Every position has all a + e_j inside the window with h^m known zero.
    bool certified = false;
    /// Positions failing certification.
    std::vector<MultiDegree> uncertified;
};

ExtremalReport extremal_hm(const CohomologyTable& t, const Polarization& d);

struct MultiplicityResult {
    std::optional<Multiset> multiset;
    std::string reason;  // set when multiset is empty
};

/// h^0 descent: k_max = max{k : h^0(F(-kH)) != 0}, then for k = k_max down to k_lowest
/// mult(k) = h^0(F(-kH)) - sum_{k' > k} mult(k') h^0(O((k'-k)H)).
/// Without k_lowest the descent stops at the last k with -kH in the window.
MultiplicityResult multiplicities(const CohomologyTable& t, const Polarization& d,
                                  std::optional<int> k_lowest = std::nullopt);

struct CellMismatch {
    MultiDegree a;
    int i;
    std::int64_t expected, actual;
};

/// First known window cell (lexicographic, lowest i) differing from the table of the sum.
std::optional<CellMismatch> verify_split(const CohomologyTable& t, const Multiset& ms, const Polarization& d);

/// h^0(F(kd)) and h^m(F(kd - n - 1)); a split sheaf satisfies h0 >= hm.
struct GeneratorInequality {
    std::int64_t h0, hm;
    bool holds() const { return h0 >= hm; }
};

/// Throws WindowError if either cell is unknown.
GeneratorInequality generator_inequality(const CohomologyTable& t, const Polarization& d, int k);

struct SplitVerdict {
    enum class Kind { split, nonsplit, inconclusive };
    Kind kind = Kind::inconclusive;
    Multiset multiset;
    std::optional<CellRef> witness;
    std::string reason;

    Window window{MultiDegree{0}, MultiDegree{0}};
    bool torsion_free_asserted = false;
    std::size_t safe_region_size = 0;
    std::vector<MultiDegree> extremal_positions;
    /// t = 1: the engine still runs but the product criterion does not apply as stated.
    bool classical_mode = false;

    bool theorem_backed() const { return kind == Kind::split && torsion_free_asserted && !classical_mode; }
    bool operator==(const SplitVerdict&) const;
};

std::string to_string(SplitVerdict::Kind k);

struct SplitOptions {
    CechOptions cech{};
    bool torsion_free_asserted = false;
    /// Extension of strand propagation below the window; negative means max n_j + 1.
    int propagation_margin = -1;
};

/// Decision from an already computed table (strand propagation included).
SplitVerdict split_check_table(const CohomologyTable& t, const Polarization& d, const SplitOptions& opts = {});

/// cohomology_table over the window followed by split_check_table.
SplitVerdict split_check(const LineBundleComplex& c, const Polarization& d, const Window& window,
                         const SplitOptions& opts = {});

nlohmann::json verdict_to_json(const SplitVerdict& v);
SplitVerdict verdict_from_json(const nlohmann::json& j);
/// One or two lines for terminals.
std::string verdict_summary(const SplitVerdict& v);

}  // namespace tatesplit
