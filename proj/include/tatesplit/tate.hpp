#pragma once

// Dimension-level bookkeeping for the Tate resolution of a sheaf: term
// dimensions per internal degree, exactness checksums (full complex, strands,
// corner complexes) and the strand vanishing rule as an inference engine.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tatesplit/exec.hpp"
#include "tatesplit/table.hpp"

namespace tatesplit {

/// dims[d] = sum over a with 0 <= b - a <= n + 1 of h^{d-|a|}(F(a)) * prod_j C(n_j+1, b_j-a_j).
struct TateTermProfile {
    MultiDegree b;
    std::map<int, std::int64_t> dims;  // only nonzero entries
};

/// Throws WindowError naming the twists of the support box that are not known.
TateTermProfile tate_term_dims(const CohomologyTable& t, const MultiDegree& b);

/// sum_d (-1)^d dims[d]
std::int64_t tate_checksum(const CohomologyTable& t, const MultiDegree& b);

/// Factor indices are 0-based.
using FactorSet = std::vector<std::size_t>;

/// Alternating sum restricted to a_i < c_i (i in I), a_j = c_j (j in J), a_k >= c_k (k in K).
std::int64_t strand_checksum(const CohomologyTable& t, const MultiDegree& c, const FactorSet& I, const FactorSet& J,
                             const FactorSet& K, const MultiDegree& b);

/// Exactness (so a zero checksum) is predicted only when I, J, K leave a factor out.
bool strand_exactness_predicted(std::size_t t, const FactorSet& I, const FactorSet& J, const FactorSet& K);

/// Cone over the corner map: lower quadrant (a < c) shifted by t, plus the upper quadrant (a >= c).
std::int64_t corner_checksum(const CohomologyTable& t, const MultiDegree& c, const MultiDegree& b);

/// Internal degrees whose support box lies in the window: lo + n + 1 <= b <= hi.
std::vector<MultiDegree> supported_internal_degrees(const CohomologyTable& t);

struct ChecksumValue {
    MultiDegree b;
    std::int64_t value;
};

/// tate_checksum at every supported internal degree.
std::vector<ChecksumValue> tate_checksum_sweep(const CohomologyTable& t, Exec exec = Exec::parallel);
/// corner_checksum at every supported internal degree.
std::vector<ChecksumValue> corner_checksum_sweep(const CohomologyTable& t, const MultiDegree& c,
                                                 Exec exec = Exec::parallel);

struct Inconsistency {
    MultiDegree a;
    int i;
    std::size_t factor;
    std::int64_t computed_dim;
    std::string str() const;
};

struct PropagationResult {
    CohomologyTable table;
    std::vector<Inconsistency> inconsistencies;
    std::size_t inferred = 0;
    bool consistent() const { return inconsistencies.empty(); }
};

/// Fixed point of the strand rule: if H^i(a), H^{i-1}(a+e_j), ..., H^{i-n_j}(a+n_j e_j)
/// are all known zero then H^i(a-e_j) = 0. Targets range over the window extended
/// `margin` steps below; factors ascending, twists lexicographic, until stable.
PropagationResult strand_propagate(const CohomologyTable& t, int margin = 0);

nlohmann::json profile_to_json(const TateTermProfile& p);

}  // namespace tatesplit
