#pragma once

// The Z^t-graded Cox ring K[x_{j,0..n_j}] of a product of projective spaces,
// multihomogeneous polynomial matrices, and bounded complexes of sums of
// line bundles. A LineBundleComplex stands for the coherent sheaf given by its
// degree-0 cohomology; exactness elsewhere is the caller's assertion.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tatesplit/field.hpp"
#include "tatesplit/lattice.hpp"

namespace tatesplit {

/// Flat exponent list, factor j occupying [var_offset(j), var_offset(j) + n_j].
using ExponentVector = std::vector<int>;

MultiDegree multidegree_of(const ProductSpace& space, const ExponentVector& e);

struct Term {
    mpq_class coeff;
    ExponentVector exps;
};

class MultiHomogPoly {
public:
    MultiHomogPoly() = default;
    /// The zero polynomial, nominally of the given degree.
    explicit MultiHomogPoly(MultiDegree degree) : degree_(std::move(degree)) {}
    /// Combines duplicate exponents, drops zeros, checks every term has `degree`.
    MultiHomogPoly(const ProductSpace& space, MultiDegree degree, std::vector<Term> terms);

    /// Terms already sorted, merged and nonzero, all of multidegree `degree`.
    static MultiHomogPoly from_normalized(MultiDegree degree, std::vector<Term> terms);
    static MultiHomogPoly variable(const ProductSpace& space, std::size_t factor, int index);
    static MultiHomogPoly constant(const ProductSpace& space, const mpq_class& c);

    const MultiDegree& degree() const { return degree_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    MultiHomogPoly operator-() const;
    MultiHomogPoly scaled(const mpq_class& c) const;
    bool operator==(const MultiHomogPoly& o) const;
    std::string str(const ProductSpace& space) const;

private:
    MultiDegree degree_;
    std::vector<Term> terms_;  // sorted by exps, nonzero coefficients
};

MultiHomogPoly poly_mult(const MultiHomogPoly& f, const MultiHomogPoly& g);
/// Sum of two polynomials of the same degree (either may be zero).
MultiHomogPoly poly_add(const MultiHomogPoly& f, const MultiHomogPoly& g);

/// Direct sum of line bundles O(b_1) + ... + O(b_r).
struct FreeSum {
    std::vector<MultiDegree> twists;
    std::size_t rank() const { return twists.size(); }
    bool operator==(const FreeSum&) const = default;
};

/// Row-major matrix of polynomials; entry (r, s) maps source summand s to target summand r.
struct PolyMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<MultiHomogPoly> entries;

    const MultiHomogPoly& at(std::size_t r, std::size_t s) const { return entries[r * cols + s]; }
    MultiHomogPoly& at(std::size_t r, std::size_t s) { return entries[r * cols + s]; }
    bool is_zero() const;

    /// Zero matrix whose entry degrees are target_r - source_s.
    static PolyMatrix zero(const FreeSum& source, const FreeSum& target);
};

class LineBundleComplex {
public:
    /// terms[k] sits in cohomological degree p_min + k; diffs[k] : terms[k] -> terms[k+1].
    LineBundleComplex(ProductSpace space, int p_min, std::vector<FreeSum> terms, std::vector<PolyMatrix> diffs);

    /// F = O(b_1) + ... + O(b_r) in degree 0 with no differentials.
    static LineBundleComplex direct_sum(const ProductSpace& space, std::vector<MultiDegree> twists);

    const ProductSpace& space() const { return space_; }
    int p_min() const { return p_min_; }
    int p_max() const { return p_min_ + static_cast<int>(terms_.size()) - 1; }
    const FreeSum& term(int p) const;
    /// Differential leaving degree p (zero matrix at the top).
    const PolyMatrix& diff(int p) const;
    const std::vector<FreeSum>& terms() const { return terms_; }
    const std::vector<PolyMatrix>& diffs() const { return diffs_; }

    /// Every summand twist of every term.
    std::vector<MultiDegree> all_twists() const;
    bool operator==(const LineBundleComplex& o) const;

private:
    ProductSpace space_;
    int p_min_;
    std::vector<FreeSum> terms_;
    std::vector<PolyMatrix> diffs_;
};

struct Violation {
    enum class Kind { degree_mismatch, negative_degree, term_degree, not_a_complex, shape };
    Kind kind;
    int p;
    std::size_t row, col;
    std::string message;
};

/// Checks entry homogeneity and d o d = 0 symbolically; exactness is not checked.
std::vector<Violation> validate_complex(const LineBundleComplex& c);

struct BasisToken {
    std::size_t summand;
    ExponentVector exps;
    bool operator==(const BasisToken&) const = default;
};

/// All monomials of multidegree a (per-factor compositions), lexicographic.
std::vector<ExponentVector> monomials_of_degree(const ProductSpace& space, const MultiDegree& a);

/// Degree-a piece of S: for each summand O(b), the monomials of multidegree a + b.
std::vector<BasisToken> graded_basis(const ProductSpace& space, const FreeSum& s, const MultiDegree& a);

/// Matrix of multiplication by `entry` from O(source)_a to O(target)_a
/// (rows index the target basis). Throws InputError on a degree mismatch of a nonzero entry.
template <class F>
std::vector<std::vector<typename F::value_type>> mult_matrix(const ProductSpace& space, const MultiHomogPoly& entry,
                                                             const MultiDegree& source_twist,
                                                             const MultiDegree& target_twist, const MultiDegree& a,
                                                             const F& f);

struct SyzygyDegree {
    MultiDegree degree;
    /// Each generator is a column: one polynomial per source summand, of degree `degree` + b_s.
    std::vector<std::vector<MultiHomogPoly>> generators;
};

/// Kernel generators of M : source -> target degree by degree over the window
/// (lexicographic order). A kernel vector counts as new at a if it is not in the
/// span of x * (kernel at a - e_j) for the windowed predecessors, so generation
/// is complete only inside the window.
std::vector<SyzygyDegree> syzygies_in_window(const ProductSpace& space, const PolyMatrix& m, const FreeSum& source,
                                             const FreeSum& target, const Window& window, const FieldSpec& field);

}  // namespace tatesplit
