#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "tatesplit/exec.hpp"

namespace tatesplit {

/// A point of the degree lattice Z^t.
class MultiDegree {
public:
    MultiDegree() = default;
    explicit MultiDegree(std::vector<int> coords) : coords_(std::move(coords)) {}
    MultiDegree(std::initializer_list<int> coords) : coords_(coords) {}

    static MultiDegree zero(std::size_t t) { return MultiDegree(std::vector<int>(t, 0)); }
    static MultiDegree unit(std::size_t t, std::size_t j);

    std::size_t size() const { return coords_.size(); }
    int operator[](std::size_t j) const { return coords_[j]; }
    int& operator[](std::size_t j) { return coords_[j]; }
    const std::vector<int>& coords() const { return coords_; }

    /// |a| = sum of coordinates.
    long total() const;

    MultiDegree operator+(const MultiDegree& o) const;
    MultiDegree operator-(const MultiDegree& o) const;
    MultiDegree operator-() const;
    MultiDegree scaled(int k) const;

    // Lexicographic; this is the deterministic iteration order used everywhere.
    auto operator<=>(const MultiDegree&) const = default;
    bool operator==(const MultiDegree&) const = default;

    std::string str() const;

private:
    std::vector<int> coords_;
};

/// P^{n_1} x ... x P^{n_t}.
class ProductSpace {
public:
    explicit ProductSpace(std::vector<int> factor_dims);

    std::size_t t() const { return dims_.size(); }
    int n(std::size_t j) const { return dims_[j]; }
    const std::vector<int>& factor_dims() const { return dims_; }
    /// m = n_1 + ... + n_t
    int m() const { return m_; }
    /// Number of homogeneous variables n_1 + ... + n_t + t.
    int num_vars() const { return m_ + static_cast<int>(dims_.size()); }
    /// Index of x_{j,0} in the flat variable list.
    int var_offset(std::size_t j) const { return offsets_[j]; }

    bool operator==(const ProductSpace&) const = default;
    std::string str() const;

private:
    std::vector<int> dims_;
    std::vector<int> offsets_;
    int m_ = 0;
};

/// O(H) = O(d_1,...,d_t), every d_j >= 1.
class Polarization {
public:
    explicit Polarization(MultiDegree d);
    const MultiDegree& d() const { return d_; }
    int operator[](std::size_t j) const { return d_[j]; }
    std::size_t size() const { return d_.size(); }
    /// kH
    MultiDegree multiple(int k) const { return d_.scaled(k); }

private:
    MultiDegree d_;
};

/// Closed box lo <= a <= hi in Z^t.
class Window {
public:
    Window(MultiDegree lo, MultiDegree hi);
    static Window cube(std::size_t t, int lo, int hi);

    const MultiDegree& lo() const { return lo_; }
    const MultiDegree& hi() const { return hi_; }
    std::size_t t() const { return lo_.size(); }

    bool contains(const MultiDegree& a) const;
    std::size_t count() const;
    /// Row-major (lexicographic) position of a; a must be contained.
    std::size_t index_of(const MultiDegree& a) const;
    MultiDegree at(std::size_t index) const;
    /// All points in lexicographic order.
    std::vector<MultiDegree> points() const;

    Window extended_below(int margin) const;
    Window intersect(const Window& o) const;
    bool operator==(const Window&) const = default;
    std::string str() const;

private:
    MultiDegree lo_, hi_;
};

bool leq(const MultiDegree& a, const MultiDegree& b);
bool lt(const MultiDegree& a, const MultiDegree& b);

/// O(-n_1-1, ..., -n_t-1), the canonical sheaf.
MultiDegree canonical_twist(const ProductSpace& space);

/// N + 1 = h^0(O(d)) = prod C(n_j + d_j, n_j).
std::int64_t embedding_dimension(const ProductSpace& space, const Polarization& d);

/// Integers k with O(kH)(a) having nonzero intermediate cohomology.
std::vector<int> intermediate_k_range(const ProductSpace& space, const Polarization& d,
                                      const MultiDegree& a);

/// The candidate interval [min_j ceil(-a_j/d_j), max_i floor((-a_i-n_i-1)/d_i)];
/// nullopt when empty.
std::optional<std::pair<int, int>> k_bounding_interval(const ProductSpace& space,
                                                       const Polarization& d,
                                                       const MultiDegree& a);

bool is_safe(const ProductSpace& space, const Polarization& d, const MultiDegree& a);

/// Twists a of the window such that no O(kH)(a) has intermediate cohomology.
std::vector<MultiDegree> safe_region(const ProductSpace& space, const Polarization& d,
                                     const Window& window, Exec exec = Exec::parallel);

enum class RenderFormat { ascii, csv, json };

/// 2-D rendering: columns a_1 ascending, rows a_2 descending, '#' for members.
/// For t > 2 a slice fixing coordinates 3..t must be given.
std::string render_region(const std::vector<MultiDegree>& cells, const Window& window,
                          RenderFormat format = RenderFormat::ascii,
                          const std::optional<std::vector<int>>& slice = std::nullopt);

}  // namespace tatesplit
