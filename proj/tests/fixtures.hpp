#pragma once

#include "tatesplit/coxring.hpp"

namespace fixtures {

using namespace tatesplit;

inline MultiHomogPoly var(const ProductSpace& s, std::size_t j, int i) { return MultiHomogPoly::variable(s, j, i); }

inline PolyMatrix matrix(const FreeSum& src, const FreeSum& tgt, const std::vector<MultiHomogPoly>& entries) {
    PolyMatrix m = PolyMatrix::zero(src, tgt);
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (!entries[i].is_zero()) m.entries[i] = entries[i];
    return m;
}

/// Koszul resolution of the point V(x_{1,1}, x_{2,1}) on P^1 x P^1.
inline LineBundleComplex koszul_point() {
    ProductSpace s({1, 1});
    FreeSum t2{{{-1, -1}}}, t1{{{-1, 0}, {0, -1}}}, t0{{{0, 0}}};
    const auto x = var(s, 0, 1), y = var(s, 1, 1);
    auto d2 = matrix(t2, t1, {y, -x});
    auto d1 = matrix(t1, t0, {x, y});
    return LineBundleComplex(s, -2, {t2, t1, t0}, {d2, d1});
}

/// Ideal sheaf of the same point: O(-1,-1) -> O(-1,0) + O(0,-1).
inline LineBundleComplex ideal_point() {
    ProductSpace s({1, 1});
    FreeSum t1{{{-1, -1}}}, t0{{{-1, 0}, {0, -1}}};
    const auto x = var(s, 0, 1), y = var(s, 1, 1);
    return LineBundleComplex(s, -1, {t1, t0}, {matrix(t1, t0, {y, -x})});
}

}  // namespace fixtures
