#include "tatesplit/bott.hpp"

#include <stdexcept>

namespace tatesplit {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<std::int64_t>(r);
}

std::int64_t binomial_poly(std::int64_t x, std::int64_t k) {
    if (k < 0) return 0;
    __int128 num = 1, den = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        num *= (x - i);
        den *= (i + 1);
    }
    return static_cast<std::int64_t>(num / den);
}

CohomologyVector factor_h(int n, int a) {
    if (n < 1) throw std::invalid_argument("factor_h: n must be >= 1");
    CohomologyVector h(static_cast<std::size_t>(n) + 1, 0);
    if (a >= 0)
        h[0] = binomial(a + n, n);
    else if (a <= -n - 1)
        h[n] = binomial(-a - 1, n);
    return h;
}

CohomologyVector line_bundle_h(const ProductSpace& space, const MultiDegree& a) {
    if (a.size() != space.t()) throw std::invalid_argument("line_bundle_h: twist length mismatch");
    CohomologyVector acc{1};
    for (std::size_t j = 0; j < space.t(); ++j) {
        const auto f = factor_h(space.n(j), a[j]);
        CohomologyVector next(acc.size() + f.size() - 1, 0);
        for (std::size_t p = 0; p < acc.size(); ++p)
            for (std::size_t q = 0; q < f.size(); ++q) next[p + q] += acc[p] * f[q];
        acc = std::move(next);
    }
    return acc;
}

std::int64_t euler_characteristic(const ProductSpace& space, const MultiDegree& a) {
    std::int64_t chi = 1;
    for (std::size_t j = 0; j < space.t(); ++j) chi *= binomial_poly(a[j] + space.n(j), space.n(j));
    return chi;
}

Signature signature(const ProductSpace& space, const MultiDegree& a) {
    Signature s;
    int index = 0;
    for (std::size_t j = 0; j < space.t(); ++j) {
        if (a[j] >= 0) continue;
        if (a[j] <= -space.n(j) - 1) {
            s.factors.push_back(j);
            index += space.n(j);
        } else {
            s.factors.clear();
            return s;
        }
    }
    s.zero = false;
    s.index = index;
    return s;
}

CohomologyVector sum_line_bundles_h(const ProductSpace& space, const std::vector<MultiDegree>& twists,
                                    const MultiDegree& a) {
    CohomologyVector h(static_cast<std::size_t>(space.m()) + 1, 0);
    for (const auto& b : twists) {
        const auto lb = line_bundle_h(space, a + b);
        for (std::size_t i = 0; i < h.size(); ++i) h[i] += lb[i];
    }
    return h;
}

}  // namespace tatesplit

namespace tatesplit {

std::vector<MultiDegree> nonvanishing_region(const ProductSpace& space, const Window& window, bool intermediate_only) {
    std::vector<MultiDegree> out;
    for (const auto& a : window.points()) {
        const Signature s = signature(space, a);
        if (intermediate_only ? s.intermediate(space.m()) : !s.zero) out.push_back(a);
    }
    return out;
}

}  // namespace tatesplit
