#include "tatesplit/cech.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <map>
#include <numeric>
#include <tuple>

#include "tatesplit/linalg.hpp"

namespace tatesplit {

int CoverIndex::cech_degree() const {
    int p = 0;
    for (auto s : sets) p += std::popcount(s) - 1;
    return p;
}

namespace {

constexpr std::uint64_t kDefaultCrossCheckPrime = 2147483629ULL;

// Position of v inside S u {v}, i.e. the number of elements of S below v.
int insertion_position(std::uint32_t set, int v) { return std::popcount(set & ((1u << v) - 1u)); }

void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur.push_back(v);
        compositions(parts - 1, total - v, cur, out);
        cur.pop_back();
    }
}

// Laurent monomials on P^n of degree e, exponent >= -depth on the bits of mask, >= 0 elsewhere.
std::vector<std::vector<int>> factor_laurent(int n, int e, std::uint32_t mask, int depth) {
    std::vector<int> lower(static_cast<std::size_t>(n) + 1, 0);
    int shifted = e;
    for (int i = 0; i <= n; ++i)
        if (mask & (1u << i)) {
            lower[static_cast<std::size_t>(i)] = -depth;
            shifted += depth;
        }
    std::vector<std::vector<int>> out;
    if (shifted < 0) return out;
    std::vector<int> cur;
    compositions(n + 1, shifted, cur, out);
    for (auto& v : out)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += lower[i];
    return out;
}

struct FactorBasis {
    std::vector<std::vector<int>> monos;
    std::map<std::vector<int>, std::uint32_t> index;
};

class FactorBasisCache {
public:
    FactorBasisCache(const ProductSpace& space, std::vector<int> depth) : space_(space), depth_(std::move(depth)) {}

    const FactorBasis& get(std::size_t j, int e, std::uint32_t mask) {
        const auto key = std::make_tuple(j, e, mask);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        FactorBasis fb;
        fb.monos = factor_laurent(space_.n(j), e, mask, depth_[j]);
        for (std::uint32_t i = 0; i < fb.monos.size(); ++i) fb.index.emplace(fb.monos[i], i);
        return cache_.emplace(key, std::move(fb)).first->second;
    }

private:
    const ProductSpace& space_;
    std::vector<int> depth_;
    std::map<std::tuple<std::size_t, int, std::uint32_t>, FactorBasis> cache_;
};

// All cover indices, mixed radix over masks 1..2^{n_j+1}-1 (factor 0 most significant).
struct CoverSet {
    std::vector<CoverIndex> covers;
    std::vector<std::size_t> radix;  // 2^{n_j+1} - 1

    explicit CoverSet(const ProductSpace& space) {
        for (std::size_t j = 0; j < space.t(); ++j) radix.push_back((1u << (space.n(j) + 1)) - 1u);
        std::size_t total = 1;
        for (auto r : radix) total *= r;
        covers.reserve(total);
        for (std::size_t id = 0; id < total; ++id) {
            CoverIndex c;
            c.sets.resize(space.t());
            std::size_t rest = id;
            for (std::size_t j = space.t(); j-- > 0;) {
                c.sets[j] = static_cast<std::uint32_t>(rest % radix[j]) + 1u;
                rest /= radix[j];
            }
            covers.push_back(std::move(c));
        }
    }

    std::size_t id_of(const std::vector<std::uint32_t>& sets) const {
        std::size_t id = 0;
        for (std::size_t j = 0; j < sets.size(); ++j) id = id * radix[j] + (sets[j] - 1u);
        return id;
    }
};

template <class F>
std::size_t rank_with(std::vector<SparseRow<typename F::value_type>> rows, std::size_t ncols, const F& f) {
    return sparse_rank(std::move(rows), ncols, f);
}

// ---------------------------------------------------------------------------
// Line bundles: the Cech complex splits by fine degree alpha, and the piece of
// alpha only depends on the negative supports N_j = {i : alpha_{j,i} < 0}.

// Number of alpha in Z^{n+1}, sum e, alpha_i in [-depth, -1] exactly on mask, >= 0 elsewhere.
std::int64_t pattern_count(int n, int e, std::uint32_t mask, int depth) {
    const int r = std::popcount(mask);
    const int free_parts = n + 1 - r;
    // ways[u]: r values in [1, depth] summing to u
    std::vector<std::int64_t> ways{1};
    for (int k = 0; k < r; ++k) {
        std::vector<std::int64_t> next(ways.size() + static_cast<std::size_t>(depth), 0);
        for (std::size_t u = 0; u < ways.size(); ++u)
            if (ways[u])
                for (int v = 1; v <= depth; ++v) next[u + static_cast<std::size_t>(v)] += ways[u];
        ways = std::move(next);
    }
    std::int64_t total = 0;
    for (std::size_t u = 0; u < ways.size(); ++u) {
        if (!ways[u]) continue;
        const long w = e + static_cast<long>(u);
        if (w < 0) continue;
        const std::int64_t nonneg = free_parts == 0 ? (w == 0 ? 1 : 0) : binomial(w + free_parts - 1, free_parts - 1);
        total += ways[u] * nonneg;
    }
    return total;
}

// Cohomology of the Cech piece of one negative-support pattern: cochains are the
// cover indices with S_j containing N_j.
template <class F>
std::vector<std::int64_t> pattern_cohomology(const ProductSpace& space, const CoverSet& cs,
                                             const std::vector<std::uint32_t>& pattern, const F& f) {
    using V = typename F::value_type;
    const int m = space.m();
    std::vector<std::vector<std::size_t>> by_degree(static_cast<std::size_t>(m) + 1);
    std::map<std::size_t, std::size_t> local;  // cover id -> position within its degree
    for (std::size_t id = 0; id < cs.covers.size(); ++id) {
        const auto& c = cs.covers[id];
        bool ok = true;
        for (std::size_t j = 0; j < space.t() && ok; ++j) ok = (c.sets[j] & pattern[j]) == pattern[j];
        if (!ok) continue;
        auto& bucket = by_degree[static_cast<std::size_t>(c.cech_degree())];
        local[id] = bucket.size();
        bucket.push_back(id);
    }
    std::vector<std::size_t> rank(static_cast<std::size_t>(m) + 1, 0);
    for (int k = 0; k < m; ++k) {
        const auto& src = by_degree[static_cast<std::size_t>(k)];
        const auto& tgt = by_degree[static_cast<std::size_t>(k) + 1];
        if (src.empty() || tgt.empty()) continue;
        // Row per target so kernel_basis sees A x with x indexed by sources.
        std::vector<std::vector<V>> a(tgt.size(), std::vector<V>(src.size(), f.zero()));
        for (std::size_t s = 0; s < src.size(); ++s) {
            const auto& c = cs.covers[src[s]];
            int before = 0;
            for (std::size_t j = 0; j < space.t(); ++j) {
                for (int v = 0; v <= space.n(j); ++v) {
                    if (c.sets[j] & (1u << v)) continue;
                    auto sets = c.sets;
                    sets[j] |= (1u << v);
                    const int sign = ((insertion_position(c.sets[j], v) + before) % 2) ? -1 : 1;
                    a[local.at(cs.id_of(sets))][s] = f.from_int(sign);
                }
                before += std::popcount(c.sets[j]) - 1;
            }
        }
        rank[static_cast<std::size_t>(k)] = dense_rank(a, src.size(), f);
    }
    std::vector<std::int64_t> h(static_cast<std::size_t>(m) + 1, 0);
    for (int k = 0; k <= m; ++k) {
        const auto dim = static_cast<std::int64_t>(by_degree[static_cast<std::size_t>(k)].size());
        h[static_cast<std::size_t>(k)] = dim - static_cast<std::int64_t>(rank[static_cast<std::size_t>(k)]) -
                                         (k > 0 ? static_cast<std::int64_t>(rank[static_cast<std::size_t>(k) - 1]) : 0);
    }
    return h;
}

// Pattern cohomology only depends on the space, the pattern and the field; the
// memo is per thread so parallel table fills share nothing.
std::uint64_t field_key(const ModP& f) { return f.p; }
std::uint64_t field_key(const Rat&) { return 0; }

template <class F>
const std::vector<std::int64_t>& cached_pattern_cohomology(const ProductSpace& space, const CoverSet& cs,
                                                           const std::vector<std::uint32_t>& pattern, const F& f) {
    using Key = std::tuple<std::vector<int>, std::vector<std::uint32_t>, std::uint64_t>;
    thread_local std::map<Key, std::vector<std::int64_t>> memo;
    Key key{space.factor_dims(), pattern, field_key(f)};
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(std::move(key), pattern_cohomology(space, cs, pattern, f)).first;
    return it->second;
}

template <class F>
CohomologyVector line_bundle_cech(const ProductSpace& space, const MultiDegree& e, const std::vector<int>& depth,
                                  const F& f) {
    const std::size_t t = space.t();
    // counts[j][mask]
    std::vector<std::vector<std::int64_t>> counts(t);
    for (std::size_t j = 0; j < t; ++j) {
        const std::uint32_t full = 1u << (space.n(j) + 1);
        counts[j].resize(full);
        for (std::uint32_t mask = 0; mask < full; ++mask)
            counts[j][mask] = pattern_count(space.n(j), e[j], mask, depth[j]);
    }
    const CoverSet cs(space);
    CohomologyVector h(static_cast<std::size_t>(space.m()) + 1, 0);
    std::vector<std::uint32_t> pattern(t, 0);
    // Odometer over all pattern tuples.
    while (true) {
        std::int64_t mult = 1;
        for (std::size_t j = 0; j < t && mult; ++j) mult *= counts[j][pattern[j]];
        if (mult) {
            const auto& ph = cached_pattern_cohomology(space, cs, pattern, f);
            for (std::size_t i = 0; i < h.size(); ++i) h[i] += mult * ph[i];
        }
        std::size_t j = t;
        while (j-- > 0) {
            if (++pattern[j] < (1u << (space.n(j) + 1))) break;
            pattern[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) break;
    }
    return h;
}

// ---------------------------------------------------------------------------
// General blocks: the truncated total complex with explicit sparse differentials.

struct Node {
    int q;
    std::size_t s;
};

template <class F>
std::vector<std::int64_t> block_cohomology(const LineBundleComplex& cx, const std::vector<Node>& nodes,
                                           const MultiDegree& a, const std::vector<int>& depth, int kmin, int kmax,
                                           const F& f) {
    using V = typename F::value_type;
    const auto& space = cx.space();
    const std::size_t t = space.t();
    const CoverSet cs(space);
    FactorBasisCache cache(space, depth);

    std::map<std::pair<int, std::size_t>, std::size_t> node_id;
    for (std::size_t i = 0; i < nodes.size(); ++i) node_id[{nodes[i].q, nodes[i].s}] = i;

    const auto ndeg = static_cast<std::size_t>(kmax - kmin + 1);
    std::vector<std::size_t> dims(ndeg, 0);

    struct CellInfo {
        int k = 0;
        std::size_t offset = 0;
        std::vector<const FactorBasis*> fb;
        std::size_t size = 0;
    };
    // cells[node][cover]
    std::vector<std::vector<CellInfo>> cells(nodes.size(), std::vector<CellInfo>(cs.covers.size()));
    for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
        const MultiDegree e = a + cx.term(nodes[ni].q).twists[nodes[ni].s];
        for (std::size_t ci = 0; ci < cs.covers.size(); ++ci) {
            auto& cell = cells[ni][ci];
            cell.k = nodes[ni].q + cs.covers[ci].cech_degree();
            cell.size = 1;
            for (std::size_t j = 0; j < t; ++j) {
                cell.fb.push_back(&cache.get(j, e[j], cs.covers[ci].sets[j]));
                cell.size *= cell.fb.back()->monos.size();
            }
            auto& d = dims[static_cast<std::size_t>(cell.k - kmin)];
            cell.offset = d;
            d += cell.size;
        }
    }

    auto flat_index = [&](const CellInfo& cell, const std::vector<std::uint32_t>& local) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < t; ++j) idx = idx * cell.fb[j]->monos.size() + local[j];
        return cell.offset + idx;
    };

    std::vector<std::size_t> rank(ndeg, 0);
    for (int k = kmin; k < kmax; ++k) {
        const auto kk = static_cast<std::size_t>(k - kmin);
        if (dims[kk] == 0 || dims[kk + 1] == 0) continue;
        IncrementalEchelon<F> ech(dims[kk + 1], f);
        for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
            const int q = nodes[ni].q;
            const std::size_t s = nodes[ni].s;
            // Outgoing complex differentials: (target node, entry).
            std::vector<std::pair<std::size_t, const MultiHomogPoly*>> outgoing;
            if (q < cx.p_max()) {
                const auto& d = cx.diff(q);
                for (std::size_t r = 0; r < d.rows; ++r)
                    if (!d.at(r, s).is_zero()) outgoing.emplace_back(node_id.at({q + 1, r}), &d.at(r, s));
            }
            for (std::size_t ci = 0; ci < cs.covers.size(); ++ci) {
                const auto& cell = cells[ni][ci];
                if (cell.k != k || cell.size == 0) continue;
                const auto& cover = cs.covers[ci];
                const int cdeg = cover.cech_degree();
                std::vector<std::uint32_t> local(t, 0);
                for (std::size_t el = 0; el < cell.size; ++el) {
                    {
                        std::size_t rest = el;
                        for (std::size_t j = t; j-- > 0;) {
                            const auto sz = cell.fb[j]->monos.size();
                            local[j] = static_cast<std::uint32_t>(rest % sz);
                            rest /= sz;
                        }
                    }
                    SparseRow<V> row;
                    // Cech part.
                    int before = 0;
                    for (std::size_t j = 0; j < t; ++j) {
                        const auto& mono = cell.fb[j]->monos[local[j]];
                        for (int v = 0; v <= space.n(j); ++v) {
                            if (cover.sets[j] & (1u << v)) continue;
                            auto sets = cover.sets;
                            sets[j] |= (1u << v);
                            const auto& tcell = cells[ni][cs.id_of(sets)];
                            auto tlocal = local;
                            tlocal[j] = tcell.fb[j]->index.at(mono);
                            const int sign = ((insertion_position(cover.sets[j], v) + before) % 2) ? -1 : 1;
                            row.emplace_back(static_cast<std::uint32_t>(flat_index(tcell, tlocal)), f.from_int(sign));
                        }
                        before += std::popcount(cover.sets[j]) - 1;
                    }
                    // Complex part, sign (-1)^{Cech degree}.
                    for (const auto& [tn, poly] : outgoing) {
                        const auto& tcell = cells[tn][ci];
                        for (const auto& term : poly->terms()) {
                            auto tlocal = local;
                            for (std::size_t j = 0; j < t; ++j) {
                                auto mono = cell.fb[j]->monos[local[j]];
                                const auto off = static_cast<std::size_t>(space.var_offset(j));
                                for (std::size_t v = 0; v < mono.size(); ++v) mono[v] += term.exps[off + v];
                                tlocal[j] = tcell.fb[j]->index.at(mono);
                            }
                            V c = f.from_rational(term.coeff);
                            if (cdeg % 2) c = f.neg(c);
                            row.emplace_back(static_cast<std::uint32_t>(flat_index(tcell, tlocal)), c);
                        }
                    }
                    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
                    // Merge duplicate columns.
                    SparseRow<V> merged;
                    for (auto& e : row) {
                        if (!merged.empty() && merged.back().first == e.first)
                            merged.back().second = f.add(merged.back().second, e.second);
                        else
                            merged.push_back(std::move(e));
                    }
                    std::erase_if(merged, [&](const auto& e) { return f.is_zero(e.second); });
                    ech.insert(std::move(merged));
                }
            }
        }
        rank[kk] = ech.rank();
    }
    std::vector<std::int64_t> h(ndeg, 0);
    for (std::size_t kk = 0; kk < ndeg; ++kk)
        h[kk] = static_cast<std::int64_t>(dims[kk]) - static_cast<std::int64_t>(rank[kk]) -
                (kk > 0 ? static_cast<std::int64_t>(rank[kk - 1]) : 0);
    return h;
}

// Groups summands linked by nonzero differential entries.
std::vector<std::vector<Node>> blocks_of(const LineBundleComplex& cx) {
    std::vector<Node> nodes;
    std::map<std::pair<int, std::size_t>, std::size_t> id;
    for (int q = cx.p_min(); q <= cx.p_max(); ++q)
        for (std::size_t s = 0; s < cx.term(q).rank(); ++s) {
            id[{q, s}] = nodes.size();
            nodes.push_back({q, s});
        }
    std::vector<std::size_t> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int q = cx.p_min(); q < cx.p_max(); ++q) {
        const auto& d = cx.diff(q);
        for (std::size_t r = 0; r < d.rows; ++r)
            for (std::size_t s = 0; s < d.cols; ++s)
                if (!d.at(r, s).is_zero()) parent[find(id.at({q, s}))] = find(id.at({q + 1, r}));
    }
    std::map<std::size_t, std::vector<Node>> groups;
    for (std::size_t i = 0; i < nodes.size(); ++i) groups[find(i)].push_back(nodes[i]);
    std::vector<std::vector<Node>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
}

// Cohomology of the whole total complex, indexed by k - kmin with kmin = p_min.
template <class F>
std::vector<std::int64_t> total_cohomology(const LineBundleComplex& cx, const MultiDegree& a,
                                           const std::vector<int>& depth, const F& f) {
    const auto& space = cx.space();
    const int kmin = cx.p_min();
    const int kmax = cx.p_max() + space.m();
    std::vector<std::int64_t> h(static_cast<std::size_t>(kmax - kmin + 1), 0);
    for (const auto& block : blocks_of(cx)) {
        if (block.size() == 1) {
            const auto& n = block.front();
            const auto lb = line_bundle_cech(space, a + cx.term(n.q).twists[n.s], depth, f);
            for (std::size_t i = 0; i < lb.size(); ++i) h[static_cast<std::size_t>(n.q - kmin) + i] += lb[i];
            continue;
        }
        const auto bh = block_cohomology(cx, block, a, depth, kmin, kmax, f);
        for (std::size_t i = 0; i < h.size(); ++i) h[i] += bh[i];
    }
    return h;
}

std::vector<std::int64_t> total_cohomology_dispatch(const LineBundleComplex& cx, const MultiDegree& a,
                                                    const std::vector<int>& depth, const FieldSpec& field) {
    if (field.is_prime()) return total_cohomology(cx, a, depth, ModP{field.p});
    return total_cohomology(cx, a, depth, Rat{});
}

std::vector<int> deepened(std::vector<int> depth, int by) {
    for (auto& d : depth) d = std::max(0, d + by);
    return depth;
}

}  // namespace

std::vector<ExponentVector> cech_basis(const ProductSpace& space, const MultiDegree& b, const CoverIndex& idx,
                                       const MultiDegree& a, const std::vector<int>& depth) {
    if (idx.sets.size() != space.t() || depth.size() != space.t())
        throw std::invalid_argument("cech_basis: cover index or depth has wrong length");
    std::vector<ExponentVector> out{{}};
    for (std::size_t j = 0; j < space.t(); ++j) {
        if (idx.sets[j] == 0 || idx.sets[j] >= (1u << (space.n(j) + 1)))
            throw std::invalid_argument("cech_basis: cover subsets must be nonempty subsets of {0..n_j}");
        const auto fl = factor_laurent(space.n(j), a[j] + b[j], idx.sets[j], depth[j]);
        std::vector<ExponentVector> next;
        for (const auto& prefix : out)
            for (const auto& m : fl) {
                ExponentVector e = prefix;
                e.insert(e.end(), m.begin(), m.end());
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<int> truncation_depth(const ProductSpace& space, const std::vector<MultiDegree>& twists,
                                  const MultiDegree& a) {
    std::vector<int> depth(space.t(), 0);
    for (const auto& b : twists)
        for (std::size_t j = 0; j < space.t(); ++j) depth[j] = std::max(depth[j], -(a[j] + b[j]) - space.n(j));
    return depth;
}

CohomologyVector cech_line_bundle_h(const ProductSpace& space, const MultiDegree& b, const MultiDegree& a,
                                    const CechOptions& opts) {
    return hypercohomology(LineBundleComplex::direct_sum(space, {b}), a, opts);
}

CohomologyVector hypercohomology(const LineBundleComplex& c, const MultiDegree& a, const CechOptions& opts) {
    const auto& space = c.space();
    if (a.size() != space.t()) throw InputError("twist " + a.str() + " has wrong length for " + space.str());
    const auto depth = deepened(truncation_depth(space, c.all_twists(), a), opts.extra_depth);

    const auto h = total_cohomology_dispatch(c, a, depth, opts.field);
    if (opts.stability_check) {
        const auto h2 = total_cohomology_dispatch(c, a, deepened(depth, 1), opts.field);
        if (h2 != h)
            throw TruncationError("Cech truncation not stable at twist " + a.str() + " (depth " +
                                  MultiDegree(depth).str() + ")");
    }
    if (opts.cross_check_prime && opts.field.is_prime()) {
        const std::uint64_t p2 = *opts.cross_check_prime ? *opts.cross_check_prime : kDefaultCrossCheckPrime;
        const auto h3 = total_cohomology_dispatch(c, a, depth, FieldSpec::prime(p2));
        if (h3 != h)
            throw PrimeMismatchError("ranks differ between p=" + std::to_string(opts.field.p) + " and p=" +
                                     std::to_string(p2) + " at twist " + a.str());
    }

    const int kmin = c.p_min();
    CohomologyVector out(static_cast<std::size_t>(space.m()) + 1, 0);
    for (std::size_t idx = 0; idx < h.size(); ++idx) {
        const int k = kmin + static_cast<int>(idx);
        if (k >= 0 && k <= space.m()) {
            out[static_cast<std::size_t>(k)] = h[idx];
        } else if (h[idx] != 0) {
            throw InputError("total complex has cohomology in degree " + std::to_string(k) + " at twist " + a.str() +
                             "; the complex does not resolve a sheaf in degree 0");
        }
    }
    return out;
}

CohomologyTable cohomology_table(const LineBundleComplex& c, const Window& window, const CechOptions& opts) {
    CohomologyTable table(c.space(), window);
    const auto n = static_cast<long>(window.count());
    std::vector<CohomologyVector> results(static_cast<std::size_t>(n));
    if (opts.exec == Exec::parallel) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            try {
                results[static_cast<std::size_t>(i)] = hypercohomology(c, window.at(static_cast<std::size_t>(i)), opts);
            } catch (...) {
#pragma omp critical(tatesplit_table_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (long i = 0; i < n; ++i)
            results[static_cast<std::size_t>(i)] = hypercohomology(c, window.at(static_cast<std::size_t>(i)), opts);
    }
    for (long i = 0; i < n; ++i)
        table.set_computed(window.at(static_cast<std::size_t>(i)), results[static_cast<std::size_t>(i)]);
    return table;
}

}  // namespace tatesplit
