#include "tatesplit/tate.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <set>

namespace tatesplit {

namespace {

using Filter = std::function<bool(const MultiDegree&)>;

// Offsets u with 0 <= u_j <= n_j + 1.
std::vector<MultiDegree> support_offsets(const ProductSpace& space) {
    MultiDegree hi(std::vector<int>(space.t()));
    for (std::size_t j = 0; j < space.t(); ++j) hi[j] = space.n(j) + 1;
    return Window(MultiDegree::zero(space.t()), hi).points();
}

std::int64_t exterior_weight(const ProductSpace& space, const MultiDegree& u) {
    std::int64_t w = 1;
    for (std::size_t j = 0; j < space.t(); ++j) w *= binomial(space.n(j) + 1, u[j]);
    return w;
}

// Profile over the support box of b restricted to twists passing `keep`, shifted by `shift`.
void accumulate(const CohomologyTable& t, const MultiDegree& b, const Filter& keep, int shift,
                std::map<int, std::int64_t>& dims, std::set<MultiDegree>& missing) {
    const auto& space = t.space();
    if (b.size() != space.t()) throw InputError("internal degree " + b.str() + " has wrong length");
    for (const auto& u : support_offsets(space)) {
        const MultiDegree a = b - u;
        if (!keep(a)) continue;
        const std::int64_t w = exterior_weight(space, u);
        for (int i = 0; i <= t.m(); ++i) {
            const auto h = t.known(a, i);
            if (!h) {
                missing.insert(a);
                continue;
            }
            if (*h) dims[static_cast<int>(a.total()) + i + shift] += *h * w;
        }
    }
}

void throw_missing(const std::set<MultiDegree>& missing, const std::string& what) {
    if (missing.empty()) return;
    std::vector<std::string> names;
    for (const auto& a : missing) names.push_back(a.str());
    std::string msg = what + ": " + std::to_string(names.size()) + " twist(s) of the support box are not known (";
    for (std::size_t k = 0; k < std::min<std::size_t>(names.size(), 8); ++k) msg += (k ? ", " : "") + names[k];
    msg += names.size() > 8 ? ", ...)" : ")";
    throw WindowError(msg, names);
}

std::int64_t alternating(const std::map<int, std::int64_t>& dims) {
    std::int64_t s = 0;
    for (const auto& [d, v] : dims) s += (d % 2 == 0) ? v : -v;
    return s;
}

void check_factor_set(const FactorSet& s, std::size_t t, std::vector<int>& seen) {
    for (auto j : s) {
        if (j >= t) throw InputError("factor index " + std::to_string(j + 1) + " out of range");
        if (seen[j]++) throw InputError("factor sets I, J, K must be disjoint");
    }
}

template <class Fn>
std::vector<ChecksumValue> sweep(const CohomologyTable& t, Exec exec, Fn fn) {
    const auto bs = supported_internal_degrees(t);
    std::vector<ChecksumValue> out(bs.size());
    const long n = static_cast<long>(bs.size());
    if (exec == Exec::serial) {
        for (long k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = {bs[static_cast<std::size_t>(k)], fn(bs[static_cast<std::size_t>(k)])};
        return out;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) {
        try {
            out[static_cast<std::size_t>(k)] = {bs[static_cast<std::size_t>(k)], fn(bs[static_cast<std::size_t>(k)])};
        } catch (...) {
#pragma omp critical(tatesplit_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace

TateTermProfile tate_term_dims(const CohomologyTable& t, const MultiDegree& b) {
    TateTermProfile p{b, {}};
    std::set<MultiDegree> missing;
    accumulate(t, b, [](const MultiDegree&) { return true; }, 0, p.dims, missing);
    throw_missing(missing, "Tate term " + b.str());
    std::erase_if(p.dims, [](const auto& kv) { return kv.second == 0; });
    return p;
}

std::int64_t tate_checksum(const CohomologyTable& t, const MultiDegree& b) {
    return alternating(tate_term_dims(t, b).dims);
}

bool strand_exactness_predicted(std::size_t t, const FactorSet& I, const FactorSet& J, const FactorSet& K) {
    std::set<std::size_t> u(I.begin(), I.end());
    u.insert(J.begin(), J.end());
    u.insert(K.begin(), K.end());
    return u.size() < t;
}

std::int64_t strand_checksum(const CohomologyTable& t, const MultiDegree& c, const FactorSet& I, const FactorSet& J,
                             const FactorSet& K, const MultiDegree& b) {
    const std::size_t nt = t.space().t();
    if (c.size() != nt) throw InputError("strand corner " + c.str() + " has wrong length");
    std::vector<int> seen(nt, 0);
    check_factor_set(I, nt, seen);
    check_factor_set(J, nt, seen);
    check_factor_set(K, nt, seen);
    const Filter keep = [&](const MultiDegree& a) {
        for (auto j : I)
            if (!(a[j] < c[j])) return false;
        for (auto j : J)
            if (a[j] != c[j]) return false;
        for (auto j : K)
            if (!(a[j] >= c[j])) return false;
        return true;
    };
    std::map<int, std::int64_t> dims;
    std::set<MultiDegree> missing;
    accumulate(t, b, keep, 0, dims, missing);
    throw_missing(missing, "strand at " + b.str());
    return alternating(dims);
}

std::int64_t corner_checksum(const CohomologyTable& t, const MultiDegree& c, const MultiDegree& b) {
    if (c.size() != t.space().t()) throw InputError("corner " + c.str() + " has wrong length");
    std::map<int, std::int64_t> dims;
    std::set<MultiDegree> missing;
    // cone^d = lower^{d+1-t} + upper^d, so a lower term of degree e lands in d = e + t - 1.
    const int shift = static_cast<int>(t.space().t()) - 1;
    const Filter lower = [&](const MultiDegree& a) {
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a[j] >= c[j]) return false;
        return true;
    };
    accumulate(t, b, lower, shift, dims, missing);
    accumulate(t, b, [&](const MultiDegree& a) { return leq(c, a); }, 0, dims, missing);
    throw_missing(missing, "corner complex at " + b.str());
    return alternating(dims);
}

std::vector<MultiDegree> supported_internal_degrees(const CohomologyTable& t) {
    const auto& w = t.window();
    MultiDegree lo = w.lo();
    for (std::size_t j = 0; j < lo.size(); ++j) lo[j] += t.space().n(j) + 1;
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (lo[j] > w.hi()[j]) return {};
    return Window(lo, w.hi()).points();
}

std::vector<ChecksumValue> tate_checksum_sweep(const CohomologyTable& t, Exec exec) {
    return sweep(t, exec, [&](const MultiDegree& b) { return tate_checksum(t, b); });
}

std::vector<ChecksumValue> corner_checksum_sweep(const CohomologyTable& t, const MultiDegree& c, Exec exec) {
    return sweep(t, exec, [&](const MultiDegree& b) { return corner_checksum(t, c, b); });
}

std::string Inconsistency::str() const {
    return "strand rule along factor " + std::to_string(factor + 1) + " infers h^" + std::to_string(i) + "(F" +
           a.str() + ") = 0 but the computed value is " + std::to_string(computed_dim);
}

PropagationResult strand_propagate(const CohomologyTable& t, int margin) {
    if (margin < 0) throw InputError("propagation margin must be nonnegative");
    PropagationResult r{t, {}, 0};
    auto& table = r.table;
    const auto& space = t.space();
    const Window region = t.window().extended_below(margin);
    const auto targets = region.points();
    std::set<std::tuple<MultiDegree, int, std::size_t>> reported;

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 0; j < space.t(); ++j) {
            const MultiDegree ej = MultiDegree::unit(space.t(), j);
            for (const auto& target : targets) {
                const MultiDegree a = target + ej;
                for (int i = 0; i <= space.m(); ++i) {
                    bool fires = true;
                    for (int k = 0; k <= space.n(j) && fires; ++k)
                        fires = table.is_known_zero(a + ej.scaled(k), i - k);
                    if (!fires) continue;
                    const Cell c = table.cell(target, i);
                    if (!c.known()) {
                        table.set_cell(target, i, {0, CellStatus::inferred_zero});
                        ++r.inferred;
                        changed = true;
                    } else if (c.dim != 0 && reported.emplace(target, i, j).second) {
                        r.inconsistencies.push_back({target, i, j, c.dim});
                    }
                }
            }
        }
    }
    return r;
}

nlohmann::json profile_to_json(const TateTermProfile& p) {
    nlohmann::json dims = nlohmann::json::object();
    for (const auto& [d, v] : p.dims) dims[std::to_string(d)] = v;
    return {{"b", p.b.coords()}, {"dims", dims}};
}

}  // namespace tatesplit
