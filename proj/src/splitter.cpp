#include "tatesplit/splitter.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tatesplit/tate.hpp"

namespace tatesplit {

namespace {

std::int64_t h0_of_multiple(const ProductSpace& space, const Polarization& d, int j) {
    return line_bundle_h(space, d.multiple(j))[0];
}

void check_polarization(const ProductSpace& space, const Polarization& d) {
    if (d.size() != space.t()) throw InputError("polarization " + d.d().str() + " has wrong length for " + space.str());
}

}  // namespace

std::vector<MultiDegree> multiset_twists(const Multiset& ms, const Polarization& d) {
    std::vector<MultiDegree> out;
    for (const auto& s : ms)
        for (std::int64_t r = 0; r < s.mult; ++r) out.push_back(d.multiple(s.k));
    return out;
}

std::string multiset_str(const Multiset& ms) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < ms.size(); ++i) os << (i ? ", " : "") << '(' << ms[i].k << ',' << ms[i].mult << ')';
    os << '}';
    return os.str();
}

std::vector<CellRef> hypothesis_violations(const CohomologyTable& t, const Polarization& d) {
    check_polarization(t.space(), d);
    std::vector<CellRef> out;
    for (const auto& a : safe_region(t.space(), d, t.window(), Exec::serial))
        for (int i = 1; i < t.m(); ++i)
            if (t.is_known_nonzero(a, i)) out.push_back({a, i});
    return out;
}

std::optional<MonotonicityViolation> hm_monotonicity_check(const CohomologyTable& t) {
    const int m = t.m();
    for (const auto& [a, row] : t.rows()) {
        if (!t.is_known_nonzero(a, m)) continue;
        for (std::size_t j = 0; j < a.size(); ++j) {
            const MultiDegree c = a - MultiDegree::unit(a.size(), j);
            if (t.is_known_zero(c, m)) return MonotonicityViolation{a, c};
        }
    }
    return std::nullopt;
}

ExtremalReport extremal_hm(const CohomologyTable& t, const Polarization& d) {
    check_polarization(t.space(), d);
    const auto& space = t.space();
    const int m = t.m();
    ExtremalReport r;
    for (const auto& [a, row] : t.rows()) {
        if (!t.is_known_nonzero(a, m)) continue;
        bool maximal = true, certified = true;
        for (std::size_t j = 0; j < a.size(); ++j) {
            const MultiDegree up = a + MultiDegree::unit(a.size(), j);
            if (t.is_known_nonzero(up, m)) maximal = false;
            if (!t.window().contains(up) || !t.is_known_zero(up, m)) certified = false;
        }
        if (!maximal) continue;
        r.positions.push_back(a);
        if (!certified) r.uncertified.push_back(a);
        if (!r.of_theorem_form) {
            std::optional<int> k;
            bool form = true;
            for (std::size_t j = 0; j < a.size() && form; ++j) {
                const int num = a[j] + space.n(j) + 1;
                if (num % d[j] != 0) {
                    form = false;
                    break;
                }
                const int kj = num / d[j];
                if (k && *k != kj) form = false;
                k = kj;
            }
            if (form && k) r.of_theorem_form = k;
        }
    }
    r.certified = !r.positions.empty() && r.uncertified.empty();
    return r;
}

MultiplicityResult multiplicities(const CohomologyTable& t, const Polarization& d, std::optional<int> k_lowest) {
    check_polarization(t.space(), d);
    const auto& space = t.space();
    const auto& w = t.window();
    // k with -kH in the window form an interval [k_lo, k_hi].
    int k_lo = std::numeric_limits<int>::min(), k_hi = std::numeric_limits<int>::max();
    for (std::size_t j = 0; j < space.t(); ++j) {
        // lo_j <= -k d_j <= hi_j
        const int lo = -w.hi()[j], hi = -w.lo()[j];
        k_lo = std::max(k_lo, lo >= 0 ? (lo + d[j] - 1) / d[j] : -((-lo) / d[j]));
        k_hi = std::min(k_hi, hi >= 0 ? hi / d[j] : -((-hi + d[j] - 1) / d[j]));
    }
    if (k_lo > k_hi) return {std::nullopt, "window contains no twist -kH"};

    auto h0 = [&](int k) { return t.known(d.multiple(-k), 0); };
    std::optional<int> k_max;
    for (int k = k_hi; k >= k_lo; --k) {
        const auto v = h0(k);
        if (!v) return {std::nullopt, "h^0 unknown at " + d.multiple(-k).str()};
        if (*v != 0) {
            k_max = k;
            break;
        }
    }
    if (!k_max) return {Multiset{}, ""};
    if (*k_max == k_hi)
        return {std::nullopt, "window too small: h^0(F(-kH)) nonzero at the window edge k = " + std::to_string(k_hi)};

    const int stop = k_lowest ? *k_lowest : k_lo;
    if (stop < k_lo)
        return {std::nullopt, "window too small: descent needs the twist " + d.multiple(-stop).str()};
    Multiset ms;
    for (int k = *k_max; k >= stop; --k) {
        const auto v = h0(k);
        if (!v) return {std::nullopt, "h^0 unknown at " + d.multiple(-k).str()};
        std::int64_t residual = *v;
        for (const auto& s : ms) residual -= s.mult * h0_of_multiple(space, d, s.k - k);
        if (residual < 0)
            return {std::nullopt, "negative residual " + std::to_string(residual) + " at k = " + std::to_string(k) +
                                      ": table is not that of a sum of twists of O(H)"};
        if (residual > 0) ms.push_back({k, residual});
    }
    return {ms, ""};
}

std::optional<CellMismatch> verify_split(const CohomologyTable& t, const Multiset& ms, const Polarization& d) {
    check_polarization(t.space(), d);
    const auto twists = multiset_twists(ms, d);
    for (const auto& a : t.window().points()) {
        const auto expected = sum_line_bundles_h(t.space(), twists, a);
        for (int i = 0; i <= t.m(); ++i) {
            const auto actual = t.known(a, i);
            if (actual && *actual != expected[static_cast<std::size_t>(i)])
                return CellMismatch{a, i, expected[static_cast<std::size_t>(i)], *actual};
        }
    }
    return std::nullopt;
}

GeneratorInequality generator_inequality(const CohomologyTable& t, const Polarization& d, int k) {
    const auto& space = t.space();
    const MultiDegree top = d.multiple(k);
    const MultiDegree bottom = top + canonical_twist(space);
    const auto h0 = t.known(top, 0);
    const auto hm = t.known(bottom, t.m());
    std::vector<std::string> missing;
    if (!h0) missing.push_back(top.str());
    if (!hm) missing.push_back(bottom.str());
    if (!missing.empty()) throw WindowError("generator inequality needs cells outside the table", missing);
    return {*h0, *hm};
}

std::string to_string(SplitVerdict::Kind k) {
    switch (k) {
        case SplitVerdict::Kind::split: return "Split";
        case SplitVerdict::Kind::nonsplit: return "NonSplit";
        case SplitVerdict::Kind::inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

bool SplitVerdict::operator==(const SplitVerdict& o) const {
    return kind == o.kind && multiset == o.multiset && witness == o.witness && reason == o.reason &&
           window == o.window && torsion_free_asserted == o.torsion_free_asserted &&
           safe_region_size == o.safe_region_size && extremal_positions == o.extremal_positions &&
           classical_mode == o.classical_mode;
}

SplitVerdict split_check_table(const CohomologyTable& table, const Polarization& d, const SplitOptions& opts) {
    const auto& space = table.space();
    check_polarization(space, d);
    SplitVerdict v;
    v.window = table.window();
    v.torsion_free_asserted = opts.torsion_free_asserted;
    v.classical_mode = space.t() == 1;
    v.safe_region_size = safe_region(space, d, table.window(), opts.cech.exec).size();
    auto inconclusive = [&](std::string reason) {
        v.kind = SplitVerdict::Kind::inconclusive;
        v.reason = std::move(reason);
        return v;
    };

    int margin = opts.propagation_margin;
    if (margin < 0) margin = *std::max_element(space.factor_dims().begin(), space.factor_dims().end()) + 1;
    const auto prop = strand_propagate(table, margin);
    if (!prop.consistent()) return inconclusive("inconsistent table: " + prop.inconsistencies.front().str());
    const auto& t = prop.table;

    if (const auto mv = hm_monotonicity_check(t))
        return inconclusive("h^m monotonicity fails: h^m(F" + mv->nonzero.str() + ") != 0 but h^m(F" +
                            mv->zero.str() + ") = 0");

    const auto violations = hypothesis_violations(t, d);
    const auto ext = extremal_hm(t, d);
    v.extremal_positions = ext.positions;
    if (!violations.empty()) {
        v.kind = SplitVerdict::Kind::nonsplit;
        v.witness = violations.front();
        return v;
    }

    // A nonzero sheaf of full support has h^m(F(a)) != 0 for a << 0, so an empty
    // locus means the window misses the lowest summand.
    if (ext.positions.empty())
        return inconclusive("extremality uncertifiable: h^m vanishes on the whole window");
    if (!ext.certified)
        return inconclusive("extremality uncertifiable: h^m nonzero at the window boundary near " +
                            ext.uncertified.front().str());
    if (ext.positions.size() != 1 || !ext.of_theorem_form)
        return inconclusive("extremal h^m position " + ext.positions.front().str() +
                            " is not of the form k*d - n - 1");

    const auto mr = multiplicities(t, d, -*ext.of_theorem_form);
    if (!mr.multiset) return inconclusive(mr.reason);
    if (const auto mm = verify_split(t, *mr.multiset, d))
        return inconclusive("multiset " + multiset_str(*mr.multiset) + " does not reproduce h^" +
                            std::to_string(mm->i) + "(F" + mm->a.str() + "): expected " +
                            std::to_string(mm->expected) + ", table has " + std::to_string(mm->actual));
    v.kind = SplitVerdict::Kind::split;
    v.multiset = *mr.multiset;
    return v;
}

SplitVerdict split_check(const LineBundleComplex& c, const Polarization& d, const Window& window,
                         const SplitOptions& opts) {
    check_polarization(c.space(), d);
    try {
        return split_check_table(cohomology_table(c, window, opts.cech), d, opts);
    } catch (const InputError&) {
        throw;
    } catch (const std::runtime_error& e) {
        SplitVerdict v;
        v.window = window;
        v.torsion_free_asserted = opts.torsion_free_asserted;
        v.classical_mode = c.space().t() == 1;
        v.safe_region_size = safe_region(c.space(), d, window, opts.cech.exec).size();
        v.reason = e.what();
        return v;
    }
}

nlohmann::json verdict_to_json(const SplitVerdict& v) {
    nlohmann::json j;
    j["verdict"] = to_string(v.kind);
    switch (v.kind) {
        case SplitVerdict::Kind::split: {
            auto ms = nlohmann::json::array();
            for (const auto& s : v.multiset) ms.push_back({{"k", s.k}, {"mult", s.mult}});
            j["multiset"] = ms;
            break;
        }
        case SplitVerdict::Kind::nonsplit:
            j["witness"] = {{"a", v.witness->a.coords()}, {"i", v.witness->i}};
            break;
        case SplitVerdict::Kind::inconclusive:
            j["reason"] = v.reason;
            break;
    }
    j["window"] = {{"lo", v.window.lo().coords()}, {"hi", v.window.hi().coords()}};
    j["assertions"] = {{"torsion_free", v.torsion_free_asserted}, {"theorem_backed", v.theorem_backed()}};
    j["safe_region_size"] = v.safe_region_size;
    auto ext = nlohmann::json::array();
    for (const auto& a : v.extremal_positions) ext.push_back(a.coords());
    j["extremal_positions"] = ext;
    j["mode"] = v.classical_mode ? "classical-Horrocks mode, criterion differs" : "product";
    return j;
}

SplitVerdict verdict_from_json(const nlohmann::json& j) {
    try {
        SplitVerdict v;
        const auto kind = j.at("verdict").get<std::string>();
        if (kind == "Split") {
            v.kind = SplitVerdict::Kind::split;
            for (const auto& s : j.at("multiset")) v.multiset.push_back({s.at("k").get<int>(), s.at("mult").get<std::int64_t>()});
        } else if (kind == "NonSplit") {
            v.kind = SplitVerdict::Kind::nonsplit;
            v.witness = CellRef{MultiDegree(j.at("witness").at("a").get<std::vector<int>>()),
                                j.at("witness").at("i").get<int>()};
        } else if (kind == "Inconclusive") {
            v.kind = SplitVerdict::Kind::inconclusive;
            v.reason = j.at("reason").get<std::string>();
        } else {
            throw InputError("unknown verdict '" + kind + "'");
        }
        v.window = Window(MultiDegree(j.at("window").at("lo").get<std::vector<int>>()),
                          MultiDegree(j.at("window").at("hi").get<std::vector<int>>()));
        v.torsion_free_asserted = j.at("assertions").at("torsion_free").get<bool>();
        v.safe_region_size = j.at("safe_region_size").get<std::size_t>();
        for (const auto& a : j.at("extremal_positions")) v.extremal_positions.emplace_back(a.get<std::vector<int>>());
        v.classical_mode = j.value("mode", std::string("product")) != "product";
        return v;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("verdict JSON: ") + e.what());
    }
}

std::string verdict_summary(const SplitVerdict& v) {
    std::ostringstream os;
    os << to_string(v.kind);
    switch (v.kind) {
        case SplitVerdict::Kind::split:
            os << ": F = sum of O(kH)^mult over " << multiset_str(v.multiset)
               << (v.theorem_backed() ? " (theorem-backed)" : " (torsion-freeness not asserted)");
            break;
        case SplitVerdict::Kind::nonsplit:
            os << ": h^" << v.witness->i << "(F" << v.witness->a.str() << ") != 0 at a safe twist";
            break;
        case SplitVerdict::Kind::inconclusive:
            os << ": " << v.reason;
            break;
    }
    os << "\nwindow " << v.window.str() << ", safe twists " << v.safe_region_size;
    if (v.classical_mode) os << ", classical-Horrocks mode, criterion differs";
    os << '\n';
    return os.str();
}

}  // namespace tatesplit
