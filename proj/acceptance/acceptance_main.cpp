// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../tests/fixtures.hpp"
#include "tatesplit/cech.hpp"
#include "tatesplit/splitter.hpp"
#include "tatesplit/tate.hpp"

using namespace tatesplit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Criterion {
public:
    explicit Criterion(Outcome& o) : o_(o) {}
    void require(bool ok, const std::string& what) {
        if (!ok && o_.pass) {
            o_.pass = false;
            o_.detail = what;
        }
    }

private:
    Outcome& o_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// A test sheaf together with its computed table and, for split inputs, the generating data.
struct Sheaf {
    std::string name;
    LineBundleComplex complex;
    Polarization d;
    CohomologyTable table;
    std::optional<Multiset> expected;
};

std::vector<Sheaf> g_sheaves;  // collected by criteria 4-6, reused by 7-9

Multiset normalize(std::vector<int> ks) {
    std::sort(ks.rbegin(), ks.rend());
    Multiset ms;
    for (int k : ks) {
        if (!ms.empty() && ms.back().k == k)
            ++ms.back().mult;
        else
            ms.push_back({k, 1});
    }
    return ms;
}

// ---------------------------------------------------------------------------

Outcome regions() {
    Outcome o;
    Criterion c(o);
    const auto t0 = std::chrono::steady_clock::now();
    ProductSpace s({2, 3});
    const Window w(MultiDegree{-5, -5}, MultiDegree{1, 2});
    // Rows a2 = 2..-5, columns a1 = -5..1.
    const std::string full_expected =
        "###..##\n###..##\n###..##\n.......\n.......\n.......\n###..##\n###..##\n";
    const std::string inter_expected =
        "###....\n###....\n###....\n.......\n.......\n.......\n.....##\n.....##\n";
    const auto full = render_region(nonvanishing_region(s, w, false), w);
    const auto inter = render_region(nonvanishing_region(s, w, true), w);
    c.require(full == full_expected, "full-nonvanishing table differs:\n" + full);
    c.require(inter == inter_expected, "intermediate table differs:\n" + inter);
    const double secs = seconds_since(t0);
    c.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
    if (o.pass) o.detail = "both 8x7 tables reproduced in " + std::to_string(secs) + " s";
    return o;
}

Outcome embedding() {
    Outcome o;
    Criterion c(o);
    ProductSpace s({2, 3});
    const auto monomials = static_cast<std::int64_t>(monomials_of_degree(s, {4, 2}).size());
    const auto n = embedding_dimension(s, Polarization(MultiDegree{4, 2}));
    c.require(monomials == 150, "monomial count " + std::to_string(monomials));
    c.require(n == 149, "N = " + std::to_string(n));
    if (o.pass) o.detail = "150 monomials of degree (4,2), N = 149";
    return o;
}

Outcome oracle() {
    Outcome o;
    Criterion c(o);
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t cells = 0;
    for (const auto& dims : std::vector<std::vector<int>>{{1, 1}, {1, 2}, {2, 3}}) {
        ProductSpace s(dims);
        const auto w = Window::cube(2, -6, 6);
        for (const auto& a : w.points()) {
            c.require(cech_line_bundle_h(s, MultiDegree::zero(2), a) == line_bundle_h(s, a),
                      s.str() + " twist " + a.str());
            ++cells;
        }
    }
    const double secs = seconds_since(t0);
    c.require(secs < 300, "runtime " + std::to_string(secs) + " s");
    if (o.pass) o.detail = std::to_string(cells) + " twists agree, " + std::to_string(secs) + " s";
    return o;
}

Outcome hypercohomology_values() {
    Outcome o;
    Criterion c(o);
    const Polarization d11(MultiDegree{1, 1});
    const auto kp = fixtures::koszul_point();
    const auto kt = cohomology_table(kp, Window::cube(2, -3, 3));
    for (const auto& a : kt.window().points())
        for (int i = 0; i <= 2; ++i)
            c.require(kt.known(a, i) == (i == 0 ? 1 : 0), "Koszul point at " + a.str());
    const auto ip = fixtures::ideal_point();
    const auto h = hypercohomology(ip, {1, 1});
    c.require(h[0] == 3, "h0(I_p(1,1)) = " + std::to_string(h[0]));
    CechOptions q;
    q.field = FieldSpec::rationals();
    c.require(hypercohomology(ip, {1, 1}, q) == h, "rational and F_p values differ");
    g_sheaves.push_back({"Koszul point", kp, d11, cohomology_table(kp, Window::cube(2, -4, 4)), std::nullopt});
    g_sheaves.push_back({"ideal of a point", ip, d11, cohomology_table(ip, Window::cube(2, -5, 5)), std::nullopt});
    if (o.pass) o.detail = "Koszul table constant (1,0,0) on [-3,3]^2, h0(I_p(1,1)) = 3";
    return o;
}

// Window covering -(k_max+1)H, -k_min H and the extremal position with its upper neighbours.
Window split_window(const ProductSpace& s, const Polarization& d, int k_min, int k_max) {
    MultiDegree lo(std::vector<int>(2)), hi(std::vector<int>(2));
    for (std::size_t j = 0; j < 2; ++j) {
        const int bottom = -(k_max + 1) * d[j];
        const int top = -k_min * d[j];
        const int extremal = top - s.n(j) - 1;
        lo[j] = std::min({bottom, top, extremal}) - 1;
        hi[j] = std::max({bottom, top, extremal + 1}) + 1;
    }
    return Window(lo, hi);
}

Outcome soundness() {
    Outcome o;
    Criterion c(o);
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(20240611);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int trial = 0; trial < 20; ++trial) {
        ProductSpace s({uni(1, 2), uni(1, 2)});
        Polarization d(MultiDegree{uni(1, 2), uni(1, 3)});
        std::vector<int> ks(static_cast<std::size_t>(uni(1, 4)));
        for (auto& k : ks) k = uni(-3, 3);
        const Multiset expected = normalize(ks);
        std::vector<MultiDegree> twists;
        for (int k : ks) twists.push_back(d.multiple(k));
        const auto cx = LineBundleComplex::direct_sum(s, twists);
        const auto w = split_window(s, d, expected.back().k, expected.front().k);
        auto table = cohomology_table(cx, w);
        SplitOptions opts;
        opts.torsion_free_asserted = true;
        const auto v = split_check_table(table, d, opts);
        const std::string label = "instance " + std::to_string(trial) + " " + s.str() + " d=" + d.d().str() + " " +
                                  multiset_str(expected) + " window " + w.str();
        c.require(v.kind == SplitVerdict::Kind::split, label + ": " + to_string(v.kind) + " " + v.reason);
        c.require(v.multiset == expected, label + ": got " + multiset_str(v.multiset));
        g_sheaves.push_back({"random sum " + std::to_string(trial), cx, d, std::move(table), expected});
    }
    const double secs = seconds_since(t0);
    c.require(secs < 600, "runtime " + std::to_string(secs) + " s");
    if (o.pass) o.detail = "20/20 random sums recovered exactly, " + std::to_string(secs) + " s";
    return o;
}

Outcome completeness() {
    Outcome o;
    Criterion c(o);
    ProductSpace s({1, 1});
    Polarization d(MultiDegree{1, 1});
    const auto w = Window::cube(2, -6, 6);
    int nonsplit = 0, split = 0;
    for (const auto& a : Window::cube(2, -3, 3).points()) {
        const auto cx = LineBundleComplex::direct_sum(s, {a});
        auto table = cohomology_table(cx, w);
        const auto v = split_check_table(table, d);
        if (a[0] != a[1]) {
            c.require(v.kind == SplitVerdict::Kind::nonsplit, "O" + a.str() + ": " + to_string(v.kind) + " " + v.reason);
            if (v.witness) {
                c.require(is_safe(s, d, v.witness->a), "witness " + v.witness->a.str() + " is not safe");
                c.require(v.witness->i > 0 && v.witness->i < 2, "witness index");
                c.require(table.is_known_nonzero(v.witness->a, v.witness->i), "witness cell is zero");
            }
            ++nonsplit;
        } else {
            c.require(v.kind == SplitVerdict::Kind::split && v.multiset == Multiset{{a[0], 1}},
                      "O" + a.str() + ": " + to_string(v.kind) + " " + multiset_str(v.multiset) + v.reason);
            ++split;
            g_sheaves.push_back({"O" + a.str(), cx, d, std::move(table), Multiset{{a[0], 1}}});
            continue;
        }
        if (a[0] - a[1] == 1 || a[0] - a[1] == -3)
            g_sheaves.push_back({"O" + a.str(), cx, d, std::move(table), std::nullopt});
    }
    if (o.pass)
        o.detail = std::to_string(nonsplit) + " non-diagonal twists NonSplit with safe witnesses, " +
                   std::to_string(split) + " diagonal twists Split {(k,1)}";
    return o;
}

// Adds one to a nonzero cell deep inside the window.
CohomologyTable sabotage(const CohomologyTable& t) {
    auto bad = t;
    const auto& w = t.window();
    MultiDegree mid(std::vector<int>(w.t()));
    for (std::size_t j = 0; j < w.t(); ++j) mid[j] = (w.lo()[j] + w.hi()[j]) / 2;
    auto h = CohomologyVector(static_cast<std::size_t>(t.m()) + 1);
    for (int i = 0; i <= t.m(); ++i) h[static_cast<std::size_t>(i)] = *t.known(mid, i);
    h[0] += 1;
    bad.set_computed(mid, h);
    return bad;
}

Outcome checksums() {
    Outcome o;
    Criterion c(o);
    std::size_t evaluated = 0, sabotaged = 0;
    for (const auto& sh : g_sheaves) {
        const auto& t = sh.table;
        const auto bs = supported_internal_degrees(t);
        c.require(!bs.empty(), sh.name + ": no internal degree with covered support");
        for (const auto& cv : tate_checksum_sweep(t)) {
            c.require(cv.value == 0, sh.name + ": tate checksum " + std::to_string(cv.value) + " at " + cv.b.str());
            ++evaluated;
        }
        const auto& w = t.window();
        std::vector<MultiDegree> corners{w.lo() + MultiDegree{2, 2}, MultiDegree{0, 0}, w.hi() - MultiDegree{2, 2}};
        for (const auto& corner : corners) {
            if (!w.contains(corner)) continue;
            for (const auto& cv : corner_checksum_sweep(t, corner)) {
                c.require(cv.value == 0, sh.name + ": corner checksum at c=" + corner.str() + " b=" + cv.b.str());
                ++evaluated;
            }
            const std::vector<std::array<FactorSet, 3>> strands{
                {FactorSet{0}, FactorSet{}, FactorSet{}}, {FactorSet{}, FactorSet{0}, FactorSet{}},
                {FactorSet{}, FactorSet{}, FactorSet{0}}, {FactorSet{1}, FactorSet{}, FactorSet{}},
                {FactorSet{}, FactorSet{1}, FactorSet{}}, {FactorSet{}, FactorSet{}, FactorSet{1}}};
            for (const auto& [I, J, K] : strands)
                for (const auto& b : bs) {
                    const auto v = strand_checksum(t, corner, I, J, K, b);
                    c.require(v == 0, sh.name + ": strand checksum at c=" + corner.str() + " b=" + b.str());
                    ++evaluated;
                }
        }
        const auto bad = sabotage(t);
        bool detected = false;
        for (const auto& cv : tate_checksum_sweep(bad)) detected = detected || cv.value != 0;
        c.require(detected, sh.name + ": sabotaged table passes the tate checksum");
        bool corner_detected = false, strand_detected = false;
        for (const auto& b : supported_internal_degrees(bad)) {
            for (const auto& corner : corners)
                if (w.contains(corner)) corner_detected = corner_detected || corner_checksum(bad, corner, b) != 0;
            strand_detected = strand_detected || strand_checksum(bad, corners[1], {}, {}, {0}, b) != 0 ||
                              strand_checksum(bad, corners[1], {0}, {}, {}, b) != 0;
        }
        c.require(corner_detected, sh.name + ": sabotaged table passes the corner checksums");
        c.require(strand_detected, sh.name + ": sabotaged table passes the strand checksums");
        ++sabotaged;
    }
    if (o.pass)
        o.detail = std::to_string(evaluated) + " checksums zero over " + std::to_string(g_sheaves.size()) +
                   " sheaves; " + std::to_string(sabotaged) + " sabotaged tables detected by all three";
    return o;
}

Outcome extremal() {
    Outcome o;
    Criterion c(o);
    std::size_t checked = 0;
    for (const auto& sh : g_sheaves) {
        if (!sh.expected) continue;
        const auto& space = sh.table.space();
        const int k = -sh.expected->back().k;
        const auto r = extremal_hm(sh.table, sh.d);
        const MultiDegree want = sh.d.multiple(k) + canonical_twist(space);
        c.require(r.positions == std::vector<MultiDegree>{want},
                  sh.name + ": extremal positions differ from " + want.str());
        c.require(r.of_theorem_form == k, sh.name + ": theorem-form k");
        c.require(r.certified, sh.name + ": extremality not certified");
        const auto gi = generator_inequality(sh.table, sh.d, k);
        c.require(gi.holds(), sh.name + ": h0 " + std::to_string(gi.h0) + " < hm " + std::to_string(gi.hm));
        ++checked;
    }
    c.require(checked >= 20, "too few split inputs");
    if (o.pass)
        o.detail = std::to_string(checked) + " split inputs: unique extremal position -k_min d - n - 1, h0 >= hm";
    return o;
}

Outcome propagation() {
    Outcome o;
    Criterion c(o);
    struct Inferred {
        std::size_t sheaf;
        MultiDegree a;
        int i;
    };
    std::vector<Inferred> pool;
    std::size_t inconsistencies = 0;
    for (std::size_t si = 0; si < g_sheaves.size(); ++si) {
        const auto& sh = g_sheaves[si];
        const auto& dims = sh.table.space().factor_dims();
        const int margin = *std::max_element(dims.begin(), dims.end()) + 1;
        const auto r = strand_propagate(sh.table, margin);
        inconsistencies += r.inconsistencies.size();
        c.require(r.consistent(), sh.name + ": " + (r.consistent() ? "" : r.inconsistencies.front().str()));
        for (const auto& [a, row] : r.table.rows())
            for (int i = 0; i <= sh.table.m(); ++i)
                if (row[static_cast<std::size_t>(i)].status == CellStatus::inferred_zero) pool.push_back({si, a, i});
    }
    c.require(pool.size() >= 1000, "only " + std::to_string(pool.size()) + " inferred cells");
    std::mt19937 rng(99);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min<std::size_t>(pool.size(), 1000));
    std::size_t contradictions = 0;
    for (const auto& cell : pool) {
        const auto h = hypercohomology(g_sheaves[cell.sheaf].complex, cell.a);
        if (h[static_cast<std::size_t>(cell.i)] != 0) {
            ++contradictions;
            c.require(false, g_sheaves[cell.sheaf].name + ": inferred h^" + std::to_string(cell.i) + "(F" +
                                 cell.a.str() + ") = 0 but recomputed " + std::to_string(h[static_cast<std::size_t>(cell.i)]));
        }
    }
    if (o.pass)
        o.detail = std::to_string(pool.size()) + " sampled inferred cells recomputed, " +
                   std::to_string(contradictions) + " contradictions, " + std::to_string(inconsistencies) +
                   " inconsistency reports";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"region tables on P2xP3", regions},
        {"embedding dimension of O(4,2) on P2xP3", embedding},
        {"closed formula equals Cech on [-6,6]^2", oracle},
        {"hypercohomology of the point and its ideal", hypercohomology_values},
        {"split soundness on random sums", soundness},
        {"line bundles on P1xP1", completeness},
        {"Tate exactness checksums", checksums},
        {"extremal position and generator inequality", extremal},
        {"strand propagation soundness", propagation},
    };
    int failed = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n) {
        Outcome o;
        try {
            o = criteria[n].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "criterion " << n + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[n].first << " - "
                  << o.detail << std::endl;
    }
    return failed ? 1 : 0;
}
