#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "tatesplit/splitter.hpp"

using namespace tatesplit;

namespace {
const ProductSpace P11({1, 1});
const Polarization D11(MultiDegree{1, 1});
const Window W5 = Window::cube(2, -5, 5);
}  // namespace

TEST_CASE("hypothesis violations") {
    CHECK(hypothesis_violations(bott_table(P11, {{1, 1}, {0, 0}}, W5), D11).empty());
    const auto v = hypothesis_violations(bott_table(P11, {{1, 0}}, W5), D11);
    REQUIRE(!v.empty());
    CHECK(v.front() == CellRef{{-1, -2}, 1});
    CHECK(std::find(v.begin(), v.end(), CellRef{{-1, -2}, 1}) != v.end());
}

TEST_CASE("h^m monotonicity") {
    CHECK(!hm_monotonicity_check(bott_table(P11, {{1, -2}, {0, 3}}, W5)));
    CHECK(!hm_monotonicity_check(cohomology_table(fixtures::koszul_point(), Window::cube(2, -2, 2))));
    auto bad = bott_table(P11, {}, W5);
    bad.set_computed({-2, -2}, {0, 0, 1});
    const auto mv = hm_monotonicity_check(bad);
    REQUIRE(mv);
    CHECK(mv->nonzero == MultiDegree{-2, -2});
}

TEST_CASE("extremal h^m positions") {
    ProductSpace P23({2, 3});
    const auto t = bott_table(P23, {{0, 0}}, Window(MultiDegree{-6, -7}, MultiDegree{1, 1}));
    for (const auto& d : {MultiDegree{1, 1}, MultiDegree{2, 3}}) {
        const auto r = extremal_hm(t, Polarization(d));
        CHECK(r.positions == std::vector<MultiDegree>{{-3, -4}});
        CHECK(r.of_theorem_form == 0);
        CHECK(r.certified);
    }
    const auto r = extremal_hm(bott_table(P11, {{1, 1}, {-1, -1}}, W5), D11);
    CHECK(r.positions == std::vector<MultiDegree>{{-1, -1}});
    CHECK(r.of_theorem_form == 1);
    const auto small = extremal_hm(bott_table(P11, {{1, 1}, {-1, -1}}, Window::cube(2, -5, -2)), D11);
    CHECK(!small.certified);
}

TEST_CASE("multiplicities by h^0 descent") {
    auto ms = multiplicities(bott_table(P11, {{1, 1}, {-1, -1}}, W5), D11, -1);
    REQUIRE(ms.multiset);
    CHECK(*ms.multiset == Multiset{{1, 1}, {-1, 1}});
    ms = multiplicities(bott_table(P11, {{2, 2}, {2, 2}}, W5), D11);
    REQUIRE(ms.multiset);
    CHECK(*ms.multiset == Multiset{{2, 2}});
    const Polarization d12(MultiDegree{1, 2});
    ms = multiplicities(bott_table(P11, {{1, 2}}, W5), d12, 1);
    REQUIRE(ms.multiset);
    CHECK(*ms.multiset == Multiset{{1, 1}});
    // k_max at the window edge
    CHECK(!multiplicities(bott_table(P11, {{5, 5}}, W5), D11).multiset);
}

TEST_CASE("verify_split") {
    const auto t = bott_table(P11, {{1, 1}, {-1, -1}}, W5);
    CHECK(!verify_split(t, {{1, 1}, {-1, 1}}, D11));
    const auto mm = verify_split(bott_table(P11, {{1, 1}}, Window::cube(2, -1, 1)), {{0, 1}}, D11);
    REQUIRE(mm);
    CHECK(mm->a == MultiDegree{-1, -1});
    CHECK(mm->i == 0);
    CHECK(!verify_split(bott_table(P11, {}, W5), {}, D11));
}

TEST_CASE("split_check end to end") {
    auto v = split_check(LineBundleComplex::direct_sum(P11, {{1, 1}, {-1, -1}}), D11, W5);
    CHECK(v.kind == SplitVerdict::Kind::split);
    CHECK(v.multiset == Multiset{{1, 1}, {-1, 1}});
    CHECK(v.extremal_positions == std::vector<MultiDegree>{{-1, -1}});
    CHECK(!v.theorem_backed());

    v = split_check(LineBundleComplex::direct_sum(P11, {{1, 0}}), D11, W5);
    CHECK(v.kind == SplitVerdict::Kind::nonsplit);
    CHECK(v.witness == CellRef{{-1, -2}, 1});

    v = split_check(fixtures::ideal_point(), D11, W5);
    CHECK(v.kind == SplitVerdict::Kind::nonsplit);
    REQUIRE(v.witness);
    CHECK(v.witness->i == 1);

    SplitOptions opts;
    opts.torsion_free_asserted = true;
    v = split_check(LineBundleComplex::direct_sum(P11, {{0, 0}}), D11, Window::cube(2, -1, 1), opts);
    CHECK(v.kind == SplitVerdict::Kind::inconclusive);
    CHECK(v.reason.find("extremality uncertifiable") != std::string::npos);
}

TEST_CASE("verdict is stable under enlarging the window") {
    const auto c = LineBundleComplex::direct_sum(P11, {{2, 2}, {-1, -1}, {-1, -1}});
    const auto a = split_check(c, D11, W5), b = split_check(c, D11, Window::cube(2, -10, 10));
    CHECK(a.kind == b.kind);
    CHECK(a.multiset == b.multiset);
    CHECK(a.multiset == Multiset{{2, 1}, {-1, 2}});
}

TEST_CASE("split on P1 x P2 with mixed polarization") {
    ProductSpace s({1, 2});
    const Polarization d(MultiDegree{2, 1});
    const auto c = LineBundleComplex::direct_sum(s, {d.multiple(1), d.multiple(-2)});
    const auto v = split_check(c, d, Window(MultiDegree{-6, -6}, MultiDegree{5, 5}));
    CHECK(v.kind == SplitVerdict::Kind::split);
    CHECK(v.multiset == Multiset{{1, 1}, {-2, 1}});
}

TEST_CASE("generator inequality and t = 1 labelling") {
    const auto t = bott_table(P11, {{1, 1}, {-1, -1}}, W5);
    const auto gi = generator_inequality(t, D11, 1);
    CHECK(gi.holds());
    CHECK(gi.h0 == 10);
    CHECK(gi.hm == 1);
    CHECK_THROWS_AS((void)generator_inequality(t, D11, 6), WindowError);

    ProductSpace p2({2});
    const auto v = split_check(LineBundleComplex::direct_sum(p2, {{1}}), Polarization(MultiDegree{1}), Window::cube(1, -6, 6));
    CHECK(v.classical_mode);
    CHECK(v.kind == SplitVerdict::Kind::split);
    CHECK(verdict_summary(v).find("classical-Horrocks mode, criterion differs") != std::string::npos);
}

TEST_CASE("verdict JSON round trip") {
    for (const auto& twists : std::vector<std::vector<MultiDegree>>{{{1, 1}, {-1, -1}}, {{1, 0}}, {{0, 0}}}) {
        const auto w = twists.size() == 1 && twists[0] == MultiDegree{0, 0} ? Window::cube(2, -1, 1) : W5;
        const auto v = split_check(LineBundleComplex::direct_sum(P11, twists), D11, w);
        const auto j = verdict_to_json(v);
        CHECK(verdict_from_json(nlohmann::json::parse(j.dump())) == v);
    }
}
