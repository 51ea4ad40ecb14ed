#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "tatesplit/cech.hpp"
#include "tatesplit/tate.hpp"

using namespace tatesplit;

namespace {
const ProductSpace P11({1, 1});

std::map<int, std::int64_t> dims(std::initializer_list<std::pair<const int, std::int64_t>> l) { return l; }
}  // namespace

TEST_CASE("Tate term dims of the structure sheaf") {
    const auto t = bott_table(P11, {{0, 0}}, Window::cube(2, -5, 5));
    CHECK(tate_term_dims(t, {0, 0}).dims == dims({{-2, 1}, {-1, 2}, {0, 1}}));
    CHECK(tate_checksum(t, {0, 0}) == 0);
    // Support box [-3,-1]^2: (-2,-2) weight 4, (-3,-2) and (-2,-3) weight 2 each with h^2 = 2, (-3,-3) weight 1 with h^2 = 4.
    CHECK(tate_term_dims(t, {-1, -1}).dims == dims({{-4, 4}, {-3, 8}, {-2, 4}}));
    CHECK(tate_term_dims(bott_table(P11, {}, Window::cube(2, -3, 3)), {0, 0}).dims.empty());
}

TEST_CASE("Tate profile symmetry under Serre duality") {
    // h^i(O(a)) = h^{m-i}(O(-a-n-1)) sends the box of b to the box of -b and d to -t-d.
    const auto t = bott_table(P11, {{0, 0}}, Window::cube(2, -8, 8));
    for (const auto& b : Window::cube(2, -3, 3).points()) {
        const MultiDegree dual = -b;
        const auto p = tate_term_dims(t, b), q = tate_term_dims(t, dual);
        std::map<int, std::int64_t> reflected;
        for (const auto& [d, v] : q.dims) reflected[-2 - d] = v;
        CHECK_MESSAGE(p.dims == reflected, b.str());
    }
}

TEST_CASE("support box outside the window is reported") {
    const auto t = bott_table(P11, {{0, 0}}, Window::cube(2, -1, 1));
    try {
        (void)tate_term_dims(t, {0, 0});
        FAIL("expected WindowError");
    } catch (const WindowError& e) {
        CHECK(!e.missing().empty());
        CHECK(std::find(e.missing().begin(), e.missing().end(), "(-2,-2)") != e.missing().end());
    }
}

TEST_CASE("checksums vanish on sheaves and detect corruption") {
    const auto w = Window::cube(2, -6, 6);
    for (const auto& twists : std::vector<std::vector<MultiDegree>>{{{0, 0}}, {{1, 1}, {-1, -1}}, {{1, 1}, {-2, -2}}}) {
        const auto t = bott_table(P11, twists, w);
        for (const auto& cv : tate_checksum_sweep(t)) CHECK(cv.value == 0);
        for (const auto& cv : corner_checksum_sweep(t, {-1, -1})) CHECK(cv.value == 0);
        for (const auto& cv : corner_checksum_sweep(t, {0, 0}, Exec::serial)) CHECK(cv.value == 0);
        for (const auto& b : supported_internal_degrees(t)) {
            CHECK(strand_checksum(t, {0, 0}, {}, {0}, {}, b) == 0);
            CHECK(strand_checksum(t, {1, -1}, {}, {}, {1}, b) == 0);
            CHECK(strand_checksum(t, {1, -1}, {1}, {}, {}, b) == 0);
        }
    }
    auto bad = bott_table(P11, {{0, 0}}, w);
    bad.set_computed({-1, 0}, {0, 1, 0});
    CHECK(tate_checksum(bad, {0, 0}) != 0);
    CHECK(corner_checksum(bad, {0, 1}, {0, 1}) != 0);
    CHECK(strand_checksum(bad, {-1, 0}, {}, {0}, {}, {0, 1}) != 0);
}

TEST_CASE("strand factor sets") {
    CHECK(strand_exactness_predicted(2, {}, {0}, {}));
    CHECK(!strand_exactness_predicted(2, {0}, {}, {1}));
    const auto t = bott_table(P11, {{0, 0}}, Window::cube(2, -4, 4));
    CHECK_THROWS_AS((void)strand_checksum(t, {0, 0}, {0}, {0}, {}, {0, 0}), InputError);
}

TEST_CASE("checksums on a cech table of the ideal sheaf") {
    const auto t = cohomology_table(fixtures::ideal_point(), Window::cube(2, -4, 4));
    for (const auto& cv : tate_checksum_sweep(t)) CHECK(cv.value == 0);
    for (const auto& cv : corner_checksum_sweep(t, {0, 0})) CHECK(cv.value == 0);
}

TEST_CASE("strand propagation is sound against closed formulas") {
    for (const auto& twists : std::vector<std::vector<MultiDegree>>{{{0, 0}}, {{0, -2}}, {{1, 1}, {-1, -1}}, {{2, -3}}}) {
        const auto t = bott_table(P11, twists, Window::cube(2, -3, 3));
        const auto r = strand_propagate(t, 3);
        CHECK(r.consistent());
        for (const auto& [a, row] : r.table.rows())
            for (int i = 0; i <= 2; ++i)
                if (row[static_cast<std::size_t>(i)].status == CellStatus::inferred_zero)
                    CHECK_MESSAGE(sum_line_bundles_h(P11, twists, a)[static_cast<std::size_t>(i)] == 0, a.str());
    }
}

TEST_CASE("propagation on O(0,0) infers below the window") {
    const auto r = strand_propagate(bott_table(P11, {{0, 0}}, Window::cube(2, -3, 3)), 2);
    CHECK(r.inferred > 0);
    // h^0 vanishes for every twist with a negative coordinate; below the window it is inferred.
    CHECK(r.table.cell({-4, 1}, 0).status == CellStatus::inferred_zero);
    CHECK(!r.table.cell({1, -4}, 1).known());
    // margin 0 never leaves the window
    CHECK(strand_propagate(bott_table(P11, {{0, 0}}, Window::cube(2, -3, 3))).inferred == 0);
}

TEST_CASE("all-zero table is stable") {
    const auto t = bott_table(P11, {}, Window::cube(2, -2, 2));
    const auto r = strand_propagate(t);
    CHECK(r.inferred == 0);
    CHECK(r.table == t);
}

TEST_CASE("sabotaged table triggers an inconsistency") {
    // O(0,-2): h^1(O(a1, a2-2)) is nonzero for a1 >= 0, a2 <= 0. Zero out one row so the rule fires wrongly.
    auto t = bott_table(P11, {{0, -2}}, Window::cube(2, -3, 3));
    for (int a1 = -3; a1 <= 3; ++a1) t.set_computed({a1, 0}, {0, 0, 0});
    const auto r = strand_propagate(t);
    CHECK(!r.consistent());
    CHECK(r.inconsistencies.front().str().find("computed value") != std::string::npos);
}
