#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "tatesplit/bott.hpp"
#include "tatesplit/lattice.hpp"

using namespace tatesplit;

TEST_CASE("multidegree arithmetic and order") {
    const MultiDegree a{1, -2}, b{0, 3};
    CHECK(a + b == MultiDegree{1, 1});
    CHECK(a - b == MultiDegree{1, -5});
    CHECK(-a == MultiDegree{-1, 2});
    CHECK(a.scaled(3) == MultiDegree{3, -6});
    CHECK(a.total() == -1);
    CHECK(b < a);
    CHECK(a.str() == "(1,-2)");
    CHECK(leq(MultiDegree{0, 0}, MultiDegree{0, 1}));
    CHECK(!leq(MultiDegree{1, 0}, MultiDegree{0, 1}));
    CHECK(lt(MultiDegree{0, 0}, MultiDegree{0, 1}));
    CHECK(!lt(b, b));
}

TEST_CASE("spaces, polarizations and windows") {
    ProductSpace s({2, 3});
    CHECK(s.m() == 5);
    CHECK(s.num_vars() == 7);
    CHECK(s.var_offset(1) == 3);
    CHECK_THROWS_AS(ProductSpace({0, 1}), InputError);
    CHECK_THROWS_AS(ProductSpace({}), InputError);
    CHECK_THROWS_AS(Polarization(MultiDegree{1, 0}), InputError);
    CHECK(canonical_twist(ProductSpace({1, 1})) == MultiDegree{-2, -2});
    CHECK(canonical_twist(s) == MultiDegree{-3, -4});
    CHECK(canonical_twist(ProductSpace({1, 1, 2})) == MultiDegree{-2, -2, -3});

    Window w(MultiDegree{-1, 0}, MultiDegree{1, 2});
    CHECK(w.count() == 9);
    CHECK(w.points().front() == MultiDegree{-1, 0});
    CHECK(w.points()[1] == MultiDegree{-1, 1});
    for (std::size_t i = 0; i < w.count(); ++i) CHECK(w.index_of(w.at(i)) == i);
    CHECK(w.contains(MultiDegree{0, 2}));
    CHECK(!w.contains(MultiDegree{0, 3}));
    CHECK(w.extended_below(2) == Window(MultiDegree{-3, -2}, MultiDegree{1, 2}));
    CHECK(w.str() == "-1:1,0:2");
    CHECK_THROWS_AS(Window(MultiDegree{1}, MultiDegree{0}), InputError);
}

TEST_CASE("embedding dimension") {
    CHECK(embedding_dimension(ProductSpace({2, 3}), Polarization(MultiDegree{4, 2})) == 149);
    CHECK(embedding_dimension(ProductSpace({1, 1}), Polarization(MultiDegree{1, 1})) == 3);
}

TEST_CASE("intermediate k range") {
    ProductSpace s({1, 1});
    Polarization d(MultiDegree{1, 1});
    CHECK(intermediate_k_range(s, d, {0, 0}).empty());
    CHECK(intermediate_k_range(s, d, {-3, 0}) == std::vector<int>{0, 1});
    CHECK(intermediate_k_range(s, d, {-1, -2}).empty());
    // brute force against the signature over a wide k range
    for (const auto& a : Window::cube(2, -6, 6).points()) {
        std::vector<int> brute;
        for (int k = -20; k <= 20; ++k)
            if (signature(s, d.multiple(k) + a).intermediate(2)) brute.push_back(k);
        CHECK(intermediate_k_range(s, d, a) == brute);
    }
}

TEST_CASE("safe region") {
    ProductSpace s({1, 1});
    Polarization d(MultiDegree{1, 1});
    const auto w = Window::cube(2, -4, 4);
    const auto region = safe_region(s, d, w);
    std::vector<MultiDegree> band;
    for (const auto& a : w.points())
        if (std::abs(a[0] - a[1]) <= 1) band.push_back(a);
    CHECK(region == band);
    CHECK(safe_region(s, d, w, Exec::serial) == region);
    CHECK(is_safe(s, d, {-2, -2}));

    ProductSpace p23({2, 3});
    Polarization d42(MultiDegree{4, 2});
    const auto r2 = safe_region(p23, d42, Window::cube(2, -10, 2));
    CHECK(!r2.empty());
    CHECK(std::find(r2.begin(), r2.end(), MultiDegree{-3, 0}) == r2.end());
    // shift invariance a -> a + d
    for (const auto& a : r2)
        if (a[0] + 4 <= 2 && a[1] + 2 <= 2) CHECK(is_safe(p23, d42, a + d42.d()));
}

TEST_CASE("region rendering") {
    ProductSpace s({2, 3});
    const Window w(MultiDegree{-5, -5}, MultiDegree{1, 2});
    const std::string full = render_region(nonvanishing_region(s, w, false), w);
    CHECK(full ==
          "###..##\n###..##\n###..##\n.......\n.......\n.......\n###..##\n###..##\n");
    const std::string inter = render_region(nonvanishing_region(s, w, true), w);
    CHECK(inter ==
          "###....\n###....\n###....\n.......\n.......\n.......\n.....##\n.....##\n");
    CHECK(render_region({}, Window::cube(2, 0, 1)) == "..\n..\n");
    const auto csv = render_region({{0, 0}}, Window::cube(2, 0, 1), RenderFormat::csv);
    CHECK(csv.rfind("a1,a2,member\n", 0) == 0);
    const auto js = nlohmann::json::parse(render_region({{0, 0}}, Window::cube(2, 0, 1), RenderFormat::json));
    CHECK(js.contains("rows"));
    CHECK_THROWS_AS(render_region({}, Window::cube(3, 0, 1)), InputError);
    CHECK(render_region({{0, 1, 0}}, Window::cube(3, 0, 1), RenderFormat::ascii, std::vector<int>{0}) == "#.\n..\n");
}

TEST_CASE("line bundle cohomology") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(2, 5) == 0);
    CHECK(binomial_poly(-1, 2) == 1);
    CHECK(factor_h(1, -2) == CohomologyVector{0, 1});
    CHECK(factor_h(2, 1) == CohomologyVector{3, 0, 0});
    CHECK(factor_h(2, -1) == CohomologyVector{0, 0, 0});
    ProductSpace p23({2, 3});
    CHECK(line_bundle_h(p23, {-3, 1})[2] == 4);
    CHECK(line_bundle_h(p23, {-3, -4})[5] == 1);
    CHECK(line_bundle_h(ProductSpace({1, 1}), {-2, -2}) == CohomologyVector{0, 0, 1});
    CHECK(line_bundle_h(p23, {4, 2})[0] == 150);
    for (const auto& a : Window::cube(2, -6, 6).points()) {
        const auto h = line_bundle_h(p23, a);
        std::int64_t chi = 0;
        for (std::size_t i = 0; i < h.size(); ++i) chi += (i % 2 ? -1 : 1) * h[i];
        CHECK(chi == euler_characteristic(p23, a));
        // Serre duality
        const auto dual = line_bundle_h(p23, -a + canonical_twist(p23));
        for (std::size_t i = 0; i < h.size(); ++i) CHECK(h[i] == dual[h.size() - 1 - i]);
    }
    const auto sig = signature(p23, {-3, 1});
    CHECK(sig.index == 2);
    CHECK(sig.factors == std::vector<std::size_t>{0});
    CHECK(sig.intermediate(5));
    CHECK(sum_line_bundles_h(ProductSpace({1, 1}), {{1, 1}, {-1, -1}}, {1, 1})[0] == 10);
}
