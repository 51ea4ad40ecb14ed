#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "tatesplit/cech.hpp"

using namespace tatesplit;

TEST_CASE("cech agrees with the closed formula on small products") {
    for (const auto& dims : std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {1, 2}}) {
        ProductSpace s(dims);
        for (const auto& a : Window::cube(s.t(), -5, 4).points()) {
            const auto b = MultiDegree::zero(s.t());
            CHECK_MESSAGE(cech_line_bundle_h(s, b, a) == line_bundle_h(s, a), s.str() << " " << a.str());
        }
    }
}

TEST_CASE("cech over the rationals matches F_p") {
    ProductSpace s({1, 2});
    CechOptions q;
    q.field = FieldSpec::rationals();
    for (const auto& a : Window::cube(2, -4, 2).points())
        CHECK(cech_line_bundle_h(s, MultiDegree{1, -1}, a, q) == line_bundle_h(s, a + MultiDegree{1, -1}));
}

TEST_CASE("truncation depth is the certified bound") {
    ProductSpace s({2, 3});
    CHECK(truncation_depth(s, {{0, 0}}, {-3, 1}) == std::vector<int>{1, 0});
    CHECK(truncation_depth(s, {{0, 0}, {-2, -2}}, {0, 0}) == std::vector<int>{0, 0});
    CHECK(truncation_depth(s, {{0, 0}, {-2, -6}}, {-1, 0}) == std::vector<int>{1, 3});
}

TEST_CASE("cech basis respects the cover") {
    ProductSpace s({1});
    CoverIndex idx{{0b01}};
    // degree -1 with x0 inverted to depth 2: x0^-1 x1^0 only, since x1 >= 0 and x0 >= -2 gives (-2,1),(-1,0)
    const auto basis = cech_basis(s, {0}, idx, {-1}, {2});
    CHECK(basis == std::vector<ExponentVector>{{-2, 1}, {-1, 0}});
    CHECK(CoverIndex{{0b11, 0b101}}.cech_degree() == 2);
}

TEST_CASE("Koszul point has h0 = 1 at every twist") {
    const auto c = fixtures::koszul_point();
    for (const auto& a : Window::cube(2, -3, 3).points())
        CHECK_MESSAGE((hypercohomology(c, a) == CohomologyVector{1, 0, 0}), a.str());
}

TEST_CASE("ideal sheaf of a point") {
    const auto c = fixtures::ideal_point();
    CHECK((hypercohomology(c, {1, 1}) == CohomologyVector{3, 0, 0}));
    CHECK((hypercohomology(c, {0, 0}) == CohomologyVector{0, 0, 0}));
    CHECK((hypercohomology(c, {-1, -1}) == CohomologyVector{0, 1, 0}));
    CechOptions q;
    q.field = FieldSpec::rationals();
    CHECK(hypercohomology(c, {-2, -2}, q) == hypercohomology(c, {-2, -2}));
}

TEST_CASE("cross-check prime and extra depth do not change values") {
    const auto c = fixtures::ideal_point();
    CechOptions o;
    o.cross_check_prime = 0;
    o.extra_depth = 2;
    CHECK(hypercohomology(c, {-3, 1}, o) == hypercohomology(c, {-3, 1}));
}

TEST_CASE("a complex that is not a resolution is rejected") {
    ProductSpace s({1, 1});
    // O in degree -1 with zero differential contributes H^{-1}.
    LineBundleComplex c(s, -1, {FreeSum{{{0, 0}}}, FreeSum{{{0, 0}}}}, {});
    CHECK_THROWS_AS(hypercohomology(c, {0, 0}), InputError);
}

TEST_CASE("serial and parallel tables agree") {
    const auto c = fixtures::ideal_point();
    CechOptions ser, par;
    ser.exec = Exec::serial;
    const auto w = Window::cube(2, -3, 3);
    CHECK(cohomology_table(c, w, ser) == cohomology_table(c, w, par));
}

TEST_CASE("truncating below the certified depth is detected") {
    ProductSpace s({1, 1});
    CechOptions o;
    o.extra_depth = -1;
    CHECK_THROWS_AS(cech_line_bundle_h(s, {0, 0}, {-3, -3}, o), TruncationError);
    o.stability_check = false;
    CHECK(cech_line_bundle_h(s, {0, 0}, {-3, -3}, o) != line_bundle_h(s, {-3, -3}));
}
