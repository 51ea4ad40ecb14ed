#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "tatesplit/cech.hpp"
#include "tatesplit/io.hpp"
#include "tatesplit/tate.hpp"

using namespace tatesplit;
using nlohmann::json;

#ifndef TATESPLIT_DATA_DIR
#define TATESPLIT_DATA_DIR "data"
#endif

namespace {
std::string data(const std::string& name) { return std::string(TATESPLIT_DATA_DIR) + "/" + name; }
ComplexInput load(const std::string& name) { return complex_from_json(parse_json_text(read_text(data(name)), name)); }
}  // namespace

TEST_CASE("complex JSON round trip") {
    for (const auto& c : {fixtures::koszul_point(), fixtures::ideal_point(),
                          LineBundleComplex::direct_sum(ProductSpace({1, 2}), {{1, -1}, {0, 0}})}) {
        const auto j = complex_to_json(c, FieldSpec::rationals());
        const auto back = complex_from_json(json::parse(j.dump()));
        CHECK(back.complex == c);
        CHECK(back.field == FieldSpec::rationals());
    }
}

TEST_CASE("shipped example files") {
    CHECK(load("koszul_point.json").complex == fixtures::koszul_point());
    CHECK(load("ideal_point.json").complex == fixtures::ideal_point());
    CHECK(load("ideal_point.json").field == FieldSpec::rationals());
    CHECK(load("split_11_m1m1.json").complex.term(0).rank() == 2);
    CHECK_THROWS_AS(load("not_a_complex.json"), InputError);
    try {
        (void)load("malformed.json");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
}

TEST_CASE("schema errors") {
    const auto base = complex_to_json(fixtures::ideal_point());
    auto bad = base;
    bad["complex"]["terms"][0]["twists"][0] = {1, 2, 3};
    CHECK_THROWS_AS(complex_from_json(bad), InputError);
    bad = base;
    bad["complex"]["diffs"][0]["entries"] = json::array({json::array({0})});
    CHECK_THROWS_AS(complex_from_json(bad), InputError);
    bad = base;
    bad["field"] = "p:12";
    CHECK_THROWS_AS(complex_from_json(bad), InputError);
    bad = base;
    bad["complex"]["diffs"][0]["entries"][0][0]["terms"][0]["c"] = 1.5;
    CHECK_THROWS_AS(complex_from_json(bad), InputError);
    bad = base;
    bad["complex"]["diffs"][0]["entries"][0][0]["terms"][0]["c"] = "2/4";
    CHECK_NOTHROW(complex_from_json(bad));
    CHECK_THROWS_AS(complex_from_json(json::array()), InputError);
    CHECK_THROWS_AS(complex_from_json(json{{"space", {{"factor_dims", {1}}}}}), InputError);
}

TEST_CASE("polynomial JSON") {
    const ProductSpace s({1, 1});
    const auto f = poly_add(poly_mult(fixtures::var(s, 0, 0), fixtures::var(s, 1, 1)).scaled(mpq_class(3, 2)),
                            poly_mult(fixtures::var(s, 0, 1), fixtures::var(s, 1, 0)));
    const auto j = poly_to_json(s, f);
    CHECK(poly_from_json(s, j) == f);
    CHECK(j["terms"][0]["e"].size() == 2);
}

TEST_CASE("table JSON and CSV") {
    const auto t = cohomology_table(fixtures::ideal_point(), Window::cube(2, -2, 2));
    CHECK(table_from_json(json::parse(table_to_json(t).dump())) == t);
    const auto csv = table_to_csv(t);
    CHECK(csv.rfind("a1,a2,i,dim,status\n-2,-2,0,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 25 * 3);

    // inferred cells outside the window survive the round trip
    const auto p = strand_propagate(bott_table(ProductSpace({1, 1}), {{0, 0}}, Window::cube(2, -3, 3)), 2);
    REQUIRE(p.inferred > 0);
    const auto back = table_from_json(json::parse(table_to_json(p.table).dump()));
    CHECK(back == p.table);
    CHECK(table_to_csv(p.table).find("inferred_zero") != std::string::npos);

    auto bad = table_to_json(t);
    bad["cells"][0]["status"] = "guessed";
    CHECK_THROWS_AS(table_from_json(bad), InputError);
    bad = table_to_json(t);
    bad["cells"][0]["dim"] = -1;
    CHECK_THROWS_AS(table_from_json(bad), InputError);
}

TEST_CASE("table outputs are deterministic") {
    CechOptions ser;
    ser.exec = Exec::serial;
    const auto c = fixtures::koszul_point();
    const auto w = Window::cube(2, -2, 2);
    CHECK(table_to_json(cohomology_table(c, w)).dump() == table_to_json(cohomology_table(c, w, ser)).dump());
    CHECK(table_to_text(cohomology_table(c, Window::cube(2, 0, 0))) == "h^*(F(0,0)) = (1, 0, 0)\n");
}
