#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "tatesplit/bott.hpp"
#include "tatesplit/coxring.hpp"
#include "tatesplit/linalg.hpp"

using namespace tatesplit;
using fixtures::var;

namespace {
const ProductSpace P11({1, 1});

template <class F>
std::vector<std::vector<typename F::value_type>> matmul(const std::vector<std::vector<typename F::value_type>>& a,
                                                       const std::vector<std::vector<typename F::value_type>>& b,
                                                       std::size_t inner, const F& f) {
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    std::vector<std::vector<typename F::value_type>> c(a.size(), std::vector<typename F::value_type>(cols, f.zero()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t j = 0; j < cols; ++j) c[i][j] = f.add(c[i][j], f.mul(a[i][k], b[k][j]));
    return c;
}
}  // namespace

TEST_CASE("fields") {
    CHECK(FieldSpec::parse("q").kind == FieldSpec::Kind::rationals);
    CHECK(FieldSpec::parse("p:101").p == 101);
    CHECK(FieldSpec{}.p == 65521);
    CHECK(FieldSpec::parse("p:65521").str() == "p:65521");
    CHECK_THROWS_AS(FieldSpec::parse("p:100"), InputError);
    CHECK_THROWS_AS(FieldSpec::parse("r"), InputError);
    CHECK(is_prime_number(2147483629ULL));
    ModP f{7};
    CHECK(f.mul(f.inv(3), 3) == 1);
    CHECK(f.from_int(-1) == 6);
    CHECK(f.from_rational(mpq_class(1, 2)) == 4);
    CHECK_THROWS_AS(f.from_rational(mpq_class(1, 7)), InputError);
    CHECK(f.lift(6) == -1);
    CHECK(parse_coefficient("-3/6") == mpq_class(-1, 2));
    CHECK(format_coefficient(mpq_class(-1, 2)) == "-1/2");
    CHECK_THROWS_AS(parse_coefficient("1/0"), InputError);
}

TEST_CASE("ranks agree between sparse, fraction-free and dense paths") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> val(-2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 1 + trial % 6, cols = 1 + (trial * 5) % 7;
        std::vector<std::vector<mpq_class>> dense(rows, std::vector<mpq_class>(cols));
        std::vector<SparseRow<mpq_class>> sq;
        std::vector<SparseRow<std::uint64_t>> sp;
        ModP f{65521};
        for (std::size_t r = 0; r < rows; ++r) {
            SparseRow<mpq_class> rq;
            SparseRow<std::uint64_t> rp;
            for (std::size_t c = 0; c < cols; ++c) {
                const int v = trial % 3 == 0 && r > 0 ? static_cast<int>(dense[0][c].get_num().get_si()) * 2 : val(rng);
                dense[r][c] = v;
                if (v) {
                    rq.emplace_back(static_cast<std::uint32_t>(c), mpq_class(v, 3));
                    rp.emplace_back(static_cast<std::uint32_t>(c), f.from_int(v));
                }
            }
            sq.push_back(rq);
            sp.push_back(rp);
        }
        const auto rk = dense_rank(dense, cols, Rat{});
        CHECK(sparse_rank(sq, cols, Rat{}) == rk);
        CHECK(sparse_rank(sp, cols, f) == rk);
        const auto ker = kernel_basis(dense, cols, Rat{});
        CHECK(ker.size() == cols - rk);
        for (const auto& v : ker)
            for (const auto& row : dense) {
                mpq_class s = 0;
                for (std::size_t c = 0; c < cols; ++c) s += row[c] * v[c];
                CHECK(s == 0);
            }
    }
}

TEST_CASE("polynomial arithmetic") {
    ProductSpace p1({1});
    const auto x0 = var(p1, 0, 0), x1 = var(p1, 0, 1);
    const auto prod = poly_mult(x0, x1);
    CHECK(prod.degree() == MultiDegree{2});
    CHECK(prod.terms().size() == 1);
    const auto diff = poly_mult(poly_add(x0, x1), poly_add(x0, -x1));
    CHECK(diff == poly_add(poly_mult(x0, x0), -poly_mult(x1, x1)));
    CHECK(poly_mult(x0, MultiHomogPoly(MultiDegree{1})).is_zero());
    CHECK(var(P11, 0, 1).str(P11) == "x1_1");
    CHECK(poly_mult(var(P11, 0, 0), var(P11, 1, 1)).str(P11) == "x1_0*x2_1");
    CHECK_THROWS_AS(MultiHomogPoly(p1, MultiDegree{2}, {Term{1, {1, 0}}}), InputError);
}

TEST_CASE("complex validation") {
    CHECK(validate_complex(fixtures::koszul_point()).empty());
    CHECK(validate_complex(LineBundleComplex::direct_sum(P11, {{2, 2}})).empty());
    auto c = fixtures::koszul_point();
    auto diffs = c.diffs();
    diffs[0].at(1, 0) = var(P11, 0, 1);  // sign flipped
    const auto v = validate_complex(LineBundleComplex(P11, -2, c.terms(), diffs));
    REQUIRE(!v.empty());
    CHECK(v.front().kind == Violation::Kind::not_a_complex);
    CHECK(v.front().p == -2);
    // wrong entry degree
    auto d2 = c.diffs();
    d2[1].at(0, 0) = var(P11, 1, 1);
    CHECK(!validate_complex(LineBundleComplex(P11, -2, c.terms(), d2)).empty());
}

TEST_CASE("graded bases") {
    CHECK(graded_basis(P11, FreeSum{{{0, 0}}}, {1, 1}).size() == 4);
    CHECK(graded_basis(P11, FreeSum{{{-1, 0}, {0, -1}}}, {0, 0}).empty());
    CHECK(graded_basis(P11, FreeSum{{{-1, 0}, {0, -1}}}, {1, 1}).size() == 4);
    CHECK(graded_basis(P11, FreeSum{{{-1, 0}, {0, -1}}}, {-1, -1}).empty());
    CHECK(graded_basis(P11, FreeSum{{{1, 0}}}, {2, 1}).size() == 8);
    ProductSpace p23({2, 3});
    for (const auto& a : Window::cube(2, -1, 3).points())
        CHECK(static_cast<std::int64_t>(graded_basis(p23, FreeSum{{{0, 1}}}, a).size()) ==
              line_bundle_h(p23, a + MultiDegree{0, 1})[0]);
    const auto b = graded_basis(P11, FreeSum{{{0, 0}, {1, 0}}}, {0, 0});
    REQUIRE(b.size() == 3);
    CHECK(b[0].summand == 0);
    CHECK(b[1].summand == 1);
}

TEST_CASE("multiplication matrices") {
    ModP f{65521};
    const auto x1 = var(P11, 0, 1);
    const auto m = mult_matrix(P11, x1, {-1, 0}, {0, 0}, {1, 0}, f);
    CHECK(m.size() == 2);  // target O(0,0) at (1,0): x0, x1
    CHECK(m[0].size() == 1);
    // lexicographic exponent order lists x1 before x0
    CHECK(m[0][0] == 1);
    CHECK(m[1][0] == 0);
    const auto z = mult_matrix(P11, MultiHomogPoly(MultiDegree{1, 0}), {-1, 0}, {0, 0}, {1, 1}, f);
    CHECK(z.size() == 4);
    CHECK(z[0].size() == 2);
    CHECK_THROWS_AS(mult_matrix(P11, poly_mult(var(P11, 0, 0), var(P11, 0, 1)), {-1, 0}, {0, 0}, {1, 1}, f),
                    InputError);

    // functoriality on random polynomials
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-3, 3);
    auto random_poly = [&](const MultiDegree& deg) {
        std::vector<Term> terms;
        for (const auto& e : monomials_of_degree(P11, deg)) terms.push_back({c(rng), e});
        return MultiHomogPoly(P11, deg, terms);
    };
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = random_poly({1, 0}), h = random_poly({0, 2});
        const MultiDegree a{trial % 3, trial % 2};
        const auto mg = mult_matrix(P11, g, {0, 0}, {1, 0}, a, Rat{});
        const auto mh = mult_matrix(P11, h, {1, 0}, {1, 2}, a, Rat{});
        const auto mhg = mult_matrix(P11, poly_mult(h, g), {0, 0}, {1, 2}, a, Rat{});
        CHECK(matmul(mh, mg, mg.size(), Rat{}) == mhg);
    }
}

TEST_CASE("windowed syzygies") {
    const FreeSum src{{{-1, 0}, {0, -1}}}, tgt{{{0, 0}}};
    const auto m = fixtures::matrix(src, tgt, {var(P11, 0, 1), var(P11, 1, 1)});
    const auto syz = syzygies_in_window(P11, m, src, tgt, Window::cube(2, 0, 2), FieldSpec::rationals());
    REQUIRE(syz.size() == 1);
    CHECK(syz[0].degree == MultiDegree{1, 1});
    REQUIRE(syz[0].generators.size() == 1);
    const auto& g = syz[0].generators[0];
    // proportional to (-y1, x1)
    const auto combo = poly_add(poly_mult(g[0], var(P11, 0, 1)), poly_mult(g[1], var(P11, 1, 1)));
    CHECK(combo.is_zero());
    CHECK(!g[0].is_zero());

    const FreeSum one{{{0, 0}}};
    auto id = PolyMatrix::zero(one, one);
    id.at(0, 0) = MultiHomogPoly::constant(P11, 1);
    CHECK(syzygies_in_window(P11, id, one, one, Window::cube(2, 0, 2), FieldSpec{}).empty());
    const auto zero = syzygies_in_window(P11, PolyMatrix::zero(one, one), one, one, Window::cube(2, 0, 1), FieldSpec{});
    REQUIRE(!zero.empty());
    CHECK(zero.front().degree == MultiDegree{0, 0});
}
