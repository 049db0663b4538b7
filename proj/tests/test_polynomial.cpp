#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minsurf/errors.hpp"
#include "minsurf/poly_json.hpp"
#include "minsurf/polynomial.hpp"
#include "test_support.hpp"

using namespace minsurf;
using minsurf::testing::Gen;

namespace {

// Interleaved layout in R^4: x1, y1, x2, y2.
Polynomial v4(std::size_t i) {
    return Polynomial::variable(4, i);
}
const Polynomial X1 = v4(0), Y1 = v4(1), X2 = v4(2), Y2 = v4(3);
const Polynomial clifford = X1 * Y2 - Y1 * X2;

}  // namespace

TEST_CASE("rationals are canonical") {
    auto q = make_rational(2, -4);
    CHECK(q.get_num() == -1);
    CHECK(q.get_den() == 2);
    auto zero = make_rational(0, 7);
    CHECK(zero.get_num() == 0);
    CHECK(zero.get_den() == 1);
    CHECK(parse_rational("6/4") == make_rational(3, 2));
    CHECK(parse_rational("-123456789012345678901234567890") ==
          Rational(Integer("-123456789012345678901234567890")));
    CHECK_THROWS_AS(make_rational(1, 0), UsageError);
    CHECK_THROWS_AS(parse_rational("abc"), UsageError);
}

TEST_CASE("ring operations") {
    CHECK((X1 + Y1) + (X1 - Y1) == Rational(2) * X1);
    CHECK((X1 + Y1) * (X1 - Y1) == X1 * X1 - Y1 * Y1);
    CHECK(clifford + Polynomial(4) == clifford);
    CHECK((clifford - clifford).is_zero());
    CHECK(-(-clifford) == clifford);
    CHECK((clifford * Rational(0)).is_zero());
    CHECK(clifford.pow(0) == Polynomial::constant(4, Rational(1)));
    CHECK(clifford.pow(3) == clifford * clifford * clifford);

    CHECK_THROWS_AS(clifford + Polynomial::variable(3, 0), UsageError);
    CHECK_THROWS_AS(clifford * Polynomial::variable(3, 0), UsageError);
    CHECK_THROWS_AS(Polynomial::variable(4, 4), UsageError);
}

TEST_CASE("canonical form: sorted by descending grlex, no zero terms") {
    Polynomial p(2, {{Monomial({0, 1}), Rational(1)},
                     {Monomial({2, 0}), Rational(3)},
                     {Monomial({0, 1}), Rational(-1)},
                     {Monomial({1, 1}), Rational(5)},
                     {Monomial({0, 0}), Rational(0)}});
    REQUIRE(p.size() == 2);
    CHECK(p.terms()[0].monomial == Monomial({2, 0}));
    CHECK(p.terms()[1].monomial == Monomial({1, 1}));
    CHECK_THROWS_AS(Polynomial(2, {{Monomial({1, 0, 0}), Rational(1)}}), UsageError);
}

TEST_CASE("partial derivatives") {
    CHECK(partial(X1 * X1 * Y2, 0) == Rational(2) * X1 * Y2);
    CHECK(partial(clifford, 3) == X1);
    CHECK(partial(Polynomial::constant(4, Rational(7)), 0).is_zero());
    CHECK_THROWS_AS(partial(clifford, 4), UsageError);
}

TEST_CASE("evaluation") {
    std::vector<Rational> pt{Rational(1), Rational(2), Rational(3), Rational(4)};
    CHECK(evaluate(clifford, pt) == -2);
    std::vector<double> fpt{1, 2, 3, 4};
    CHECK(evaluate(clifford, fpt) == -2.0);

    Gen gen(11);
    for (int i = 0; i < 20; ++i) {
        auto p = gen.polynomial(3);
        std::vector<Rational> origin(3, Rational(0));
        CHECK(evaluate(p, origin) == p.constant_term());
    }

    auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
    auto t1 = x * x - y * y;
    std::vector<Rational> at{Rational(3), Rational(1)};
    CHECK(evaluate(t1, at) == 8);

    CHECK_THROWS_AS(evaluate(clifford, std::vector<double>{1, 2}), UsageError);
}

TEST_CASE("linear substitution") {
    using Matrix = std::vector<std::vector<Rational>>;
    Matrix identity(4, std::vector<Rational>(4, Rational(0)));
    for (int i = 0; i < 4; ++i) identity[i][i] = 1;
    CHECK(substitute_linear(clifford, identity) == clifford);

    Matrix half = identity;
    for (int i = 0; i < 4; ++i) half[i][i] = make_rational(1, 2);
    CHECK(substitute_linear(clifford, half) == make_rational(1, 4) * clifford);

    Matrix swap = identity;
    swap[0][0] = swap[1][1] = 0;
    swap[0][1] = swap[1][0] = 1;
    CHECK(substitute_linear(clifford, swap) == Y1 * Y2 - X1 * X2);

    CHECK_THROWS_AS(substitute_linear(clifford, Matrix(3, std::vector<Rational>(3))), UsageError);
}

TEST_CASE("exact division") {
    auto q = divide_exact(Rational(2) * clifford, clifford);
    REQUIRE(q);
    CHECK(*q == Polynomial::constant(4, Rational(2)));
    CHECK_FALSE(divide_exact(X1, Y1));
    CHECK_THROWS_AS(divide(X1, Polynomial(4)), UsageError);

    // The residual of the Clifford cone, written out by hand:
    // grad P = (y2, -x2, -y1, x1), |grad P|^2 = |z|^2, laplacian 0,
    // inf-laplacian = 2 (P_x1 P_y2 - P_y1 P_x2) = 2P, residual = -2P.
    auto residual = Polynomial::constant(4, Rational(0)) - Rational(2) * clifford;
    auto cq = divide_exact(residual, clifford);
    REQUIRE(cq);
    CHECK(*cq == Polynomial::constant(4, Rational(-2)));
}

TEST_CASE("homogeneous degree") {
    CHECK(homogeneous_degree(clifford) == 2u);
    CHECK_FALSE(homogeneous_degree(X1 * X1 + Y1));
    CHECK(homogeneous_degree(Y2 * (X1 * X1 - Y1 * Y1) - X2 * (Rational(2) * X1 * Y1)) == 3u);
    CHECK(homogeneous_degree(Polynomial::constant(4, Rational(3))) == 0u);
    CHECK_THROWS_AS(homogeneous_degree(Polynomial(4)), UsageError);
}

TEST_CASE("property: ring laws") {
    Gen gen(1);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = gen.polynomial(3), b = gen.polynomial(3), c = gen.polynomial(3);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
    }
}

TEST_CASE("property: derivative is linear and satisfies Leibniz") {
    Gen gen(2);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = gen.polynomial(3, 4, 3), b = gen.polynomial(3, 4, 3);
        auto s = gen.rational();
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(partial(a * b, i) == partial(a, i) * b + a * partial(b, i));
            CHECK(partial(a + s * b, i) == partial(a, i) + s * partial(b, i));
        }
    }
}

TEST_CASE("property: division soundness") {
    Gen gen(3);
    for (int trial = 0; trial < 150; ++trial) {
        auto d = gen.nonzero_polynomial(3, 3, 2);
        auto q = gen.polynomial(3, 4, 2);
        auto exact = divide_exact(q * d, d);
        REQUIRE(exact);
        CHECK(*exact * d == q * d);
        CHECK(*exact == q);

        // A remainder with no term divisible by LT(d) is recovered exactly and
        // makes the product non-divisible.
        const auto& lead = d.leading_term().monomial;
        std::vector<Term> rem_terms;
        for (int t = 0; t < 3; ++t) {
            auto m = gen.monomial(3, 3);
            if (!lead.divides(m)) rem_terms.push_back({m, gen.nonzero_rational()});
        }
        Polynomial s(3, rem_terms);
        if (s.is_zero()) continue;
        auto [quot, rem] = divide(q * d + s, d);
        CHECK(rem == s);
        CHECK(quot == q);
        CHECK_FALSE(divide_exact(q * d + s, d));
    }
}

TEST_CASE("property: Euler identity for homogeneous polynomials") {
    Gen gen(4);
    for (int trial = 0; trial < 100; ++trial) {
        unsigned d = static_cast<unsigned>(gen.integer(0, 5));
        auto p = gen.homogeneous(4, d);
        if (p.is_zero()) continue;
        REQUIRE(homogeneous_degree(p) == d);
        Polynomial euler(4);
        for (std::size_t i = 0; i < 4; ++i) euler += Polynomial::variable(4, i) * partial(p, i);
        CHECK(euler == Rational(d) * p);
    }
}

TEST_CASE("property: linear substitution is a ring homomorphism") {
    Gen gen(5);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::vector<Rational>> m(3, std::vector<Rational>(3));
        for (auto& row : m)
            for (auto& v : row) v = gen.rational(3, 2);
        auto a = gen.polynomial(3, 3, 2), b = gen.polynomial(3, 3, 2);
        CHECK(substitute_linear(a * b, m) == substitute_linear(a, m) * substitute_linear(b, m));
        CHECK(substitute_linear(a + b, m) == substitute_linear(a, m) + substitute_linear(b, m));
        // Pointwise: (p o M)(z) = p(M z).
        auto z = gen.rational_point(3);
        std::vector<Rational> mz(3, Rational(0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) mz[i] += m[i][j] * z[j];
        CHECK(evaluate(substitute_linear(a, m), z) == evaluate(a, mz));
    }
}

TEST_CASE("naming") {
    auto n5 = VariableNaming::interleaved(5);
    CHECK(n5.names() == std::vector<std::string>{"x1", "y1", "x2", "y2", "z"});
    CHECK(n5.index("y2") == 3);
    CHECK_THROWS_AS(n5.index("w"), UsageError);
    CHECK_THROWS_AS(VariableNaming({"a", "a"}), UsageError);
    CHECK(to_string(clifford) == "x1*y2 - y1*x2");
    CHECK(to_string(Polynomial(4)) == "0");
    CHECK(to_string(make_rational(-3, 2) * X1 * X1 + Polynomial::constant(4, Rational(1))) == "-3/2*x1^2 + 1");
}

TEST_CASE("polynomial JSON schema") {
    auto p = clifford + make_rational(-1, 3) * Polynomial::constant(4, Rational(1));
    const std::string expected =
        R"({"nvars":4,"names":["x1","y1","x2","y2"],"terms":[)"
        R"({"num":"1","den":"1","exps":[1,0,0,1]},)"
        R"({"num":"-1","den":"1","exps":[0,1,1,0]},)"
        R"({"num":"-1","den":"3","exps":[0,0,0,0]}]})";
    CHECK(to_json(p).dump() == expected);
    CHECK(polynomial_from_json(Json::parse(expected)) == p);

    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"nvars":2,"terms":[{"num":"1","den":"0","exps":[1,0]}]})")),
                    UsageError);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"nvars":2,"terms":[{"num":"1","den":"1","exps":[1]}]})")),
                    UsageError);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"({"terms":[]})")), UsageError);
    // Non-canonical input is canonicalized on read.
    auto messy = Json::parse(
        R"({"nvars":1,"terms":[{"num":"2","den":"4","exps":[0]},{"num":"1","den":"2","exps":[0]},{"num":"0","den":"1","exps":[3]}]})");
    CHECK(polynomial_from_json(messy) == Polynomial::constant(1, Rational(1)));
}

TEST_CASE("property: JSON round trip is the identity and re-serialization is stable") {
    Gen gen(6);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = gen.polynomial(3, 5, 3) * Polynomial::constant(3, parse_rational("12345678901234567890/7"));
        auto text = to_json(p).dump();
        auto back = polynomial_from_json(Json::parse(text));
        CHECK(back == p);
        CHECK(to_json(back).dump() == text);
    }
}
