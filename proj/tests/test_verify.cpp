#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minsurf/constructions.hpp"
#include "minsurf/diffops.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/verify.hpp"
#include "test_support.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

using namespace minsurf;
using doctest::Approx;

namespace {

Polynomial v(std::size_t nvars, std::size_t i) {
    return Polynomial::variable(nvars, i);
}

SamplerConfig config(std::uint64_t seed, std::size_t count) {
    SamplerConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    return cfg;
}

Json read_fixture(const std::string& name) {
    std::ifstream in(std::string(MINSURF_FIXTURES) + "/" + name);
    REQUIRE(in.good());
    return Json::parse(in);
}

Eigen::MatrixXd plane_rotation(std::size_t n, Eigen::Index i, Eigen::Index j, double angle) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(Eigen::Index(n), Eigen::Index(n));
    m(i, i) = std::cos(angle);
    m(i, j) = -std::sin(angle);
    m(j, i) = std::sin(angle);
    m(j, j) = std::cos(angle);
    return m;
}

Polynomial clifford_rotated() {
    return v(4, 3) * v(4, 3) - v(4, 0) * v(4, 0) - v(4, 1) * v(4, 1) + v(4, 2) * v(4, 2);
}

}  // namespace

TEST_CASE("symbolic verification") {
    auto clifford = verify_cone_symbolic(clifford_cone());
    CHECK(clifford.passed());
    CHECK(clifford.mode == Mode::Symbolic);
    REQUIRE(clifford.quotient.has_value());
    CHECK(*clifford.quotient == Polynomial::constant(4, Rational(-2)));
    CHECK(clifford.max_residual == 0.0);

    auto lawson = verify_cone_symbolic(lawson_cone_r4(2));
    CHECK(lawson.passed());
    REQUIRE(lawson.quotient.has_value());
    CHECK(*lawson.quotient * lawson_cone_r4(2) == sym_levelset_residual(lawson_cone_r4(2)));

    auto control = v(4, 0) * v(4, 2) - Polynomial::constant(4, Rational(1));
    auto bad = verify_cone_symbolic(control);
    CHECK(bad.status == Status::Fail);
    CHECK_FALSE(bad.quotient.has_value());
    REQUIRE(bad.remainder.has_value());
    CHECK_FALSE(bad.remainder->is_zero());
    CHECK(sym_levelset_residual(control) == Rational(-2) * v(4, 0) * v(4, 2));

    CHECK_THROWS_AS(verify_cone_symbolic(Polynomial(3)), UsageError);
}

TEST_CASE("non-minimal controls fail") {
    // Level set of x1 x2 - 1.
    auto hyperbola = v(4, 0) * v(4, 2) - Polynomial::constant(4, Rational(1));
    CHECK(verify_cone_symbolic(hyperbola).status == Status::Fail);
    CHECK(verify_cone_numeric(hyperbola, config(3, 50)).status == Status::Fail);

    // Level set of x1^2 + y1^2: the circle x1^2 + y1^2 = 1 has residual 8 on it.
    auto circle = v(2, 0) * v(2, 0) + v(2, 1) * v(2, 1) - Polynomial::constant(2, Rational(1));
    auto sym = verify_cone_symbolic(circle);
    CHECK(sym.status == Status::Fail);
    REQUIRE(sym.remainder.has_value());
    CHECK(*sym.remainder == Polynomial::constant(2, Rational(8)));
    auto num = verify_field_numeric(ScalarField::from_polynomial(circle), CheckSet::parse("levelset_minimal"),
                                    config(4, 30));
    CHECK(num.status == Status::Fail);
    CHECK(num.max_residual == Approx(8.0).epsilon(1e-9));

    // Graph of x1^2.
    auto x1sq = ScalarField::variable(2, 0).pow(2);
    auto graph = verify_field_numeric(x1sq, CheckSet::parse("graph_minimal"), config(5, 30));
    CHECK(graph.status == Status::Fail);
    auto harmonic = verify_field_numeric(x1sq, CheckSet::parse("harmonic"), config(5, 30));
    CHECK(harmonic.status == Status::Fail);
    CHECK(harmonic.max_residual == Approx(2.0));
}

TEST_CASE("sampler config and rng") {
    CHECK_THROWS_AS(validate(config(0, 0)), UsageError);
    auto bad_range = config(0, 5);
    bad_range.range = 0.0;
    CHECK_THROWS_AS(validate(bad_range), UsageError);
    CHECK_THROWS_AS(sample_zero_set(clifford_cone(), config(0, 0)), UsageError);

    Rng a(9), b(9);
    for (int i = 0; i < 100; ++i) {
        double x = a.uniform(-2, 2);
        CHECK(x == b.uniform(-2, 2));
        CHECK(x >= -2);
        CHECK(x < 2);
    }
}

TEST_CASE("zero-set sampling") {
    auto plane = sample_zero_set(v(3, 2), config(1, 20));
    CHECK(plane.size() == 20);
    for (const auto& z : plane) CHECK(std::abs(z(2)) <= 1e-12);

    auto cone = clifford_cone();
    auto pts = sample_zero_set(cone, config(2, 100));
    CHECK(pts.size() == 100);
    auto grad = gradient(cone);
    for (const auto& z : pts) {
        std::vector<double> zs(z.data(), z.data() + z.size());
        Eigen::Vector4d g;
        for (int i = 0; i < 4; ++i) g(i) = evaluate(grad[std::size_t(i)], zs);
        CHECK(std::abs(z(0) * z(3) - z(1) * z(2)) <= 1e-12 * (1 + g.norm()));
        CHECK(g.norm() >= 1e-6);
        CHECK(z.norm() >= 0.1);
    }

    // Points on the transcendental chart of the Tkachev cubic.
    auto chart = arctan_split(2.0 * ch_height(2));
    auto tk = tkachev_cubic(2);
    auto chart_pts = sample_zero_set(chart, config(3, 50));
    CHECK(chart_pts.size() == 50);
    for (const auto& z : chart_pts) {
        std::vector<double> zs(z.data(), z.data() + z.size());
        CHECK(std::abs(eval_value(chart, zs)) <= 1e-12 * (1 + eval_jet2(chart, zs).gradient.norm()));
        CHECK(std::abs(evaluate(tk, zs)) <= 1e-10 * std::pow(1 + z.norm(), 3));
    }

    auto empty = v(2, 0) * v(2, 0) + v(2, 1) * v(2, 1) + Polynomial::constant(2, Rational(1));
    CHECK_THROWS_AS(sample_zero_set(empty, config(4, 5)), SamplingExhausted);
    CHECK_THROWS_AS(sample_zero_set(Polynomial(2), config(4, 5)), UsageError);
}

TEST_CASE("domain sampling") {
    auto pts = sample_domain(helicoid_height(), config(6, 40));
    CHECK(pts.size() == 40);
    for (const auto& z : pts) {
        CHECK(std::abs(z(0)) >= 1e-3);
        CHECK(z.norm() >= 0.1);
    }
    // A constant has no gradient anywhere.
    CHECK_THROWS_AS(sample_domain(ScalarField::constant(2, 1.0), config(6, 3)), SamplingExhausted);
}

TEST_CASE("numeric verification of fields") {
    auto ch = verify_field_numeric(ch_height(3), CheckSet::parse("harmonic,inf_harmonic"), config(7, 100),
                                   NumericOptions{1e-9, std::nullopt});
    CHECK(ch.passed());
    CHECK(ch.points == 100);
    CHECK(ch.checks.size() == 2);
    CHECK(ch.max_normalized_residual <= 1e-9);

    auto ex2 = verify_field_numeric(screw_superposition(4, {1.0, 2.0, 3.0}), CheckSet::parse("graph_minimal"),
                                    config(8, 100));
    CHECK(ex2.passed());

    auto p_harm = verify_field_numeric(ch_height(2), CheckSet::parse("p_harmonic:1.5:3:7"), config(9, 50));
    CHECK(p_harm.passed());
    CHECK(p_harm.checks.size() == 3);

    auto split = verify_field_numeric(arctan_split(ch_height(2)), CheckSet::parse("levelset_minimal"), config(10, 50));
    CHECK(split.passed());

    CHECK_THROWS_AS(verify_field_numeric(ch_height(2), CheckSet{}, config(1, 5)), UsageError);
    CHECK_THROWS_AS(CheckSet::parse("harmonic,bogus"), UsageError);
    CHECK(CheckSet::parse("inf_harmonic,p_harmonic:3").to_string() == "inf_harmonic,p_harmonic:3");
}

TEST_CASE("rotational derivative") {
    CHECK(rotational_derivative_check(helicoid_height(), {{0, 1}}, 1.0, config(11, 100)).passed());
    CHECK(rotational_derivative_check(ch_height(3), {{0, 1}, {2, 3}, {4, 5}}, 1.0, config(12, 100)).passed());
    CHECK_FALSE(rotational_derivative_check(helicoid_height(), {{0, 1}}, 2.0, config(11, 20)).passed());

    auto ex2 = screw_superposition(4, {1.0, 2.0, 3.0});
    CHECK(rotational_derivative_check(ex2, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}, 1.0, config(13, 100)).passed());
    CHECK(rotational_derivative_check(ex2, {{8, 9}}, 2.0, config(14, 100)).passed());
    CHECK(rotational_derivative_check(ex2, {{10, 11}}, 3.0, config(15, 100)).passed());

    CHECK_THROWS_AS(rotational_derivative_check(helicoid_height(), {{0, 2}}, 1.0, config(1, 5)), UsageError);
}

TEST_CASE("congruence search reproduces the shipped fixture") {
    auto p = clifford_cone();
    auto q = clifford_rotated();
    const double quarter = std::numbers::pi / 4;
    auto search = config(16, 50);

    // Products of two quarter-turns in distinct coordinate planes.
    std::vector<std::pair<Eigen::MatrixXd, double>> hits;
    for (Eigen::Index a = 0; a < 4; ++a)
        for (Eigen::Index b = a + 1; b < 4; ++b)
            for (Eigen::Index c = 0; c < 4; ++c)
                for (Eigen::Index d = c + 1; d < 4; ++d) {
                    if (c * 4 + d <= a * 4 + b) continue;
                    for (double s1 : {quarter, -quarter})
                        for (double s2 : {quarter, -quarter}) {
                            Eigen::MatrixXd m = plane_rotation(4, a, b, s1) * plane_rotation(4, c, d, s2);
                            double scale = least_squares_scale(p, q, m, search);
                            if (verify_congruence_numeric(p, q, m, scale, search).passed())
                                hits.emplace_back(m, scale);
                        }
                }
    REQUIRE(hits.size() == 2);

    auto fixture = read_fixture("clifford_congruence.json");
    auto rows = fixture.at("matrix").get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd shipped(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index k = 0; k < 4; ++k) shipped(i, k) = rows[std::size_t(i)][std::size_t(k)];
    const double shipped_scale = fixture.at("scale").get<double>();
    bool found = false;
    for (const auto& [m, scale] : hits)
        if ((m - shipped).norm() <= 1e-12 && std::abs(scale - shipped_scale) <= 1e-9) found = true;
    CHECK(found);
    CHECK(shipped_scale == -0.5);

    auto fresh = verify_congruence_numeric(p, q, shipped, shipped_scale, config(17, 200));
    CHECK(fresh.passed());
    CHECK(fixture.at("residual").get<double>() <= 1e-12);

    CHECK(polynomial_from_json(read_fixture("clifford.json")) == p);
    CHECK(polynomial_from_json(read_fixture("clifford_rotated.json")) == q);
}

TEST_CASE("congruence controls") {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
    auto p = lawson_cone_r4(3);
    CHECK(verify_congruence_numeric(p, p, id, 1.0, config(18, 50)).passed());
    auto unrelated = polynomial_from_json(read_fixture("unrelated.json"));
    CHECK_FALSE(verify_congruence_numeric(clifford_cone(), unrelated, id, 1.0, config(18, 50)).passed());
    CHECK_THROWS_AS(verify_congruence_numeric(p, p, Eigen::MatrixXd::Identity(3, 3), 1.0, config(1, 5)),
                    UsageError);
}

TEST_CASE("determinism") {
    auto run = [] {
        return to_json(verify_field_numeric(ch_height(2), CheckSet::parse("harmonic,inf_harmonic,graph_minimal"),
                                            config(19, 40)))
            .dump();
    };
    CHECK(run() == run());
    auto a = sample_zero_set(tkachev_cubic(1), config(20, 30));
    auto b = sample_zero_set(tkachev_cubic(1), config(20, 30));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    auto c = sample_zero_set(tkachev_cubic(1), config(21, 30));
    CHECK(c[0] != a[0]);
}

TEST_CASE("report json") {
    auto r = verify_cone_symbolic(clifford_cone(), to_json(FamilySpec{Family::Clifford}));
    auto j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"subject", "mode", "status", "quotient", "max_residual",
                                           "max_normalized_residual", "scale_used", "points", "seed", "tolerances"});
    CHECK(j["status"] == "pass");
    CHECK(j["subject"]["family"] == "clifford");
    CHECK(Json::parse(j.dump()).dump() == j.dump());
    CHECK(polynomial_subject(clifford_cone()) == polynomial_subject(polynomial_from_json(to_json(clifford_cone()))));
    CHECK(polynomial_subject(clifford_cone()) != polynomial_subject(lawson_cone_r4(2)));
}

TEST_CASE("property: symbolic and numeric verdicts agree across the catalog") {
    std::uint64_t seed = 22;
    std::vector<Polynomial> cones{clifford_cone(),          lawson_cone_r4(3),       tkachev_cubic(2),
                                  tkachev_power_cone(1, 3), tkachev_power_cone(2, 2), quintic_cone_4n2(1),
                                  product_arg_cone({1, 2}), product_arg_cone({1, 1, 1})};
    for (const auto& p : cones) {
        CHECK(verify_cone_symbolic(p).passed());
        auto num = verify_cone_numeric(p, config(seed++, 60), 1e-8);
        CHECK(num.passed());
    }
    std::vector<Polynomial> controls{v(4, 0) * v(4, 2) - Polynomial::constant(4, Rational(1)),
                                     v(3, 0) * v(3, 0) * v(3, 1) + v(3, 2) * v(3, 2) * v(3, 2),
                                     v(4, 0) * v(4, 0) - v(4, 1) * v(4, 2) * v(4, 3)};
    for (const auto& p : controls) {
        CHECK_FALSE(verify_cone_symbolic(p).passed());
        CHECK_FALSE(verify_cone_numeric(p, config(seed++, 60), 1e-8).passed());
    }
}

TEST_CASE("default checks") {
    CHECK(default_checks(Family::ChFunction).p_values == std::vector<double>{1.5, 3.0, 7.0});
    CHECK(default_checks(Family::LawsonR4).levelset_minimal);
    CHECK(default_checks(Family::Superposition).graph_minimal);
    CHECK(default_checks(Family::ArctanSplit).levelset_minimal);
}
