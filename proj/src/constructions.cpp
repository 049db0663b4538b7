#include "minsurf/constructions.hpp"

#include "minsurf/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace minsurf {

namespace {

constexpr std::array<std::pair<Family, const char*>, 11> kTags{{
    {Family::Helicoid, "helicoid"},
    {Family::ChFunction, "ch_function"},
    {Family::Superposition, "superposition"},
    {Family::LawsonR4, "lawson_r4"},
    {Family::TkachevCubic, "tkachev_cubic"},
    {Family::TkachevPower, "tkachev_power"},
    {Family::Quintic4n2, "quintic_4n2"},
    {Family::ProductArg, "product_arg"},
    {Family::Clifford, "clifford"},
    {Family::GraphSplit, "graph_split"},
    {Family::ArctanSplit, "arctan_split"},
}};

void require_positive(int value, const char* name) {
    if (value < 1) throw UsageError(std::string(name) + " must be a positive integer, got " + std::to_string(value));
}

Polynomial var(std::size_t nvars, std::size_t index) {
    return Polynomial::variable(nvars, index);
}

bool reads_n(Family f) {
    switch (f) {
    case Family::ChFunction:
    case Family::Superposition:
    case Family::TkachevCubic:
    case Family::TkachevPower:
    case Family::Quintic4n2:
    case Family::GraphSplit:
    case Family::ArctanSplit: return true;
    default: return false;
    }
}

bool reads_N(Family f) {
    return f == Family::LawsonR4 || f == Family::TkachevPower || f == Family::GraphSplit || f == Family::ArctanSplit;
}

bool reads_lambda(Family f) {
    return f == Family::Helicoid || f == Family::ChFunction;
}

// N * helicoid for n = 1, N * ch_height(n) otherwise.
ScalarField split_inner(const FamilySpec& spec) {
    ScalarField base = spec.n == 1 ? helicoid_height() : ch_height(spec.n);
    return spec.N == 1 ? base : double(spec.N) * base;
}

}  // namespace

std::string to_string(Family f) {
    for (const auto& [family, tag] : kTags)
        if (family == f) return tag;
    return "unknown";
}

Family family_from_string(const std::string& tag) {
    for (const auto& [family, name] : kTags)
        if (tag == name) return family;
    throw UsageError("unknown family '" + tag + "'");
}

Json to_json(const FamilySpec& spec) {
    Json j{{"family", to_string(spec.family)}};
    if (reads_n(spec.family)) j["n"] = spec.n;
    if (reads_N(spec.family)) j["N"] = spec.N;
    if (spec.family == Family::ProductArg) j["k"] = spec.k;
    if (spec.family == Family::Superposition) j["mu"] = spec.mu;
    if (reads_lambda(spec.family)) j["lambda"] = spec.lambda;
    return j;
}

FamilySpec family_spec_from_json(const Json& j) {
    try {
        FamilySpec spec;
        spec.family = family_from_string(j.at("family").get<std::string>());
        if (j.contains("n")) spec.n = j.at("n").get<int>();
        if (j.contains("N")) spec.N = j.at("N").get<int>();
        if (j.contains("k")) spec.k = j.at("k").get<std::vector<int>>();
        if (j.contains("mu")) spec.mu = j.at("mu").get<std::vector<double>>();
        if (j.contains("lambda")) spec.lambda = j.at("lambda").get<double>();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("family JSON: ") + e.what());
    }
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries{
        {Family::Helicoid, "lambda", "2", "Example 1 (n = 1)", false},
        {Family::ChFunction, "n, lambda", "2n", "Example 1", false},
        {Family::Superposition, "n, mu", "2n + 2(len(mu) - 1)", "Example 2", false},
        {Family::LawsonR4, "N", "4", "Example 4", true},
        {Family::TkachevCubic, "n", "2n + 2", "Example 5", true},
        {Family::TkachevPower, "n, N", "2n + 2", "Example 6", true},
        {Family::Quintic4n2, "n", "4n + 2", "Example 7", true},
        {Family::ProductArg, "k", "2 len(k)", "Example 8", true},
        {Family::Clifford, "-", "4", "Example 3", true},
        {Family::GraphSplit, "n, N", "2n + 1", "Theorem 2 (1)", false},
        {Family::ArctanSplit, "n, N", "2n + 2", "Theorem 2 (2)", false},
    };
    return entries;
}

// ------------------------------------------------------------ height functions

ScalarField helicoid_height() {
    auto x = ScalarField::variable(2, 0);
    auto y = ScalarField::variable(2, 1);
    return (y / x).arctan();
}

ScalarField ch_height(int n) {
    require_positive(n, "n");
    const auto dim = static_cast<std::size_t>(2 * n);
    auto [u, v] = block_quadratics(n, 0, dim);
    auto ratio = ScalarField::from_polynomial(v) / ScalarField::from_polynomial(u);
    return 0.5 * ratio.arctan();
}

ScalarField superpose(const std::vector<SuperposeBlock>& blocks) {
    if (blocks.empty()) throw UsageError("superpose: no blocks");
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    std::size_t ambient = 0;
    for (const auto& b : blocks) {
        ranges.emplace_back(b.offset, b.offset + b.field.nvars());
        ambient = std::max(ambient, b.offset + b.field.nvars());
    }
    std::sort(ranges.begin(), ranges.end());
    for (std::size_t i = 1; i < ranges.size(); ++i)
        if (ranges[i].first < ranges[i - 1].second) throw UsageError("superpose: blocks overlap");

    std::vector<ScalarField> terms;
    for (const auto& b : blocks) {
        auto embedded = b.field.embed(ambient, b.offset);
        // Real cube root keeps the sign, so the inf-Laplacian scales by mu.
        const double coeff = std::cbrt(b.weight);
        terms.push_back(coeff == 1.0 ? embedded : coeff * embedded);
    }
    return terms.size() == 1 ? terms.front() : ScalarField::sum(terms);
}

ScalarField screw_superposition(int n, const std::vector<double>& mu) {
    require_positive(n, "n");
    if (mu.empty()) throw UsageError("superposition needs at least one weight");
    std::vector<SuperposeBlock> blocks;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        auto field = i == 0 ? ch_height(n) : helicoid_height();
        auto width = field.nvars();
        blocks.push_back({std::move(field), offset, mu[i] * mu[i] * mu[i]});
        offset += width;
    }
    return superpose(blocks);
}

ScalarField graph_split(const ScalarField& f) {
    const auto n = f.nvars();
    return ScalarField::sum({-ScalarField::variable(n + 1, n), f.embed(n + 1, 0)});
}

ScalarField arctan_split(const ScalarField& f) {
    const auto n = f.nvars();
    auto z0 = ScalarField::variable(n + 2, n);
    auto w = ScalarField::variable(n + 2, n + 1);
    return ScalarField::sum({-(w / z0).arctan(), f.embed(n + 2, 0)});
}

ScalarField tan_graph_height(const ScalarField& f) {
    const auto n = f.nvars();
    return ScalarField::variable(n + 1, n) * f.embed(n + 1, 0).tan();
}

// ------------------------------------------------------------ algebraic cones

std::pair<Polynomial, Polynomial> re_im_complex_power(const Polynomial& A, const Polynomial& B, int N) {
    require_positive(N, "N");
    if (A.nvars() != B.nvars()) throw UsageError("re_im_complex_power: dimension mismatch");
    Polynomial re = A, im = B;
    for (int i = 1; i < N; ++i) {
        // (re + i im)(A + i B)
        Polynomial next_re = re * A - im * B;
        Polynomial next_im = re * B + im * A;
        re = std::move(next_re);
        im = std::move(next_im);
    }
    return {std::move(re), std::move(im)};
}

std::pair<Polynomial, Polynomial> tan_multiple_rational(int N) {
    require_positive(N, "N");
    auto [re, im] = re_im_complex_power(Polynomial::constant(1, Rational(1)), var(1, 0), N);
    return {std::move(im), std::move(re)};
}

std::pair<Polynomial, Polynomial> block_quadratics(int n, std::size_t offset, std::size_t nvars) {
    require_positive(n, "n");
    if (offset + 2 * static_cast<std::size_t>(n) > nvars) throw UsageError("block exceeds ambient dimension");
    Polynomial t1(nvars), t2(nvars);
    for (int k = 0; k < n; ++k) {
        auto x = var(nvars, offset + 2 * k);
        auto y = var(nvars, offset + 2 * k + 1);
        t1 += x * x - y * y;
        t2 += Rational(2) * (x * y);
    }
    return {std::move(t1), std::move(t2)};
}

Polynomial clifford_cone() {
    return lawson_cone_r4(1);
}

Polynomial lawson_cone_r4(int N) {
    require_positive(N, "N");
    auto [re, im] = re_im_complex_power(var(4, 0), var(4, 1), N);
    return var(4, 3) * re - var(4, 2) * im;
}

Polynomial tkachev_cubic(int n) {
    require_positive(n, "n");
    const auto dim = static_cast<std::size_t>(2 * n + 2);
    auto [t1, t2] = block_quadratics(n, 0, dim);
    return var(dim, dim - 1) * t1 - var(dim, dim - 2) * t2;
}

Polynomial tkachev_power_cone(int n, int N) {
    require_positive(n, "n");
    require_positive(N, "N");
    const auto dim = static_cast<std::size_t>(2 * n + 2);
    auto [t1, t2] = block_quadratics(n, 0, dim);
    auto [re, im] = re_im_complex_power(t1, t2, N);
    return var(dim, dim - 1) * re - var(dim, dim - 2) * im;
}

Polynomial quintic_cone_4n2(int n) {
    require_positive(n, "n");
    const auto half = static_cast<std::size_t>(2 * n);
    const auto dim = 2 * half + 2;
    auto [t1, t2] = block_quadratics(n, 0, dim);
    auto [s1, s2] = block_quadratics(n, half, dim);
    return var(dim, dim - 1) * (t1 * s1 - t2 * s2) - var(dim, dim - 2) * (t2 * s1 + t1 * s2);
}

Polynomial product_arg_cone(const std::vector<int>& k) {
    if (k.empty()) throw UsageError("product_arg needs at least one exponent");
    int g = 0;
    for (int kj : k) {
        require_positive(kj, "k_j");
        g = std::gcd(g, kj);
    }
    if (g != 1) throw UsageError("product_arg requires gcd(k) = 1, got " + std::to_string(g));
    const auto dim = 2 * k.size();
    Polynomial re = Polynomial::constant(dim, Rational(1)), im(dim);
    for (std::size_t j = 0; j < k.size(); ++j) {
        auto [fr, fi] = re_im_complex_power(var(dim, 2 * j), var(dim, 2 * j + 1), k[j]);
        Polynomial next_re = re * fr - im * fi;
        Polynomial next_im = re * fi + im * fr;
        re = std::move(next_re);
        im = std::move(next_im);
    }
    return im;
}

// ------------------------------------------------------------ family dispatch

std::size_t ambient_dimension(const FamilySpec& spec) {
    const auto n = static_cast<std::size_t>(std::max(spec.n, 0));
    switch (spec.family) {
    case Family::Helicoid: return 2;
    case Family::LawsonR4:
    case Family::Clifford: return 4;
    case Family::ChFunction: return 2 * n;
    case Family::Superposition: return 2 * n + 2 * (spec.mu.empty() ? 2 : spec.mu.size() - 1);
    case Family::TkachevCubic:
    case Family::TkachevPower:
    case Family::ArctanSplit: return 2 * n + 2;
    case Family::Quintic4n2: return 4 * n + 2;
    case Family::ProductArg: return 2 * spec.k.size();
    case Family::GraphSplit: return 2 * n + 1;
    }
    return 0;
}

BuiltFamily build(const FamilySpec& spec) {
    BuiltFamily out;
    out.spec = spec;
    if (reads_n(spec.family)) require_positive(spec.n, "n");
    if (reads_N(spec.family)) require_positive(spec.N, "N");
    auto set_poly = [&](Polynomial p) {
        out.field = ScalarField::from_polynomial(p);
        out.polynomial = std::move(p);
    };
    switch (spec.family) {
    case Family::Helicoid:
    case Family::ChFunction: {
        auto f = spec.family == Family::Helicoid ? helicoid_height() : ch_height(spec.n);
        out.field = spec.lambda == 1.0 ? f : spec.lambda * f;
        break;
    }
    case Family::Superposition:
        if (spec.mu.empty()) out.spec.mu = {1.0, 1.0, 1.0};
        out.field = screw_superposition(spec.n, out.spec.mu);
        break;
    case Family::LawsonR4: set_poly(lawson_cone_r4(spec.N)); break;
    case Family::TkachevCubic: set_poly(tkachev_cubic(spec.n)); break;
    case Family::TkachevPower: set_poly(tkachev_power_cone(spec.n, spec.N)); break;
    case Family::Quintic4n2: set_poly(quintic_cone_4n2(spec.n)); break;
    case Family::ProductArg: set_poly(product_arg_cone(spec.k)); break;
    case Family::Clifford: set_poly(clifford_cone()); break;
    case Family::GraphSplit: out.field = graph_split(split_inner(spec)); break;
    case Family::ArctanSplit: out.field = arctan_split(split_inner(spec)); break;
    }
    out.nvars = out.field->nvars();
    return out;
}

}  // namespace minsurf
