#pragma once

#include "minsurf/poly_json.hpp"
#include "minsurf/polynomial.hpp"
#include "minsurf/scalar_field.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace minsurf {

enum class Family {
    Helicoid,
    ChFunction,
    Superposition,
    LawsonR4,
    TkachevCubic,
    TkachevPower,
    Quintic4n2,
    ProductArg,
    Clifford,
    GraphSplit,
    ArctanSplit,
};

std::string to_string(Family f);
// Throws UsageError for unknown tags.
Family family_from_string(const std::string& tag);

/// Parameters of one catalog member. Only the fields relevant to the family
/// are read.
struct FamilySpec {
    Family family = Family::Clifford;
    int n = 1;
    int N = 1;
    std::vector<int> k;
    std::vector<double> mu;
    double lambda = 1.0;
};

// {"family": str, "n": int?, "N": int?, "k": [int]?, "mu": [float]?, "lambda": float?}
// Only the keys the family reads are emitted.
Json to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const Json& j);

struct CatalogEntry {
    Family family;
    std::string parameters;
    std::string ambient_dimension;
    std::string example;
    bool algebraic;  // defining polynomial vs. transcendental field
};

const std::vector<CatalogEntry>& catalog();

// ------------------------------------------------------------ height functions

// arctan(y1/x1) on R^2.
ScalarField helicoid_height();

// 1/2 arctan(V/U) on R^2n with U = |X|^2 - |Y|^2, V = 2<X,Y>, using the
// interleaved layout X = (x1..xn), Y = (y1..yn).
ScalarField ch_height(int n);

struct SuperposeBlock {
    ScalarField field;    // defined on its own block of variables
    std::size_t offset;   // first ambient index of the block
    double weight;        // mu; the field enters with the real cube root of mu
};

// sum_i cbrt(mu_i) F_i on disjoint blocks; ambient dimension is the largest
// block end. Throws UsageError on overlapping blocks.
ScalarField superpose(const std::vector<SuperposeBlock>& blocks);

// Height mu_1 * ch_height(n) + mu_2 * helicoid + mu_3 * helicoid + ... on
// consecutive blocks. The coefficients are the mu_i themselves.
ScalarField screw_superposition(int n, const std::vector<double>& mu);

// U = -z + f on n+1 variables (z last).
ScalarField graph_split(const ScalarField& f);

// V = -arctan(w / z0) + f on n+2 variables, with z0 at index n and w at n+1,
// so that {V = 0} contains the graph w = z0 tan f.
ScalarField arctan_split(const ScalarField& f);

// Height z0 tan f on n+1 variables (z0 last).
ScalarField tan_graph_height(const ScalarField& f);

// ------------------------------------------------------------ algebraic cones

// (Im, Re) of (1 + i t)^N as univariate integer polynomials, so that
// tan(N arctan t) = num(t) / den(t).
std::pair<Polynomial, Polynomial> tan_multiple_rational(int N);

// (Re, Im) of (A + i B)^N.
std::pair<Polynomial, Polynomial> re_im_complex_power(const Polynomial& A, const Polynomial& B, int N);

// T1 = sum (x_k^2 - y_k^2) and T2 = sum 2 x_k y_k over the n pairs starting
// at ambient index offset.
std::pair<Polynomial, Polynomial> block_quadratics(int n, std::size_t offset, std::size_t nvars);

Polynomial clifford_cone();
Polynomial lawson_cone_r4(int N);
Polynomial tkachev_cubic(int n);
Polynomial tkachev_power_cone(int n, int N);
Polynomial quintic_cone_4n2(int n);
// Throws UsageError when gcd(k) != 1 or some k_j <= 0.
Polynomial product_arg_cone(const std::vector<int>& k);

// ------------------------------------------------------------ family dispatch

struct BuiltFamily {
    FamilySpec spec;
    std::size_t nvars = 0;
    std::optional<Polynomial> polynomial;  // algebraic families
    std::optional<ScalarField> field;      // always set; level function or height
};

// Validates parameters (UsageError) and builds the subject.
BuiltFamily build(const FamilySpec& spec);

std::size_t ambient_dimension(const FamilySpec& spec);

}  // namespace minsurf
