#pragma once

#include "minsurf/polynomial.hpp"

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace minsurf {

/// Value, gradient and Hessian of a scalar field at one point.
struct Jet2 {
    double value = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;

    explicit Jet2(Eigen::Index n = 0) : gradient(Eigen::VectorXd::Zero(n)), hessian(Eigen::MatrixXd::Zero(n, n)) {}

    Eigen::Index dimension() const noexcept { return gradient.size(); }
};

/// Evaluation fails when a Reciprocal sees |x| < min_denominator or a Tan sees
/// |cos x| < min_denominator.
struct DomainGuard {
    double min_denominator = 1e-9;
};

/// Immutable expression tree over R^nvars. Nodes are shared between fields.
class ScalarField {
public:
    enum class Kind { Constant, Variable, Sum, Product, Negate, Reciprocal, IntegerPower, Arctan, Tan, PolynomialLeaf };
    struct Node;

    static ScalarField constant(std::size_t nvars, double value);
    static ScalarField constant(std::size_t nvars, const Rational& value);
    static ScalarField variable(std::size_t nvars, std::size_t index);
    static ScalarField from_polynomial(const Polynomial& p);
    static ScalarField sum(const std::vector<ScalarField>& terms);
    static ScalarField product(const std::vector<ScalarField>& factors);

    std::size_t nvars() const noexcept { return nvars_; }
    const Node& root() const noexcept { return *root_; }

    ScalarField operator-() const;
    ScalarField reciprocal() const;
    ScalarField pow(int exponent) const;
    ScalarField arctan() const;
    ScalarField tan() const;

    friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator*(double c, const ScalarField& f);

    // Same expression with variables moved to [offset, offset + nvars()) of
    // an ambient space of dimension new_nvars.
    ScalarField embed(std::size_t new_nvars, std::size_t offset) const;

    // Infix rendering using the given names (interleaved naming by default).
    std::string to_string() const;
    std::string to_string(const VariableNaming& naming) const;

private:
    ScalarField(std::size_t nvars, std::shared_ptr<const Node> root) : nvars_(nvars), root_(std::move(root)) {}

    std::size_t nvars_ = 0;
    std::shared_ptr<const Node> root_;
};

struct ScalarField::Node {
    Kind kind = Kind::Constant;
    double constant = 0.0;
    std::size_t index = 0;  // Variable
    int exponent = 0;       // IntegerPower
    std::vector<std::shared_ptr<const Node>> children;
    std::shared_ptr<const Polynomial> polynomial;  // PolynomialLeaf
    std::vector<double> float_coeffs;               // PolynomialLeaf, aligned with terms()
};

/// Second-order forward propagation. Throws DomainError (carrying the rendered
/// offending subexpression) at poles; UsageError on a dimension mismatch.
Jet2 eval_jet2(const ScalarField& f, std::span<const double> point, const DomainGuard& guard = {});

/// Plain value evaluation, independent of the jet path.
double eval_value(const ScalarField& f, std::span<const double> point, const DomainGuard& guard = {});

struct FiniteDifference {
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;
};

/// Central differences with step h on values only: O(h^2) gradient and
/// Hessian, Hessian symmetrized by averaging.
FiniteDifference fd_hessian(const ScalarField& f, std::span<const double> point, double h,
                            const DomainGuard& guard = {});

}  // namespace minsurf
