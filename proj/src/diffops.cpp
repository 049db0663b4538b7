#include "minsurf/diffops.hpp"

#include "minsurf/errors.hpp"

#include <cmath>

namespace minsurf {

std::string to_string(Operator op) {
    switch (op) {
    case Operator::Laplacian: return "laplacian";
    case Operator::InfLaplacian: return "inf_laplacian";
    case Operator::PLaplacian: return "p_laplacian";
    case Operator::GraphResidual: return "graph_residual";
    case Operator::LevelsetResidual: return "levelset_residual";
    }
    return "unknown";
}

double laplacian(const Jet2& j) {
    return j.hessian.trace();
}

double inf_laplacian(const Jet2& j) {
    return j.gradient.dot(j.hessian * j.gradient);
}

double p_laplacian(const Jet2& j, double p) {
    const double g2 = j.gradient.squaredNorm();
    if (g2 == 0.0 && p < 4.0) throw SingularPointError("p-Laplacian with p < 4 at a critical point");
    const double prefactor = p == 4.0 ? 1.0 : std::pow(std::sqrt(g2), p - 4.0);
    return prefactor * ((p - 2.0) * inf_laplacian(j) + g2 * laplacian(j));
}

double graph_residual(const Jet2& j) {
    return (1.0 + j.gradient.squaredNorm()) * laplacian(j) - inf_laplacian(j);
}

double levelset_residual(const Jet2& j) {
    return j.gradient.squaredNorm() * laplacian(j) - inf_laplacian(j);
}

double residual_scale(const Jet2& j) {
    const double g = 1.0 + j.gradient.norm();
    return g * g * g * (1.0 + j.hessian.norm());
}

OperatorResult apply(Operator op, const Jet2& j, double p) {
    OperatorResult r{op, op == Operator::PLaplacian ? p : 0.0, 0.0, j.gradient.squaredNorm()};
    switch (op) {
    case Operator::Laplacian: r.value = laplacian(j); break;
    case Operator::InfLaplacian: r.value = inf_laplacian(j); break;
    case Operator::PLaplacian: r.value = p_laplacian(j, p); break;
    case Operator::GraphResidual: r.value = graph_residual(j); break;
    case Operator::LevelsetResidual: r.value = levelset_residual(j); break;
    }
    return r;
}

double laplacian_at(const ScalarField& f, std::span<const double> pt, const DomainGuard& guard) {
    return laplacian(eval_jet2(f, pt, guard));
}

double inf_laplacian_at(const ScalarField& f, std::span<const double> pt, const DomainGuard& guard) {
    return inf_laplacian(eval_jet2(f, pt, guard));
}

double p_laplacian_at(const ScalarField& f, std::span<const double> pt, double p, const DomainGuard& guard) {
    return p_laplacian(eval_jet2(f, pt, guard), p);
}

double graph_residual_at(const ScalarField& f, std::span<const double> pt, const DomainGuard& guard) {
    return graph_residual(eval_jet2(f, pt, guard));
}

double levelset_residual_at(const ScalarField& f, std::span<const double> pt, const DomainGuard& guard) {
    return levelset_residual(eval_jet2(f, pt, guard));
}

// ---------------------------------------------------------------- symbolic

Polynomial sym_laplacian(const Polynomial& p) {
    Polynomial sum(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) sum += partial(partial(p, i), i);
    return sum;
}

namespace {

Polynomial gradient_norm_sq(const std::vector<Polynomial>& grad, std::size_t nvars) {
    Polynomial sum(nvars);
    for (const auto& g : grad) sum += g * g;
    return sum;
}

Polynomial inf_laplacian_from(const std::vector<Polynomial>& grad, const Polynomial& norm_sq) {
    // Contracting the gradient with grad(|grad P|^2) gives 2 sum_ij P_i P_j P_ij.
    Polynomial sum(norm_sq.nvars());
    for (std::size_t i = 0; i < grad.size(); ++i) sum += grad[i] * partial(norm_sq, i);
    return sum * Rational(1, 2);
}

}  // namespace

Polynomial sym_inf_laplacian(const Polynomial& p) {
    auto grad = gradient(p);
    return inf_laplacian_from(grad, gradient_norm_sq(grad, p.nvars()));
}

Polynomial sym_levelset_residual(const Polynomial& p) {
    auto grad = gradient(p);
    auto norm_sq = gradient_norm_sq(grad, p.nvars());
    return norm_sq * sym_laplacian(p) - inf_laplacian_from(grad, norm_sq);
}

}  // namespace minsurf
