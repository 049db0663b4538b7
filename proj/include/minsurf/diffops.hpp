#pragma once

#include "minsurf/polynomial.hpp"
#include "minsurf/scalar_field.hpp"

#include <span>
#include <string>

namespace minsurf {

enum class Operator { Laplacian, InfLaplacian, PLaplacian, GraphResidual, LevelsetResidual };

std::string to_string(Operator op);

struct OperatorResult {
    Operator op = Operator::Laplacian;
    double p = 0.0;  // only meaningful for PLaplacian
    double value = 0.0;
    double gradient_norm_sq = 0.0;
};

// All operators below act on a precomputed jet.
double laplacian(const Jet2& j);
// sum_ij F_i F_j F_ij
double inf_laplacian(const Jet2& j);
// |grad F|^(p-4) [ (p-2) inf_laplacian + |grad F|^2 laplacian ]; throws
// SingularPointError at a critical point when p < 4.
double p_laplacian(const Jet2& j, double p);
// (1 + |grad F|^2) laplacian - inf_laplacian: numerator of the minimal graph equation.
double graph_residual(const Jet2& j);
// |grad U|^2 laplacian - inf_laplacian: vanishes on {U = 0} iff the level set is minimal there.
double levelset_residual(const Jet2& j);

/// (1 + |grad|)^3 (1 + |Hess|_F): every residual above is cubic in derivatives.
double residual_scale(const Jet2& j);

OperatorResult apply(Operator op, const Jet2& j, double p = 2.0);

double laplacian_at(const ScalarField& f, std::span<const double> pt, const DomainGuard& guard = {});
double inf_laplacian_at(const ScalarField& f, std::span<const double> pt, const DomainGuard& guard = {});
double p_laplacian_at(const ScalarField& f, std::span<const double> pt, double p, const DomainGuard& guard = {});
double graph_residual_at(const ScalarField& f, std::span<const double> pt, const DomainGuard& guard = {});
double levelset_residual_at(const ScalarField& f, std::span<const double> pt, const DomainGuard& guard = {});

Polynomial sym_laplacian(const Polynomial& p);
// Computed as <grad P, grad(|grad P|^2 / 2)>.
Polynomial sym_inf_laplacian(const Polynomial& p);
Polynomial sym_levelset_residual(const Polynomial& p);

}  // namespace minsurf
