#pragma once

#include "minsurf/constructions.hpp"
#include "minsurf/poly_json.hpp"
#include "minsurf/polynomial.hpp"
#include "minsurf/scalar_field.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace minsurf {

enum class Mode { Symbolic, Numeric };
enum class Status { Pass, Fail, OutOfDomain };

std::string to_string(Mode m);
std::string to_string(Status s);

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t count = 100;
    double range = 2.0;             // coordinates drawn from [-range, range]
    double min_gradient = 1e-6;
    int newton_max_iter = 50;
    double on_surface_tol = 1e-12;  // |U| <= tol * (1 + |grad U|)
    double min_radius = 0.1;
    double domain_margin = 1e-3;    // DomainGuard used while sampling
};

// Throws UsageError when count == 0 or range <= 0.
void validate(const SamplerConfig& cfg);

/// Seeded uniform source. Doubles are built from the raw 64-bit engine output
/// so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi);

private:
    std::mt19937_64 engine_;
};

struct CheckSet {
    bool harmonic = false;
    bool inf_harmonic = false;
    std::vector<double> p_values;  // p_harmonic
    bool graph_minimal = false;
    bool levelset_minimal = false;

    bool empty() const noexcept;
    // Comma-separated: harmonic, inf_harmonic, p_harmonic:1.5:3:7, graph_minimal, levelset_minimal.
    static CheckSet parse(const std::string& text);
    std::string to_string() const;
};

struct CheckSummary {
    std::string name;
    double max_residual = 0.0;
    double max_normalized = 0.0;
};

struct VerificationReport {
    Json subject;
    Mode mode = Mode::Symbolic;
    Status status = Status::Fail;
    std::optional<Polynomial> quotient;
    std::optional<Polynomial> remainder;  // symbolic failures
    double max_residual = 0.0;            // raw, over all checks and points
    double max_normalized_residual = 0.0;
    double scale_used = 1.0;              // scale at the worst normalized point
    std::size_t points = 0;
    std::uint64_t seed = 0;
    Json tolerances = Json::object();
    std::vector<CheckSummary> checks;
    std::string message;

    bool passed() const noexcept { return status == Status::Pass; }
};

Json to_json(const VerificationReport& r);

/// {"polynomial_hash": "<fnv1a-64 of the canonical JSON>"}
Json polynomial_subject(const Polynomial& p);

/// Certifies minimality of {P = 0} via P | (|grad P|^2 laplacian P - inf_laplacian P).
VerificationReport verify_cone_symbolic(const Polynomial& p, Json subject = nullptr);

/// Random in-domain points: evaluation succeeds under the margin guard,
/// |grad| >= min_gradient and |z| >= min_radius. Throws SamplingExhausted
/// after 100 * count draws.
std::vector<Eigen::VectorXd> sample_domain(const ScalarField& f, const SamplerConfig& cfg);

/// Damped Newton projection of random box points onto {U = 0}.
std::vector<Eigen::VectorXd> sample_zero_set(const ScalarField& u, const SamplerConfig& cfg);
std::vector<Eigen::VectorXd> sample_zero_set(const Polynomial& u, const SamplerConfig& cfg);

struct NumericOptions {
    double tol = 1e-8;
    // For algebraic level sets: multiplies the scale by (1 + |z|)^max(0, 3d - 4).
    std::optional<std::uint64_t> polynomial_degree;
};

VerificationReport verify_field_numeric(const ScalarField& f, const CheckSet& checks, const SamplerConfig& cfg,
                                        const NumericOptions& opts = {}, Json subject = nullptr);

/// levelset_minimal on the sampled zero set of a cone polynomial.
VerificationReport verify_cone_numeric(const Polynomial& p, const SamplerConfig& cfg, double tol = 1e-8,
                                       Json subject = nullptr);

/// |<grad F, xi> - expected| <= tol with xi = sum over pairs (-y d/dx + x d/dy).
VerificationReport rotational_derivative_check(const ScalarField& f,
                                               const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                               double expected, const SamplerConfig& cfg, double tol = 1e-9,
                                               Json subject = nullptr);

/// |P(M z) - scale Q(z)| <= tol (1 + |z|)^deg at random box points.
VerificationReport verify_congruence_numeric(const Polynomial& p, const Polynomial& q, const Eigen::MatrixXd& m,
                                             double scale, const SamplerConfig& cfg, double tol = 1e-9,
                                             Json subject = nullptr);

/// argmin_s sum (P(M z) - s Q(z))^2 over random box points.
double least_squares_scale(const Polynomial& p, const Polynomial& q, const Eigen::MatrixXd& m,
                           const SamplerConfig& cfg);

/// Checks the catalog applies to a family by default.
CheckSet default_checks(Family f);

}  // namespace minsurf
