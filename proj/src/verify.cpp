#include "minsurf/verify.hpp"

#include "minsurf/diffops.hpp"
#include "minsurf/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace minsurf {

std::string to_string(Mode m) {
    return m == Mode::Symbolic ? "symbolic" : "numeric";
}

std::string to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::OutOfDomain: return "out-of-domain";
    }
    return "fail";
}

void validate(const SamplerConfig& cfg) {
    if (cfg.count == 0) throw UsageError("sampler count must be at least 1");
    if (!(cfg.range > 0.0)) throw UsageError("sampler range must be positive");
}

double Rng::uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

// ------------------------------------------------------------------ checks

bool CheckSet::empty() const noexcept {
    return !harmonic && !inf_harmonic && p_values.empty() && !graph_minimal && !levelset_minimal;
}

CheckSet CheckSet::parse(const std::string& text) {
    CheckSet set;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "harmonic") {
            set.harmonic = true;
        } else if (item == "inf_harmonic") {
            set.inf_harmonic = true;
        } else if (item == "graph_minimal") {
            set.graph_minimal = true;
        } else if (item == "levelset_minimal") {
            set.levelset_minimal = true;
        } else if (item.rfind("p_harmonic", 0) == 0) {
            std::stringstream ps(item.substr(10));
            std::string value;
            std::getline(ps, value, ':');  // leading empty field
            while (std::getline(ps, value, ':')) {
                try {
                    set.p_values.push_back(std::stod(value));
                } catch (const std::exception&) {
                    throw UsageError("bad p value '" + value + "'");
                }
            }
            if (set.p_values.empty()) throw UsageError("p_harmonic needs at least one p, e.g. p_harmonic:3");
        } else if (!item.empty()) {
            throw UsageError("unknown check '" + item + "'");
        }
    }
    if (set.empty()) throw UsageError("no checks requested");
    return set;
}

std::string CheckSet::to_string() const {
    std::vector<std::string> parts;
    if (harmonic) parts.emplace_back("harmonic");
    if (inf_harmonic) parts.emplace_back("inf_harmonic");
    if (!p_values.empty()) {
        std::ostringstream os;
        os << "p_harmonic";
        for (double p : p_values) os << ":" << p;
        parts.push_back(os.str());
    }
    if (graph_minimal) parts.emplace_back("graph_minimal");
    if (levelset_minimal) parts.emplace_back("levelset_minimal");
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
    return out;
}

CheckSet default_checks(Family f) {
    CheckSet set;
    switch (f) {
    case Family::Helicoid:
    case Family::ChFunction:
        set.harmonic = set.inf_harmonic = set.graph_minimal = true;
        set.p_values = {1.5, 3.0, 7.0};
        break;
    case Family::Superposition: set.harmonic = set.inf_harmonic = set.graph_minimal = true; break;
    case Family::GraphSplit:
    case Family::ArctanSplit: set.harmonic = set.inf_harmonic = set.levelset_minimal = true; break;
    default: set.levelset_minimal = true; break;
    }
    return set;
}

// ------------------------------------------------------------------ reports

Json to_json(const VerificationReport& r) {
    Json j;
    j["subject"] = r.subject;
    j["mode"] = to_string(r.mode);
    j["status"] = to_string(r.status);
    if (r.quotient) j["quotient"] = to_json(*r.quotient);
    if (r.remainder) j["remainder"] = to_json(*r.remainder);
    j["max_residual"] = r.max_residual;
    j["max_normalized_residual"] = r.max_normalized_residual;
    j["scale_used"] = r.scale_used;
    j["points"] = r.points;
    j["seed"] = r.seed;
    j["tolerances"] = r.tolerances;
    if (!r.checks.empty()) {
        Json checks = Json::array();
        for (const auto& c : r.checks)
            checks.push_back(Json{{"check", c.name},
                                  {"max_residual", c.max_residual},
                                  {"max_normalized_residual", c.max_normalized}});
        j["checks"] = std::move(checks);
    }
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

Json polynomial_subject(const Polynomial& p) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : to_json(p).dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return Json{{"polynomial_hash", buf}};
}

namespace {

Json numeric_tolerances(const SamplerConfig& cfg, double tol) {
    return Json{{"residual", tol},
                {"on_surface", cfg.on_surface_tol},
                {"min_gradient", cfg.min_gradient},
                {"domain_margin", cfg.domain_margin}};
}

VerificationReport numeric_report(Json subject, const SamplerConfig& cfg, double tol) {
    VerificationReport r;
    r.subject = std::move(subject);
    r.mode = Mode::Numeric;
    r.seed = cfg.seed;
    r.tolerances = numeric_tolerances(cfg, tol);
    return r;
}

// Tracks the worst point of one check and folds it into the report.
struct Tracker {
    CheckSummary summary;
    double worst_scale = 1.0;

    void add(double residual, double scale) {
        const double raw = std::abs(residual);
        const double normalized = raw / scale;
        summary.max_residual = std::max(summary.max_residual, raw);
        // NaN must not sneak past the tolerance test.
        if (std::isnan(normalized) || normalized > summary.max_normalized) {
            summary.max_normalized = std::isnan(normalized) ? INFINITY : normalized;
            worst_scale = scale;
        }
    }
};

void finish(VerificationReport& r, const std::vector<Tracker>& trackers, double tol) {
    bool ok = true;
    for (const auto& t : trackers) {
        r.checks.push_back(t.summary);
        r.max_residual = std::max(r.max_residual, t.summary.max_residual);
        if (t.summary.max_normalized >= r.max_normalized_residual) {
            r.max_normalized_residual = t.summary.max_normalized;
            r.scale_used = t.worst_scale;
        }
        ok = ok && t.summary.max_normalized <= tol;
    }
    r.status = ok ? Status::Pass : Status::Fail;
}

Eigen::VectorXd random_point(Rng& rng, std::size_t n, double range) {
    Eigen::VectorXd z(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.uniform(-range, range);
    return z;
}

std::span<const double> as_span(const Eigen::VectorXd& z) {
    return {z.data(), static_cast<std::size_t>(z.size())};
}

std::optional<Jet2> try_jet(const ScalarField& f, const Eigen::VectorXd& z, const DomainGuard& guard) {
    try {
        return eval_jet2(f, as_span(z), guard);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

bool on_surface(const Jet2& j, const Eigen::VectorXd& z, const SamplerConfig& cfg) {
    const double g = j.gradient.norm();
    return std::abs(j.value) <= cfg.on_surface_tol * (1.0 + g) && g >= cfg.min_gradient && z.norm() >= cfg.min_radius;
}

std::optional<Eigen::VectorXd> newton_project(const ScalarField& u, Eigen::VectorXd z, const SamplerConfig& cfg,
                                              const DomainGuard& guard) {
    auto jet = try_jet(u, z, guard);
    for (int it = 0; jet && it <= cfg.newton_max_iter; ++it) {
        if (on_surface(*jet, z, cfg)) return z;
        const double g2 = jet->gradient.squaredNorm();
        if (!(g2 > 0.0) || !std::isfinite(jet->value)) return std::nullopt;
        Eigen::VectorXd step = -(jet->value / g2) * jet->gradient;
        // Cap the step at the box half-width, then backtrack until |U| drops.
        const double cap = cfg.range;
        if (step.norm() > cap) step *= cap / step.norm();
        std::optional<Jet2> next;
        Eigen::VectorXd candidate;
        for (double t = 1.0; t >= 1.0 / 1024; t *= 0.5) {
            candidate = z + t * step;
            next = try_jet(u, candidate, guard);
            if (next && std::abs(next->value) < std::abs(jet->value)) break;
            next.reset();
        }
        if (!next) return std::nullopt;
        z = std::move(candidate);
        jet = std::move(next);
    }
    return std::nullopt;
}

}  // namespace

// ----------------------------------------------------------------- symbolic

VerificationReport verify_cone_symbolic(const Polynomial& p, Json subject) {
    if (p.is_zero()) throw UsageError("cannot verify the zero polynomial");
    VerificationReport r;
    r.subject = subject.is_null() ? polynomial_subject(p) : std::move(subject);
    r.mode = Mode::Symbolic;
    r.tolerances = Json{{"residual", "exact"}};
    auto [q, rem] = divide(sym_levelset_residual(p), p);
    if (rem.is_zero()) {
        r.status = Status::Pass;
        r.quotient = std::move(q);
    } else {
        r.status = Status::Fail;
        r.remainder = std::move(rem);
        r.message = "levelset residual is not divisible by the defining polynomial";
    }
    return r;
}

// ----------------------------------------------------------------- sampling

std::vector<Eigen::VectorXd> sample_domain(const ScalarField& f, const SamplerConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    const DomainGuard guard{cfg.domain_margin};
    std::vector<Eigen::VectorXd> points;
    for (std::size_t attempt = 0; attempt < 100 * cfg.count && points.size() < cfg.count; ++attempt) {
        auto z = random_point(rng, f.nvars(), cfg.range);
        if (z.norm() < cfg.min_radius) continue;
        auto jet = try_jet(f, z, guard);
        if (!jet || !std::isfinite(jet->value) || jet->gradient.norm() < cfg.min_gradient) continue;
        points.push_back(std::move(z));
    }
    if (points.size() < cfg.count)
        throw SamplingExhausted("found " + std::to_string(points.size()) + " of " + std::to_string(cfg.count) +
                                " in-domain points");
    return points;
}

std::vector<Eigen::VectorXd> sample_zero_set(const ScalarField& u, const SamplerConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    const DomainGuard guard{cfg.domain_margin};
    std::vector<Eigen::VectorXd> points;
    for (std::size_t attempt = 0; attempt < 100 * cfg.count && points.size() < cfg.count; ++attempt) {
        auto z = newton_project(u, random_point(rng, u.nvars(), cfg.range), cfg, guard);
        if (!z) continue;
        auto jet = eval_jet2(u, as_span(*z), guard);
        if (!on_surface(jet, *z, cfg)) throw std::logic_error("zero-set sampler post-condition violated");
        points.push_back(std::move(*z));
    }
    if (points.size() < cfg.count)
        throw SamplingExhausted("found " + std::to_string(points.size()) + " of " + std::to_string(cfg.count) +
                                " zero-set points");
    return points;
}

std::vector<Eigen::VectorXd> sample_zero_set(const Polynomial& u, const SamplerConfig& cfg) {
    if (u.is_zero()) throw UsageError("cannot sample the zero set of the zero polynomial");
    return sample_zero_set(ScalarField::from_polynomial(u), cfg);
}

// ------------------------------------------------------------------ numeric

VerificationReport verify_field_numeric(const ScalarField& f, const CheckSet& checks, const SamplerConfig& cfg,
                                        const NumericOptions& opts, Json subject) {
    if (checks.empty()) throw UsageError("no checks requested");
    validate(cfg);
    auto r = numeric_report(std::move(subject), cfg, opts.tol);
    if (r.subject.is_null()) r.subject = Json{{"field", f.to_string()}};
    const DomainGuard guard{cfg.domain_margin};

    std::vector<Tracker> trackers;
    auto tracker = [&](std::string name) -> std::size_t {
        trackers.push_back(Tracker{CheckSummary{std::move(name)}});
        return trackers.size() - 1;
    };

    const bool pointwise = checks.harmonic || checks.inf_harmonic || !checks.p_values.empty() || checks.graph_minimal;
    if (pointwise) {
        std::optional<std::size_t> harmonic, inf, graph;
        std::vector<std::size_t> pl;
        if (checks.harmonic) harmonic = tracker("harmonic");
        if (checks.inf_harmonic) inf = tracker("inf_harmonic");
        for (double p : checks.p_values) {
            std::ostringstream os;
            os << "p_harmonic:" << p;
            pl.push_back(tracker(os.str()));
        }
        if (checks.graph_minimal) graph = tracker("graph_minimal");
        for (const auto& z : sample_domain(f, cfg)) {
            const Jet2 j = eval_jet2(f, as_span(z), guard);
            const double scale = residual_scale(j);
            if (harmonic) trackers[*harmonic].add(laplacian(j), scale);
            if (inf) trackers[*inf].add(inf_laplacian(j), scale);
            for (std::size_t i = 0; i < pl.size(); ++i) trackers[pl[i]].add(p_laplacian(j, checks.p_values[i]), scale);
            if (graph) trackers[*graph].add(graph_residual(j), scale);
        }
        r.points += cfg.count;
    }
    if (checks.levelset_minimal) {
        auto idx = tracker("levelset_minimal");
        SamplerConfig surface_cfg = cfg;
        surface_cfg.seed = cfg.seed ^ 0x5bd1e995ULL;
        const double power =
            opts.polynomial_degree ? std::max(0.0, 3.0 * double(*opts.polynomial_degree) - 4.0) : 0.0;
        for (const auto& z : sample_zero_set(f, surface_cfg)) {
            const Jet2 j = eval_jet2(f, as_span(z), guard);
            const double scale = residual_scale(j) * std::pow(1.0 + z.norm(), power);
            trackers[idx].add(levelset_residual(j), scale);
        }
        r.points += cfg.count;
    }
    finish(r, trackers, opts.tol);
    return r;
}

VerificationReport verify_cone_numeric(const Polynomial& p, const SamplerConfig& cfg, double tol, Json subject) {
    if (p.is_zero()) throw UsageError("cannot verify the zero polynomial");
    CheckSet checks;
    checks.levelset_minimal = true;
    NumericOptions opts{tol, p.total_degree()};
    return verify_field_numeric(ScalarField::from_polynomial(p), checks, cfg, opts,
                                subject.is_null() ? polynomial_subject(p) : std::move(subject));
}

VerificationReport rotational_derivative_check(const ScalarField& f,
                                               const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                               double expected, const SamplerConfig& cfg, double tol, Json subject) {
    if (pairs.empty()) throw UsageError("rotation generator needs at least one coordinate pair");
    for (const auto& [x, y] : pairs)
        if (x >= f.nvars() || y >= f.nvars()) throw UsageError("rotation pair index out of range");
    auto r = numeric_report(std::move(subject), cfg, tol);
    if (r.subject.is_null()) r.subject = Json{{"field", f.to_string()}};
    const DomainGuard guard{cfg.domain_margin};
    Tracker t{CheckSummary{"rotational_derivative"}};
    for (const auto& z : sample_domain(f, cfg)) {
        const Jet2 j = eval_jet2(f, as_span(z), guard);
        double d = 0.0;
        for (const auto& [x, y] : pairs) {
            const auto ix = static_cast<Eigen::Index>(x), iy = static_cast<Eigen::Index>(y);
            d += -z(iy) * j.gradient(ix) + z(ix) * j.gradient(iy);
        }
        t.add(d - expected, 1.0);
    }
    r.points = cfg.count;
    r.tolerances["expected"] = expected;
    finish(r, {t}, tol);
    return r;
}

namespace {

void require_square(const Polynomial& p, const Polynomial& q, const Eigen::MatrixXd& m) {
    const auto n = static_cast<Eigen::Index>(p.nvars());
    if (q.nvars() != p.nvars() || m.rows() != n || m.cols() != n)
        throw UsageError("congruence: P, Q and M must share the ambient dimension");
}

}  // namespace

VerificationReport verify_congruence_numeric(const Polynomial& p, const Polynomial& q, const Eigen::MatrixXd& m,
                                             double scale, const SamplerConfig& cfg, double tol, Json subject) {
    require_square(p, q, m);
    validate(cfg);
    auto r = numeric_report(std::move(subject), cfg, tol);
    if (r.subject.is_null()) r.subject = Json{{"p", polynomial_subject(p)}, {"q", polynomial_subject(q)}};
    r.tolerances["scale"] = scale;
    const double degree = double(std::max(p.total_degree(), q.total_degree()));
    Rng rng(cfg.seed);
    Tracker t{CheckSummary{"congruence"}};
    for (std::size_t i = 0; i < cfg.count; ++i) {
        Eigen::VectorXd z = random_point(rng, p.nvars(), cfg.range);
        Eigen::VectorXd mz = m * z;
        const double diff = evaluate(p, as_span(mz)) - scale * evaluate(q, as_span(z));
        t.add(diff, std::pow(1.0 + z.norm(), degree));
    }
    r.points = cfg.count;
    finish(r, {t}, tol);
    return r;
}

double least_squares_scale(const Polynomial& p, const Polynomial& q, const Eigen::MatrixXd& m,
                           const SamplerConfig& cfg) {
    require_square(p, q, m);
    validate(cfg);
    Rng rng(cfg.seed);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        Eigen::VectorXd z = random_point(rng, p.nvars(), cfg.range);
        Eigen::VectorXd mz = m * z;
        const double a = evaluate(p, as_span(mz)), b = evaluate(q, as_span(z));
        num += a * b;
        den += b * b;
    }
    if (den == 0.0) throw UsageError("least_squares_scale: Q vanishes at every sample");
    return num / den;
}

}  // namespace minsurf
