// minsurf: generate catalog polynomials, verify minimality, sample surfaces.
//
// Exit codes: 0 pass, 1 verification failed, 2 usage error, 3 sampling exhausted.

#include "minsurf/constructions.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/poly_json.hpp"
#include "minsurf/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace minsurf;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kExhausted = 3 };

struct FamilyFlags {
    std::string family;
    int n = 1;
    int N = 1;
    std::vector<int> k;
    std::vector<double> mu;
    double lambda = 1.0;
    CLI::Option* n_opt = nullptr;
    CLI::Option* N_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* mu_opt = nullptr;
    CLI::Option* lambda_opt = nullptr;

    void attach(CLI::App& app) {
        app.add_option("--family", family, "Catalog family tag (see `minsurf list`)");
        n_opt = app.add_option("--n", n, "Block count n");
        N_opt = app.add_option("--N", N, "Multiplicity N");
        k_opt = app.add_option("--k", k, "Exponents k1,k2,... for product_arg")->delimiter(',');
        mu_opt = app.add_option("--mu", mu, "Weights mu1,mu2,... for superposition")->delimiter(',');
        lambda_opt = app.add_option("--lambda", lambda, "Pitch multiplier for helicoid / ch_function");
    }

    FamilySpec spec() const {
        FamilySpec s;
        s.family = family_from_string(family);
        auto reject = [&](CLI::Option* opt, bool used) {
            if (opt->count() > 0 && !used)
                throw UsageError("flag " + opt->get_name() + " does not apply to family " + family);
        };
        const auto f = s.family;
        reject(n_opt, f == Family::ChFunction || f == Family::Superposition || f == Family::TkachevCubic ||
                          f == Family::TkachevPower || f == Family::Quintic4n2 || f == Family::GraphSplit ||
                          f == Family::ArctanSplit);
        reject(N_opt, f == Family::LawsonR4 || f == Family::TkachevPower || f == Family::GraphSplit ||
                          f == Family::ArctanSplit);
        reject(k_opt, f == Family::ProductArg);
        reject(mu_opt, f == Family::Superposition);
        reject(lambda_opt, f == Family::Helicoid || f == Family::ChFunction);
        s.n = n;
        s.N = N;
        s.k = k;
        s.mu = mu;
        s.lambda = lambda;
        if (f == Family::Superposition && n_opt->count() == 0) s.n = 4;
        return s;
    }
};

struct SamplerFlags {
    SamplerConfig cfg;

    void attach(CLI::App& app) {
        app.add_option("--seed", cfg.seed, "Random seed");
        app.add_option("--count", cfg.count, "Number of sample points");
        app.add_option("--range", cfg.range, "Sample box half-width");
    }
};

// Writes to a sibling temporary file and renames it into place.
void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out.flush()) throw UsageError("failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

struct Subject {
    Json id;
    std::optional<Polynomial> polynomial;
    std::optional<ScalarField> field;
    std::optional<Family> family;
};

Subject resolve(const FamilyFlags& flags, const std::string& poly_path) {
    if (!poly_path.empty() && !flags.family.empty()) throw UsageError("give either --family or --poly, not both");
    Subject s;
    if (!poly_path.empty()) {
        auto p = polynomial_from_json(read_json_file(poly_path));
        if (p.is_zero()) throw UsageError("polynomial in " + poly_path + " is zero");
        s.id = polynomial_subject(p);
        s.field = ScalarField::from_polynomial(p);
        s.polynomial = std::move(p);
        return s;
    }
    if (flags.family.empty()) throw UsageError("a subject is required: --family or --poly");
    auto built = build(flags.spec());
    s.id = to_json(built.spec);
    s.family = built.spec.family;
    s.polynomial = std::move(built.polynomial);
    s.field = std::move(built.field);
    return s;
}

int cmd_list(const std::string& format) {
    if (format == "json") {
        Json arr = Json::array();
        for (const auto& e : catalog())
            arr.push_back(Json{{"family", to_string(e.family)},
                               {"parameters", e.parameters},
                               {"ambient_dimension", e.ambient_dimension},
                               {"source", e.example},
                               {"kind", e.algebraic ? "polynomial" : "field"}});
        std::cout << dump(arr);
        return kPass;
    }
    for (const auto& e : catalog())
        std::cout << to_string(e.family) << " (" << e.example << "), ambient dim " << e.ambient_dimension
                  << ", params: " << e.parameters << ", " << (e.algebraic ? "polynomial" : "field") << "\n";
    return kPass;
}

int cmd_gen(const FamilyFlags& flags, const std::string& out, const std::string& format) {
    if (flags.family.empty()) throw UsageError("gen requires --family");
    auto built = build(flags.spec());
    const auto naming = VariableNaming::interleaved(built.nvars);
    if (format == "human") {
        std::string text = built.polynomial ? to_string(*built.polynomial, naming) : built.field->to_string(naming);
        write_output(out, to_string(built.spec.family) + ": " + text + "\n");
        return kPass;
    }
    if (built.polynomial) {
        write_output(out, dump(to_json(*built.polynomial, naming)));
    } else {
        write_output(out, dump(Json{{"family", to_json(built.spec)},
                                    {"nvars", built.nvars},
                                    {"names", naming.names()},
                                    {"kind", "field"},
                                    {"expression", built.field->to_string(naming)}}));
    }
    return kPass;
}

int cmd_verify(const Subject& s, const std::string& mode_flag, const SamplerFlags& sampler, std::optional<double> tol,
               const std::string& checks_flag, const std::string& out) {
    std::string mode = mode_flag;
    if (mode.empty()) mode = s.polynomial ? "symbolic" : "numeric";
    VerificationReport report;
    if (mode == "symbolic") {
        if (!s.polynomial) throw UsageError("symbolic mode needs an algebraic subject");
        report = verify_cone_symbolic(*s.polynomial, s.id);
    } else if (mode == "numeric") {
        CheckSet checks;
        if (!checks_flag.empty()) checks = CheckSet::parse(checks_flag);
        else if (s.family) checks = default_checks(*s.family);
        else checks.levelset_minimal = true;
        NumericOptions opts;
        opts.tol = tol.value_or(1e-8);
        if (s.polynomial) opts.polynomial_degree = s.polynomial->total_degree();
        report = verify_field_numeric(*s.field, checks, sampler.cfg, opts, s.id);
    } else {
        throw UsageError("--mode must be symbolic or numeric");
    }
    write_output(out, dump(to_json(report)));
    return report.passed() ? kPass : kFail;
}

std::string format_csv_value(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

int cmd_sample(const Subject& s, const SamplerFlags& sampler, const std::string& out) {
    // Height functions are sampled on their graphs.
    const bool height = s.family && (*s.family == Family::Helicoid || *s.family == Family::ChFunction ||
                                     *s.family == Family::Superposition);
    const ScalarField level = height ? graph_split(*s.field) : *s.field;
    const auto points = sample_zero_set(level, sampler.cfg);
    const auto naming = VariableNaming::interleaved(level.nvars());

    if (out.size() >= 4 && out.compare(out.size() - 4, 4, ".csv") == 0) {
        std::ostringstream os;
        for (std::size_t i = 0; i < naming.size(); ++i) os << (i ? "," : "") << naming.name(i);
        os << "\n";
        for (const auto& z : points) {
            for (Eigen::Index i = 0; i < z.size(); ++i) os << (i ? "," : "") << format_csv_value(z(i));
            os << "\n";
        }
        write_output(out, os.str());
        return kPass;
    }
    Json pts = Json::array();
    for (const auto& z : points) pts.push_back(std::vector<double>(z.data(), z.data() + z.size()));
    write_output(out, dump(Json{{"subject", s.id},
                                {"seed", sampler.cfg.seed},
                                {"count", points.size()},
                                {"names", naming.names()},
                                {"points", std::move(pts)}}));
    return kPass;
}

int cmd_congruence(const std::string& p_path, const std::string& q_path, const std::string& m_path,
                   std::optional<double> scale_flag, const SamplerFlags& sampler, std::optional<double> tol,
                   const std::string& out) {
    auto p = polynomial_from_json(read_json_file(p_path));
    auto q = polynomial_from_json(read_json_file(q_path));
    auto mj = read_json_file(m_path);
    std::vector<std::vector<double>> rows;
    try {
        rows = mj.at("matrix").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(m_path + ": expected {\"matrix\": [[...], ...]}");
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw UsageError("congruence matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
    }
    double scale = 1.0;
    if (scale_flag) scale = *scale_flag;
    else if (mj.contains("scale")) scale = mj.at("scale").get<double>();
    auto report = verify_congruence_numeric(p, q, m, scale, sampler.cfg, tol.value_or(1e-9));
    write_output(out, dump(to_json(report)));
    return report.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct and verify minimal cones and helicoid height functions"};
    app.require_subcommand(1);

    std::string format = "human";
    auto* list = app.add_subcommand("list", "List catalog families");
    list->add_option("--format", format, "human | json")->check(CLI::IsMember({"human", "json"}));

    FamilyFlags gen_flags;
    std::string gen_out, gen_format = "json";
    auto* gen = app.add_subcommand("gen", "Emit a family's polynomial (JSON) or field description");
    gen_flags.attach(*gen);
    gen->add_option("--out", gen_out, "Output path (default stdout)");
    gen->add_option("--format", gen_format, "json | human")->check(CLI::IsMember({"human", "json"}));

    FamilyFlags verify_flags;
    SamplerFlags verify_sampler;
    std::string verify_poly, verify_mode, verify_checks, verify_out;
    std::optional<double> verify_tol;
    auto* verify = app.add_subcommand("verify", "Verify minimality symbolically or numerically");
    verify_flags.attach(*verify);
    verify_sampler.attach(*verify);
    verify->add_option("--poly", verify_poly, "Polynomial JSON file");
    verify->add_option("--mode", verify_mode, "symbolic | numeric");
    verify->add_option("--tol", verify_tol, "Numeric tolerance on normalized residuals");
    verify->add_option("--checks", verify_checks,
                       "harmonic,inf_harmonic,p_harmonic:1.5:3,graph_minimal,levelset_minimal");
    verify->add_option("--out", verify_out, "Report path (default stdout)");

    FamilyFlags sample_flags;
    SamplerFlags sample_sampler;
    std::string sample_poly, sample_out;
    auto* sample = app.add_subcommand("sample", "Sample points on a zero set (or on a height function's graph)");
    sample_flags.attach(*sample);
    sample_sampler.attach(*sample);
    sample->add_option("--poly", sample_poly, "Polynomial JSON file");
    sample->add_option("--out", sample_out, "Output path; *.csv writes CSV, anything else JSON");

    std::string cong_p, cong_q, cong_m, cong_out;
    std::optional<double> cong_scale, cong_tol;
    SamplerFlags cong_sampler;
    auto* cong = app.add_subcommand("congruence", "Check P(M z) = scale * Q(z) numerically");
    cong->add_option("--p", cong_p, "Polynomial JSON for P")->required();
    cong->add_option("--q", cong_q, "Polynomial JSON for Q")->required();
    cong->add_option("--matrix", cong_m, "JSON file {\"matrix\": [[...]], \"scale\": s?}")->required();
    cong->add_option("--scale", cong_scale, "Scale factor (overrides the matrix file)");
    cong->add_option("--tol", cong_tol, "Tolerance");
    cong->add_option("--out", cong_out, "Report path (default stdout)");
    cong_sampler.attach(*cong);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*list) return cmd_list(format);
        if (*gen) return cmd_gen(gen_flags, gen_out, gen_format);
        if (*verify)
            return cmd_verify(resolve(verify_flags, verify_poly), verify_mode, verify_sampler, verify_tol,
                              verify_checks, verify_out);
        if (*sample) return cmd_sample(resolve(sample_flags, sample_poly), sample_sampler, sample_out);
        if (*cong) return cmd_congruence(cong_p, cong_q, cong_m, cong_scale, cong_sampler, cong_tol, cong_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SamplingExhausted& e) {
        std::cerr << "sampling exhausted: " << e.what() << "\n";
        return kExhausted;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
