#include "minsurf/constructions.hpp"
#include "minsurf/diffops.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/poly_json.hpp"
#include "minsurf/verify.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace minsurf;

namespace {

SamplerConfig sampler(std::uint64_t seed, std::size_t count, double range) {
    SamplerConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    cfg.range = range;
    validate(cfg);
    return cfg;
}

Eigen::MatrixXd stack(const std::vector<Eigen::VectorXd>& points, std::size_t nvars) {
    Eigen::MatrixXd out(Eigen::Index(points.size()), Eigen::Index(nvars));
    for (std::size_t i = 0; i < points.size(); ++i) out.row(Eigen::Index(i)) = points[i].transpose();
    return out;
}

}  // namespace

PYBIND11_MODULE(_minsurf, m) {
    m.doc() = "Exact and numeric verification of minimal hypersurfaces built from harmonic, infinity-harmonic functions";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
    py::register_exception<SingularPointError>(m, "SingularPointError", PyExc_ArithmeticError);
    py::register_exception<SamplingExhausted>(m, "SamplingExhausted", PyExc_RuntimeError);

    py::class_<Polynomial>(m, "Polynomial")
        .def_static("from_json", [](const std::string& text) { return polynomial_from_json(Json::parse(text)); })
        .def_static("variable", &Polynomial::variable, py::arg("nvars"), py::arg("index"))
        .def_static("constant",
                    [](std::size_t nvars, const std::string& c) { return Polynomial::constant(nvars, parse_rational(c)); },
                    py::arg("nvars"), py::arg("value"))
        .def("to_json", [](const Polynomial& p) { return to_json(p).dump(); })
        .def_property_readonly("nvars", &Polynomial::nvars)
        .def_property_readonly("total_degree", &Polynomial::total_degree)
        .def_property_readonly("homogeneous_degree", [](const Polynomial& p) { return homogeneous_degree(p); })
        .def("is_zero", &Polynomial::is_zero)
        .def("evaluate", [](const Polynomial& p, const std::vector<double>& z) { return evaluate(p, z); })
        .def("partial", [](const Polynomial& p, std::size_t i) { return partial(p, i); })
        .def("divide_exact", [](const Polynomial& a, const Polynomial& b) { return divide_exact(a, b); })
        .def("__add__", [](const Polynomial& a, const Polynomial& b) { return a + b; })
        .def("__sub__", [](const Polynomial& a, const Polynomial& b) { return a - b; })
        .def("__mul__", [](const Polynomial& a, const Polynomial& b) { return a * b; })
        .def("__neg__", [](const Polynomial& a) { return -a; })
        .def("__pow__", [](const Polynomial& a, unsigned e) { return a.pow(e); })
        .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; })
        .def("__str__", [](const Polynomial& p) { return to_string(p); })
        .def("__repr__", [](const Polynomial& p) { return "Polynomial(" + to_string(p) + ")"; });

    py::class_<ScalarField>(m, "ScalarField")
        .def_static("from_polynomial", &ScalarField::from_polynomial)
        .def_property_readonly("nvars", &ScalarField::nvars)
        .def("value", [](const ScalarField& f, const std::vector<double>& z) { return eval_value(f, z); })
        .def("jet",
             [](const ScalarField& f, const std::vector<double>& z) {
                 auto j = eval_jet2(f, z);
                 return std::make_tuple(j.value, Eigen::VectorXd(j.gradient), Eigen::MatrixXd(j.hessian));
             })
        .def("__str__", [](const ScalarField& f) { return f.to_string(); })
        .def("__add__", [](const ScalarField& a, const ScalarField& b) { return a + b; })
        .def("__mul__", [](const ScalarField& a, double c) { return c * a; })
        .def("__rmul__", [](const ScalarField& a, double c) { return c * a; });

    m.def("helicoid_height", &helicoid_height);
    m.def("ch_height", &ch_height, py::arg("n"));
    m.def("screw_superposition", &screw_superposition, py::arg("n"), py::arg("mu"));
    m.def("graph_split", &graph_split);
    m.def("arctan_split", &arctan_split);
    m.def("tan_graph_height", &tan_graph_height);

    m.def("clifford_cone", &clifford_cone);
    m.def("lawson_cone_r4", &lawson_cone_r4, py::arg("N"));
    m.def("tkachev_cubic", &tkachev_cubic, py::arg("n"));
    m.def("tkachev_power_cone", &tkachev_power_cone, py::arg("n"), py::arg("N"));
    m.def("quintic_cone_4n2", &quintic_cone_4n2, py::arg("n"));
    m.def("product_arg_cone", &product_arg_cone, py::arg("k"));
    m.def("tan_multiple_rational", &tan_multiple_rational, py::arg("N"));

    m.def("laplacian_at", [](const ScalarField& f, const std::vector<double>& z) { return laplacian_at(f, z); });
    m.def("inf_laplacian_at", [](const ScalarField& f, const std::vector<double>& z) { return inf_laplacian_at(f, z); });
    m.def("p_laplacian_at",
          [](const ScalarField& f, const std::vector<double>& z, double p) { return p_laplacian_at(f, z, p); });
    m.def("graph_residual_at",
          [](const ScalarField& f, const std::vector<double>& z) { return graph_residual_at(f, z); });
    m.def("levelset_residual_at",
          [](const ScalarField& f, const std::vector<double>& z) { return levelset_residual_at(f, z); });
    m.def("sym_laplacian", &sym_laplacian);
    m.def("sym_inf_laplacian", &sym_inf_laplacian);
    m.def("sym_levelset_residual", &sym_levelset_residual);

    m.def("catalog_json", [] {
        Json out = Json::array();
        for (const auto& e : catalog())
            out.push_back({{"family", to_string(e.family)},
                           {"parameters", e.parameters},
                           {"ambient_dimension", e.ambient_dimension},
                           {"algebraic", e.algebraic}});
        return out.dump();
    });

    // Family specs cross the boundary as JSON text.
    m.def("build_polynomial", [](const std::string& spec) -> std::optional<Polynomial> {
        return build(family_spec_from_json(Json::parse(spec))).polynomial;
    });
    m.def("build_field", [](const std::string& spec) { return *build(family_spec_from_json(Json::parse(spec))).field; });

    m.def("verify_cone_symbolic_json",
          [](const Polynomial& p) { return to_json(verify_cone_symbolic(p, polynomial_subject(p))).dump(); });
    m.def(
        "verify_field_numeric_json",
        [](const ScalarField& f, const std::string& checks, std::uint64_t seed, std::size_t count, double range,
           double tol, std::optional<std::uint64_t> degree) {
            NumericOptions opts{tol, degree};
            return to_json(verify_field_numeric(f, CheckSet::parse(checks), sampler(seed, count, range), opts)).dump();
        },
        py::arg("field"), py::arg("checks"), py::arg("seed") = 0, py::arg("count") = 100, py::arg("range") = 2.0,
        py::arg("tol") = 1e-8, py::arg("polynomial_degree") = std::nullopt);
    m.def(
        "rotational_derivative_json",
        [](const ScalarField& f, const std::vector<std::pair<std::size_t, std::size_t>>& pairs, double expected,
           std::uint64_t seed, std::size_t count, double tol) {
            return to_json(rotational_derivative_check(f, pairs, expected, sampler(seed, count, 2.0), tol)).dump();
        },
        py::arg("field"), py::arg("pairs"), py::arg("expected"), py::arg("seed") = 0, py::arg("count") = 100,
        py::arg("tol") = 1e-9);
    m.def(
        "verify_congruence_json",
        [](const Polynomial& p, const Polynomial& q, const Eigen::MatrixXd& mat, double scale, std::uint64_t seed,
           std::size_t count, double tol) {
            return to_json(verify_congruence_numeric(p, q, mat, scale, sampler(seed, count, 2.0), tol)).dump();
        },
        py::arg("p"), py::arg("q"), py::arg("matrix"), py::arg("scale"), py::arg("seed") = 0, py::arg("count") = 100,
        py::arg("tol") = 1e-9);

    m.def(
        "sample_zero_set",
        [](const ScalarField& u, std::uint64_t seed, std::size_t count, double range) {
            return stack(sample_zero_set(u, sampler(seed, count, range)), u.nvars());
        },
        py::arg("level"), py::arg("seed") = 0, py::arg("count") = 100, py::arg("range") = 2.0);
    m.def(
        "sample_polynomial_zero_set",
        [](const Polynomial& p, std::uint64_t seed, std::size_t count, double range) {
            return stack(sample_zero_set(p, sampler(seed, count, range)), p.nvars());
        },
        py::arg("polynomial"), py::arg("seed") = 0, py::arg("count") = 100, py::arg("range") = 2.0);
}
