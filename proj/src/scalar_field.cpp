#include "minsurf/scalar_field.hpp"

#include "minsurf/errors.hpp"

#include <cmath>
#include <sstream>

namespace minsurf {

using Node = ScalarField::Node;
using Kind = ScalarField::Kind;
using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr make_node(Node n) {
    return std::make_shared<const Node>(std::move(n));
}

NodePtr unary(Kind kind, NodePtr child, int exponent = 0) {
    Node n;
    n.kind = kind;
    n.exponent = exponent;
    n.children.push_back(std::move(child));
    return make_node(std::move(n));
}

void require_same_dim(std::size_t a, std::size_t b) {
    if (a != b)
        throw UsageError("scalar field dimension mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

// ------------------------------------------------------------ rendering

void render(const Node& n, const VariableNaming& names, std::ostream& os) {
    switch (n.kind) {
    case Kind::Constant: {
        std::ostringstream c;
        c.precision(17);
        c << n.constant;
        os << c.str();
        break;
    }
    case Kind::Variable: os << names.name(n.index); break;
    case Kind::Sum:
    case Kind::Product: {
        const char* sep = n.kind == Kind::Sum ? " + " : "*";
        os << "(";
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) os << sep;
            render(*n.children[i], names, os);
        }
        os << ")";
        break;
    }
    case Kind::Negate:
        os << "-";
        render(*n.children[0], names, os);
        break;
    case Kind::Reciprocal:
        os << "1/";
        render(*n.children[0], names, os);
        break;
    case Kind::IntegerPower:
        render(*n.children[0], names, os);
        os << "^" << n.exponent;
        break;
    case Kind::Arctan:
    case Kind::Tan:
        os << (n.kind == Kind::Arctan ? "arctan(" : "tan(");
        render(*n.children[0], names, os);
        os << ")";
        break;
    case Kind::PolynomialLeaf: os << "(" << minsurf::to_string(*n.polynomial, names) << ")"; break;
    }
}

std::string render(const Node& n, std::size_t nvars) {
    std::ostringstream os;
    render(n, VariableNaming::interleaved(nvars), os);
    return os.str();
}

NodePtr embed_node(const NodePtr& n, std::size_t new_nvars, std::size_t offset) {
    Node copy = *n;
    switch (n->kind) {
    case Kind::Variable: copy.index += offset; break;
    case Kind::PolynomialLeaf:
        copy.polynomial = std::make_shared<const Polynomial>(n->polynomial->embed(new_nvars, offset));
        break;
    default:
        for (auto& c : copy.children) c = embed_node(c, new_nvars, offset);
        break;
    }
    return make_node(std::move(copy));
}

// ------------------------------------------------------------ evaluation

struct Evaluator {
    std::span<const double> point;
    DomainGuard guard;
    std::size_t nvars;

    [[noreturn]] void out_of_domain(const Node& n, const std::string& why) const {
        auto sub = render(n, nvars);
        throw DomainError(why + " in " + sub, sub);
    }

    double check_denominator(const Node& n, double x) const {
        if (!(std::abs(x) >= guard.min_denominator)) out_of_domain(n, "denominator below domain guard");
        return x;
    }

    double check_cos(const Node& n, double x) const {
        double c = std::cos(x);
        if (!(std::abs(c) >= guard.min_denominator)) out_of_domain(n, "tan pole");
        return c;
    }

    double value(const Node& n) const {
        switch (n.kind) {
        case Kind::Constant: return n.constant;
        case Kind::Variable: return point[n.index];
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& c : n.children) s += value(*c);
            return s;
        }
        case Kind::Product: {
            double p = 1.0;
            for (const auto& c : n.children) p *= value(*c);
            return p;
        }
        case Kind::Negate: return -value(*n.children[0]);
        case Kind::Reciprocal: return 1.0 / check_denominator(*n.children[0], value(*n.children[0]));
        case Kind::IntegerPower: {
            double x = value(*n.children[0]);
            if (n.exponent < 0) check_denominator(*n.children[0], x);
            return std::pow(x, n.exponent);
        }
        case Kind::Arctan: return std::atan(value(*n.children[0]));
        case Kind::Tan: {
            double x = value(*n.children[0]);
            return std::sin(x) / check_cos(*n.children[0], x);
        }
        case Kind::PolynomialLeaf: return evaluate(*n.polynomial, point);
        }
        return 0.0;
    }

    // Chain rule for phi(a) given phi, phi', phi''.
    static Jet2 compose(const Jet2& a, double v, double d1, double d2) {
        Jet2 r(a.dimension());
        r.value = v;
        r.gradient = d1 * a.gradient;
        r.hessian = d1 * a.hessian + d2 * (a.gradient * a.gradient.transpose());
        return r;
    }

    Jet2 polynomial_jet(const Node& n) const {
        const auto& p = *n.polynomial;
        const auto dim = static_cast<Eigen::Index>(nvars);
        Jet2 r(dim);
        std::vector<std::size_t> support;
        std::vector<double> full, first, second;
        for (std::size_t t = 0; t < p.terms().size(); ++t) {
            const auto& m = p.terms()[t].monomial;
            const double c = n.float_coeffs[t];
            support.clear();
            for (std::size_t i = 0; i < nvars; ++i)
                if (m[i] != 0) support.push_back(i);
            // Per supported variable: z^e, e z^(e-1), e(e-1) z^(e-2).
            full.assign(support.size(), 0.0);
            first.assign(support.size(), 0.0);
            second.assign(support.size(), 0.0);
            for (std::size_t s = 0; s < support.size(); ++s) {
                const double z = point[support[s]];
                const int e = static_cast<int>(m[support[s]]);
                full[s] = std::pow(z, e);
                first[s] = e * std::pow(z, e - 1);
                second[s] = e > 1 ? e * (e - 1) * std::pow(z, e - 2) : 0.0;
            }
            auto product_except = [&](std::size_t skip1, std::size_t skip2) {
                double v = c;
                for (std::size_t s = 0; s < support.size(); ++s)
                    if (s != skip1 && s != skip2) v *= full[s];
                return v;
            };
            const auto none = support.size();
            r.value += product_except(none, none);
            for (std::size_t a = 0; a < support.size(); ++a) {
                const auto ia = static_cast<Eigen::Index>(support[a]);
                const double rest_a = product_except(a, none);
                r.gradient(ia) += first[a] * rest_a;
                r.hessian(ia, ia) += second[a] * rest_a;
                for (std::size_t b = a + 1; b < support.size(); ++b) {
                    const auto ib = static_cast<Eigen::Index>(support[b]);
                    const double h = first[a] * first[b] * product_except(a, b);
                    r.hessian(ia, ib) += h;
                    r.hessian(ib, ia) += h;
                }
            }
        }
        return r;
    }

    Jet2 jet(const Node& n) const {
        const auto dim = static_cast<Eigen::Index>(nvars);
        switch (n.kind) {
        case Kind::Constant: {
            Jet2 r(dim);
            r.value = n.constant;
            return r;
        }
        case Kind::Variable: {
            Jet2 r(dim);
            r.value = point[n.index];
            r.gradient(static_cast<Eigen::Index>(n.index)) = 1.0;
            return r;
        }
        case Kind::Sum: {
            Jet2 r(dim);
            for (const auto& c : n.children) {
                Jet2 j = jet(*c);
                r.value += j.value;
                r.gradient += j.gradient;
                r.hessian += j.hessian;
            }
            return r;
        }
        case Kind::Product: {
            Jet2 r(dim);
            r.value = 1.0;
            for (const auto& c : n.children) {
                Jet2 b = jet(*c);
                Jet2 next(dim);
                next.value = r.value * b.value;
                next.gradient = r.gradient * b.value + b.gradient * r.value;
                Eigen::MatrixXd cross = r.gradient * b.gradient.transpose();
                next.hessian = r.hessian * b.value + b.hessian * r.value + cross + cross.transpose();
                r = std::move(next);
            }
            return r;
        }
        case Kind::Negate: {
            Jet2 r = jet(*n.children[0]);
            r.value = -r.value;
            r.gradient = -r.gradient;
            r.hessian = -r.hessian;
            return r;
        }
        case Kind::Reciprocal: {
            Jet2 a = jet(*n.children[0]);
            const double x = check_denominator(*n.children[0], a.value);
            return compose(a, 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
        }
        case Kind::IntegerPower: {
            Jet2 a = jet(*n.children[0]);
            const double x = a.value;
            const int k = n.exponent;
            if (k < 0) check_denominator(*n.children[0], x);
            if (k == 0) return compose(a, 1.0, 0.0, 0.0);
            const double d1 = k * std::pow(x, k - 1);
            const double d2 = k == 1 ? 0.0 : double(k) * (k - 1) * std::pow(x, k - 2);
            return compose(a, std::pow(x, k), d1, d2);
        }
        case Kind::Arctan: {
            Jet2 a = jet(*n.children[0]);
            const double x = a.value;
            const double s = 1.0 / (1.0 + x * x);
            return compose(a, std::atan(x), s, -2.0 * x * s * s);
        }
        case Kind::Tan: {
            Jet2 a = jet(*n.children[0]);
            const double c = check_cos(*n.children[0], a.value);
            const double t = std::sin(a.value) / c;
            const double sec2 = 1.0 + t * t;
            return compose(a, t, sec2, 2.0 * t * sec2);
        }
        case Kind::PolynomialLeaf: return polynomial_jet(n);
        }
        return Jet2(dim);
    }
};

void require_point(const ScalarField& f, std::span<const double> point) {
    if (point.size() != f.nvars())
        throw UsageError("point has " + std::to_string(point.size()) + " coordinates, field expects " +
                         std::to_string(f.nvars()));
}

}  // namespace

// ------------------------------------------------------------ construction

ScalarField ScalarField::constant(std::size_t nvars, double value) {
    Node n;
    n.kind = Kind::Constant;
    n.constant = value;
    return {nvars, make_node(std::move(n))};
}

ScalarField ScalarField::constant(std::size_t nvars, const Rational& value) {
    return constant(nvars, value.get_d());
}

ScalarField ScalarField::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw UsageError("variable index out of range");
    Node n;
    n.kind = Kind::Variable;
    n.index = index;
    return {nvars, make_node(std::move(n))};
}

ScalarField ScalarField::from_polynomial(const Polynomial& p) {
    Node n;
    n.kind = Kind::PolynomialLeaf;
    n.polynomial = std::make_shared<const Polynomial>(p);
    n.float_coeffs.reserve(p.size());
    for (const auto& t : p.terms()) n.float_coeffs.push_back(t.coeff.get_d());
    return {p.nvars(), make_node(std::move(n))};
}

ScalarField ScalarField::sum(const std::vector<ScalarField>& terms) {
    if (terms.empty()) throw UsageError("empty sum");
    Node n;
    n.kind = Kind::Sum;
    for (const auto& t : terms) {
        require_same_dim(terms.front().nvars(), t.nvars());
        n.children.push_back(t.root_);
    }
    return {terms.front().nvars(), make_node(std::move(n))};
}

ScalarField ScalarField::product(const std::vector<ScalarField>& factors) {
    if (factors.empty()) throw UsageError("empty product");
    Node n;
    n.kind = Kind::Product;
    for (const auto& t : factors) {
        require_same_dim(factors.front().nvars(), t.nvars());
        n.children.push_back(t.root_);
    }
    return {factors.front().nvars(), make_node(std::move(n))};
}

ScalarField ScalarField::operator-() const {
    return {nvars_, unary(Kind::Negate, root_)};
}

ScalarField ScalarField::reciprocal() const {
    return {nvars_, unary(Kind::Reciprocal, root_)};
}

ScalarField ScalarField::pow(int exponent) const {
    return {nvars_, unary(Kind::IntegerPower, root_, exponent)};
}

ScalarField ScalarField::arctan() const {
    return {nvars_, unary(Kind::Arctan, root_)};
}

ScalarField ScalarField::tan() const {
    return {nvars_, unary(Kind::Tan, root_)};
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return ScalarField::sum({a, b});
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return ScalarField::sum({a, -b});
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return ScalarField::product({a, b});
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    return ScalarField::product({a, b.reciprocal()});
}

ScalarField operator*(double c, const ScalarField& f) {
    return ScalarField::product({ScalarField::constant(f.nvars(), c), f});
}

ScalarField ScalarField::embed(std::size_t new_nvars, std::size_t offset) const {
    if (offset + nvars_ > new_nvars) throw UsageError("embed: block exceeds ambient dimension");
    return {new_nvars, embed_node(root_, new_nvars, offset)};
}

std::string ScalarField::to_string() const {
    return render(*root_, nvars_);
}

std::string ScalarField::to_string(const VariableNaming& naming) const {
    if (naming.size() != nvars_) throw UsageError("naming size does not match nvars");
    std::ostringstream os;
    render(*root_, naming, os);
    return os.str();
}

// ------------------------------------------------------------ evaluation

Jet2 eval_jet2(const ScalarField& f, std::span<const double> point, const DomainGuard& guard) {
    require_point(f, point);
    Jet2 r = Evaluator{point, guard, f.nvars()}.jet(f.root());
    // Mirror the upper triangle so symmetry holds bit-for-bit.
    for (Eigen::Index i = 0; i < r.dimension(); ++i)
        for (Eigen::Index j = i + 1; j < r.dimension(); ++j) r.hessian(j, i) = r.hessian(i, j);
    return r;
}

double eval_value(const ScalarField& f, std::span<const double> point, const DomainGuard& guard) {
    require_point(f, point);
    return Evaluator{point, guard, f.nvars()}.value(f.root());
}

FiniteDifference fd_hessian(const ScalarField& f, std::span<const double> point, double h, const DomainGuard& guard) {
    require_point(f, point);
    if (!(h > 0.0)) throw UsageError("finite-difference step must be positive");
    const auto n = static_cast<Eigen::Index>(f.nvars());
    std::vector<double> z(point.begin(), point.end());
    auto at = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
        auto saved_i = z[i], saved_j = z[j];
        z[i] += di;
        z[j] += dj;
        double v = eval_value(f, z, guard);
        z[i] = saved_i;
        z[j] = saved_j;
        return v;
    };
    FiniteDifference fd{Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
    const double center = eval_value(f, point, guard);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double plus = at(i, h, i, 0.0);
        const double minus = at(i, -h, i, 0.0);
        fd.gradient(i) = (plus - minus) / (2.0 * h);
        fd.hessian(i, i) = (plus - 2.0 * center + minus) / (h * h);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h)) / (4.0 * h * h);
            fd.hessian(i, j) = v;
            fd.hessian(j, i) = v;
        }
    }
    return fd;
}

}  // namespace minsurf
