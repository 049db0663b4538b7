#include "minsurf/polynomial.hpp"

#include "minsurf/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace minsurf {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw UsageError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den) {
    return make_rational(Integer(num), Integer(den));
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s, 10));
        return make_rational(Integer(s.substr(0, slash), 10), Integer(s.substr(slash + 1), 10));
    } catch (const std::invalid_argument&) {
        throw UsageError("malformed rational: '" + s + "'");
    }
}

std::string to_string(const Rational& q) {
    return q.get_str(10);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t index, Exponent power) {
    Monomial m(nvars);
    m.exps_.at(index) = power;
    return m;
}

std::uint64_t Monomial::degree() const noexcept {
    std::uint64_t d = 0;
    for (auto e : exps_) d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= divisor.exps_[i];
    return r;
}

bool Monomial::grlex_less(const Monomial& a, const Monomial& b) noexcept {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exps_ < b.exps_;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto e : m.exponents()) {
        h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

// -------------------------------------------------------------- Polynomial

namespace {

using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;

std::vector<Term> collect(Accumulator&& acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return GrlexGreater{}(a.monomial, b.monomial); });
    return out;
}

void require_same_dim(const Polynomial& a, const Polynomial& b, const char* op) {
    if (a.nvars() != b.nvars())
        throw UsageError(std::string(op) + ": dimension mismatch (" + std::to_string(a.nvars()) +
                         " vs " + std::to_string(b.nvars()) + ")");
}

// Merge of two sorted term lists; sign = +1 or -1 for the second operand.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    GrlexGreater before;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && before(a[i].monomial, b[j].monomial))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || before(b[j].monomial, a[i].monomial)) {
            out.push_back(b[j]);
            if (sign < 0) out.back().coeff = -out.back().coeff;
            ++j;
        } else {
            Rational c = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
            if (c != 0) out.push_back({a[i].monomial, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
    if (nvars == 0) throw UsageError("polynomial needs at least one variable");
}

Polynomial::Polynomial(std::size_t nvars, std::vector<Term> terms) : Polynomial(nvars) {
    Accumulator acc;
    for (auto& t : terms) {
        if (t.monomial.nvars() != nvars)
            throw UsageError("monomial length " + std::to_string(t.monomial.nvars()) +
                             " does not match nvars " + std::to_string(nvars));
        acc[t.monomial] += t.coeff;
    }
    terms_ = collect(std::move(acc));
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    return monomial(Monomial(nvars), c);
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw UsageError("variable index out of range");
    return monomial(Monomial::variable(nvars, index), Rational(1));
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
    Polynomial p(m.nvars());
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

const Term& Polynomial::leading_term() const {
    if (terms_.empty()) throw UsageError("leading term of zero polynomial");
    return terms_.front();
}

std::uint64_t Polynomial::total_degree() const noexcept {
    // Graded order: the leading term has maximal degree.
    return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().monomial.degree() == 0) return terms_.back().coeff;
    return Rational(0);
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    require_same_dim(*this, other, "add");
    terms_ = merge(terms_, other.terms_, +1);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    require_same_dim(*this, other, "subtract");
    terms_ = merge(terms_, other.terms_, -1);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_dim(a, b, "multiply");
    Polynomial r(a.nvars());
    if (a.is_zero() || b.is_zero()) return r;
    Accumulator acc;
    acc.reserve(a.size() * b.size());
    Rational prod;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            mpq_mul(prod.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
            acc[ta.monomial * tb.monomial] += prod;
        }
    r.terms_ = collect(std::move(acc));
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base = base * base;
    }
    return result;
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::size_t offset) const {
    if (offset + nvars_ > new_nvars) throw UsageError("embed: block exceeds ambient dimension");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m(new_nvars);
        for (std::size_t i = 0; i < nvars_; ++i) m[offset + i] = t.monomial[i];
        out.push_back({std::move(m), t.coeff});
    }
    return Polynomial(new_nvars, std::move(out));
}

// ---------------------------------------------------------- VariableNaming

VariableNaming VariableNaming::interleaved(std::size_t nvars) {
    std::vector<std::string> names;
    names.reserve(nvars);
    for (std::size_t k = 1; 2 * k <= nvars; ++k) {
        names.push_back("x" + std::to_string(k));
        names.push_back("y" + std::to_string(k));
    }
    if (nvars % 2 == 1) names.emplace_back("z");
    return VariableNaming(std::move(names));
}

VariableNaming VariableNaming::univariate() {
    return VariableNaming({"t"});
}

VariableNaming::VariableNaming(std::vector<std::string> names) : names_(std::move(names)) {
    auto sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw UsageError("variable names must be distinct");
}

std::size_t VariableNaming::index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw UsageError("unknown variable name '" + name + "'");
    return static_cast<std::size_t>(it - names_.begin());
}

// -------------------------------------------------------------- operations

Polynomial partial(const Polynomial& p, std::size_t index) {
    if (index >= p.nvars()) throw UsageError("partial: variable index out of range");
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        auto e = t.monomial[index];
        if (e == 0) continue;
        Term d{t.monomial, t.coeff * e};
        d.monomial[index] = e - 1;
        out.push_back(std::move(d));
    }
    return Polynomial(p.nvars(), std::move(out));
}

std::vector<Polynomial> gradient(const Polynomial& p) {
    std::vector<Polynomial> g;
    g.reserve(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) g.push_back(partial(p, i));
    return g;
}

namespace {

template <typename T>
T evaluate_impl(const Polynomial& p, std::span<const T> point, auto&& coeff) {
    if (point.size() != p.nvars())
        throw UsageError("evaluate: point has " + std::to_string(point.size()) + " coordinates, expected " +
                         std::to_string(p.nvars()));
    std::vector<std::vector<T>> powers(p.nvars(), std::vector<T>{T(1)});
    auto power = [&](std::size_t i, std::size_t e) -> const T& {
        auto& table = powers[i];
        while (table.size() <= e) table.push_back(table.back() * point[i]);
        return table[e];
    };
    T sum(0);
    for (const auto& t : p.terms()) {
        T v = coeff(t.coeff);
        for (std::size_t i = 0; i < p.nvars(); ++i)
            if (t.monomial[i] != 0) v *= power(i, t.monomial[i]);
        sum += v;
    }
    return sum;
}

}  // namespace

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
    return evaluate_impl<Rational>(p, point, [](const Rational& c) { return c; });
}

double evaluate(const Polynomial& p, std::span<const double> point) {
    return evaluate_impl<double>(p, point, [](const Rational& c) { return c.get_d(); });
}

Polynomial substitute_linear(const Polynomial& p, const std::vector<std::vector<Rational>>& matrix) {
    const auto n = p.nvars();
    if (matrix.size() != n) throw UsageError("substitute_linear: matrix must be nvars x nvars");
    std::vector<Polynomial> forms;
    forms.reserve(n);
    for (const auto& row : matrix) {
        if (row.size() != n) throw UsageError("substitute_linear: matrix must be nvars x nvars");
        std::vector<Term> terms;
        for (std::size_t k = 0; k < n; ++k) terms.push_back({Monomial::variable(n, k), row[k]});
        forms.emplace_back(n, std::move(terms));
    }
    std::vector<std::vector<Polynomial>> powers(n);
    for (std::size_t i = 0; i < n; ++i) powers[i].push_back(Polynomial::constant(n, Rational(1)));
    auto power = [&](std::size_t i, std::size_t e) -> const Polynomial& {
        auto& table = powers[i];
        while (table.size() <= e) table.push_back(table.back() * forms[i]);
        return table[e];
    };
    Polynomial result(n);
    for (const auto& t : p.terms()) {
        Polynomial v = Polynomial::constant(n, t.coeff);
        for (std::size_t i = 0; i < n; ++i)
            if (t.monomial[i] != 0) v *= power(i, t.monomial[i]);
        result += v;
    }
    return result;
}

DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor) {
    require_same_dim(dividend, divisor, "divide");
    if (divisor.is_zero()) throw UsageError("divide: zero divisor");
    const auto n = dividend.nvars();
    const Term& lead = divisor.leading_term();

    std::map<Monomial, Rational, GrlexGreater> work;
    for (const auto& t : dividend.terms()) work.emplace_hint(work.end(), t.monomial, t.coeff);

    std::vector<Term> quotient, remainder;
    Rational prod;
    while (!work.empty()) {
        auto top = work.begin();
        if (!lead.monomial.divides(top->first)) {
            // Terms leave the working set in strictly decreasing order, so
            // the remainder list is already canonical.
            remainder.push_back({top->first, std::move(top->second)});
            work.erase(top);
            continue;
        }
        Term q{top->first / lead.monomial, top->second / lead.coeff};
        for (const auto& d : divisor.terms()) {
            mpq_mul(prod.get_mpq_t(), q.coeff.get_mpq_t(), d.coeff.get_mpq_t());
            auto [it, inserted] = work.try_emplace(q.monomial * d.monomial);
            it->second -= prod;
            if (it->second == 0) work.erase(it);
        }
        quotient.push_back(std::move(q));
    }
    return {Polynomial(n, std::move(quotient)), Polynomial(n, std::move(remainder))};
}

std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
    auto [q, r] = divide(dividend, divisor);
    if (!r.is_zero()) return std::nullopt;
    return std::move(q);
}

std::optional<std::uint64_t> homogeneous_degree(const Polynomial& p) {
    if (p.is_zero()) throw UsageError("homogeneous_degree of the zero polynomial");
    auto d = p.terms().front().monomial.degree();
    for (const auto& t : p.terms())
        if (t.monomial.degree() != d) return std::nullopt;
    return d;
}

std::string to_string(const Polynomial& p, const VariableNaming& naming) {
    if (naming.size() != p.nvars()) throw UsageError("naming size does not match nvars");
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.coeff;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool constant = t.monomial.degree() == 0;
        if (c != 1 || constant) {
            os << to_string(c);
            if (!constant) os << "*";
        }
        bool first_factor = true;
        for (std::size_t i = 0; i < p.nvars(); ++i) {
            auto e = t.monomial[i];
            if (e == 0) continue;
            if (!first_factor) os << "*";
            first_factor = false;
            os << naming.name(i);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

std::string to_string(const Polynomial& p) {
    return to_string(p, VariableNaming::interleaved(p.nvars()));
}

}  // namespace minsurf
