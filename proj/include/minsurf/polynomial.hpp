#pragma once

#include "minsurf/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace minsurf {

/// Exponent vector of a monomial. Its length is the ambient dimension of the
/// owning polynomial.
class Monomial {
public:
    using Exponent = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

    static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1);

    std::size_t nvars() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    Exponent& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<Exponent>& exponents() const noexcept { return exps_; }

    std::uint64_t degree() const noexcept;
    bool divides(const Monomial& other) const noexcept;

    Monomial operator*(const Monomial& other) const;
    // Requires divides(other).
    Monomial operator/(const Monomial& divisor) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

    // Graded lexicographic: total degree first, then lexicographic with
    // variable 0 most significant.
    static bool grlex_less(const Monomial& a, const Monomial& b) noexcept;

private:
    std::vector<Exponent> exps_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

/// Orders monomials so that the graded-lex leading term comes first.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept {
        return Monomial::grlex_less(b, a);
    }
};

struct Term {
    Monomial monomial;
    Rational coeff;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Multivariate polynomial over Q in canonical form: terms sorted by
/// descending graded-lex order, no zero coefficients, no duplicates.
class Polynomial {
public:
    explicit Polynomial(std::size_t nvars = 1);
    // Collects like terms, drops zeros and sorts.
    Polynomial(std::size_t nvars, std::vector<Term> terms);

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial monomial(const Monomial& m, const Rational& c);

    std::size_t nvars() const noexcept { return nvars_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    // Requires a non-zero polynomial.
    const Term& leading_term() const;
    std::uint64_t total_degree() const noexcept;
    Rational constant_term() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    Polynomial pow(unsigned exponent) const;

    // Places this polynomial's variables at [offset, offset + nvars()) of a
    // larger ambient space.
    Polynomial embed(std::size_t new_nvars, std::size_t offset) const;

private:
    std::size_t nvars_;
    std::vector<Term> terms_;
};

/// Display names for variable indices: x1, y1, x2, y2, ... and a trailing z
/// when the dimension is odd. Univariate polynomials use t.
class VariableNaming {
public:
    static VariableNaming interleaved(std::size_t nvars);
    static VariableNaming univariate();
    explicit VariableNaming(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    // Throws UsageError for unknown names.
    std::size_t index(const std::string& name) const;

private:
    std::vector<std::string> names_;
};

Polynomial partial(const Polynomial& p, std::size_t index);
std::vector<Polynomial> gradient(const Polynomial& p);

Rational evaluate(const Polynomial& p, std::span<const Rational> point);
double evaluate(const Polynomial& p, std::span<const double> point);

/// Returns p(M z). M is row-major nvars x nvars.
Polynomial substitute_linear(const Polynomial& p, const std::vector<std::vector<Rational>>& matrix);

struct DivisionResult {
    Polynomial quotient;
    Polynomial remainder;
};

/// Single-divisor multivariate division in graded-lex order. The remainder
/// has no term divisible by the leading monomial of the divisor.
DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor);

/// Quotient q with dividend = q * divisor, or nullopt when the remainder is
/// non-zero.
std::optional<Polynomial> divide_exact(const Polynomial& dividend, const Polynomial& divisor);

/// Common total degree of every term, or nullopt for mixed degrees.
std::optional<std::uint64_t> homogeneous_degree(const Polynomial& p);

std::string to_string(const Polynomial& p, const VariableNaming& naming);
std::string to_string(const Polynomial& p);

}  // namespace minsurf
