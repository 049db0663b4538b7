#pragma once

#include <stdexcept>
#include <string>

namespace minsurf {

// Caller violated a precondition (dimension mismatch, bad index, bad family parameters).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numeric evaluation hit a pole or branch locus.
class DomainError : public std::domain_error {
public:
    DomainError(const std::string& what, std::string subexpression)
        : std::domain_error(what), subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

// p-Laplacian evaluated at a critical point with p < 4.
class SingularPointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class SamplingExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace minsurf
