#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meanlab {

/// Argument outside the domain of a mean or series (non-positive pair, |x| >= pi, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// a == b where a parametrization coordinate is requested.
class DegeneratePairError : public DomainError {
public:
    using DomainError::DomainError;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Richardson extrapolation whose successive estimates fail to settle.
class NumericalInstabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation of an expression hit log/pow/sqrt of a non-positive value or a zero division.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& message, std::string subtree)
        : std::runtime_error(message + " in '" + subtree + "'"), subtree_(std::move(subtree)) {}

    const std::string& subtree() const noexcept { return subtree_; }

private:
    std::string subtree_;
};

/// The bisection predicate of an exponent search did not switch exactly once.
class NonMonotonePredicateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownChainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace meanlab
