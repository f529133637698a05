#pragma once

#include <stdexcept>
#include <string>

namespace dbvp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Out-of-range index, mismatched grids, or otherwise ill-formed arguments.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// The shifted operator is singular: lambda coincides with an eigenvalue.
class SingularOperatorError : public Error {
public:
    SingularOperatorError(const std::string& what, int index, double eigenvalue)
        : Error(what), eigenvalue_index(index), eigenvalue(eigenvalue) {}
    int eigenvalue_index;   // 1-based n of the offending lambda_n
    double eigenvalue;
};

/// lambda is not below the first eigenvalue, so the sign-definite kernel
/// and the maximum principle are unavailable.
class OutOfRegimeError : public Error {
public:
    explicit OutOfRegimeError(const std::string& what) : Error(what) {}
};

/// Expression source text could not be parsed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what), position(position) {}
    std::size_t position;   // 0-based offset into the source text
};

/// Expression evaluation hit a domain fault (log of a nonpositive value,
/// division by zero, non-finite result).
class EvalError : public Error {
public:
    EvalError(const std::string& what, std::string subexpression)
        : Error(what), subexpression(std::move(subexpression)) {}
    std::string subexpression;
};

/// Malformed problem documents, bad flags, unreadable files.
class BadInputError : public Error {
public:
    explicit BadInputError(const std::string& what) : Error(what) {}
};

/// A candidate bracket violates its invariants (ordering, boundary values).
class BracketError : public Error {
public:
    explicit BracketError(const std::string& what) : Error(what) {}
};

/// The direct linear solve broke down (non-finite elimination).
class SolveError : public Error {
public:
    explicit SolveError(const std::string& what) : Error(what) {}
};

} // namespace dbvp
