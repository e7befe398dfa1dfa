#pragma once

#include <stdexcept>
#include <string>

namespace abdirac
{
/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
  public:
    explicit DomainError(std::string const& what) : std::domain_error(what) {}
};

/// Caller violated a usage contract (mismatched geometries, unnormalized input, ...).
class UsageError : public std::invalid_argument
{
  public:
    explicit UsageError(std::string const& what) : std::invalid_argument(what) {}
};

/// A quadrature rule cannot resolve the requested evaluation.
class AccuracyError : public std::runtime_error
{
  public:
    explicit AccuracyError(std::string const& what) : std::runtime_error(what) {}
};

} // namespace abdirac
