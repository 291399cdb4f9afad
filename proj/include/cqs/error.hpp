#pragma once

#include <stdexcept>
#include <string>

namespace cqs
{

/// Base class for all library errors.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (pole, degenerate momentum, ...).
class DomainError : public Error
{
public:
  using Error::Error;
};

/// Series, quadrature or iteration failed to reach its tolerance.
class ConvergenceError : public Error
{
public:
  using Error::Error;
};

/// Invalid user-supplied configuration.
class ConfigError : public Error
{
public:
  using Error::Error;
};

}  // namespace cqs
