#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsip {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position outside the open domain of a profile or family.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Quadrature, bisection or inverse iteration failed to converge.
class NumericsError : public Error {
 public:
  explicit NumericsError(const std::string& what, std::ptrdiff_t level = -1)
      : Error(what), level_(level) {}
  /// Eigenvalue index the failure belongs to, or -1.
  std::ptrdiff_t level() const noexcept { return level_; }

 private:
  std::ptrdiff_t level_;
};

class GridError : public Error {
 public:
  using Error::Error;
};

/// Requested level is not part of the bound spectrum.
class UnboundLevelError : public Error {
 public:
  UnboundLevelError(const std::string& what, std::size_t level)
      : Error(what), level_(level) {}
  std::size_t level() const noexcept { return level_; }

 private:
  std::size_t level_;
};

/// Asymptotic sign of W/U could not be decided.
class IndeterminateError : public Error {
 public:
  IndeterminateError(const std::string& what, double lower, double upper)
      : Error(what), lower_(lower), upper_(upper) {}
  double lower_value() const noexcept { return lower_; }
  double upper_value() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// Evaluation too close to a pole of tan/sec or 1/Y.
class PoleError : public Error {
 public:
  using Error::Error;
};

class NormalizabilityError : public Error {
 public:
  using Error::Error;
};

class MassError : public Error {
 public:
  using Error::Error;
};

class PotentialError : public Error {
 public:
  using Error::Error;
};

/// Family parameters outside their admissible range (R0 <= 0, alpha == 0, ...).
class ParameterError : public Error {
 public:
  ParameterError(const std::string& what, std::string field)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed or invalid run configuration.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0, std::size_t column = 0,
              std::string field = {})
      : Error(what), line_(line), column_(column), field_(std::move(field)) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string field_;
};

}  // namespace gsip
