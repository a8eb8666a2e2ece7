#pragma once

#include <stdexcept>
#include <string>

namespace hypcap {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid or unsupported geometric configuration (degenerate arc, non-starlike polygon, ...).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent solver configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside the capacity solver.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void domain_fail(const char* fn, const std::string& what) {
  throw DomainError(std::string(fn) + ": " + what);
}

}  // namespace detail
}  // namespace hypcap
