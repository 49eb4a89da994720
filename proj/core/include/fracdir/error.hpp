#pragma once

#include <stdexcept>
#include <string>

namespace fracdir {

// Error taxonomy used across the toolkit. Everything derives from Error so
// callers can catch one base; the subclasses distinguish what went wrong:
//
//   InputError          malformed arguments (dimension mismatch, p <= 1, ...)
//   DomainError         point on the wrong side of the boundary for the op
//   DivergenceError     a quadrature / shell sum detected a divergent integral
//   ToleranceError      requested accuracy could not be certified
//   StatisticalError    Monte Carlo sample too small to answer the question
//   ResolutionError     grid too coarse (aliasing, field not resolved)
//   ConfigError         scenario configuration violates a hypothesis guard

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class DivergenceError : public Error {
public:
  using Error::Error;
};

class ToleranceError : public Error {
public:
  using Error::Error;
};

class StatisticalError : public Error {
public:
  using Error::Error;
};

class ResolutionError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace fracdir
