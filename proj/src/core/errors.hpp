// Exception hierarchy shared by all modules.  The C API and the CLI map
// these onto error codes; nothing else should throw across module borders.
#pragma once

#include <stdexcept>
#include <string>

namespace kacz {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad argument values: empty sets, exponent overflow, t outside (0,1), ...
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Malformed textual input (set specs, intervals).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Input is structurally valid but beyond the supported problem scale
// (exponent caps for exact isolation, Sturm degree cap, ...).
class UnsupportedScaleError : public Error {
public:
  explicit UnsupportedScaleError(const std::string& what) : Error(what) {}
};

// A numerical procedure failed to meet its tolerance.  Carries the best
// estimate reached and a bound on its error so callers can still inspect it.
class NumericalError : public Error {
public:
  NumericalError(const std::string& what, double best_estimate, double error_bound)
      : Error(what), best_estimate(best_estimate), error_bound(error_bound) {}
  double best_estimate = 0.0;
  double error_bound = 0.0;
};

}  // namespace kacz
