#pragma once

#include <stdexcept>
#include <string>

namespace folap {

// bad argument values (wrong range, wrong dimension, malformed input)
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& m) : std::invalid_argument(m) {}
};

// the growth indices of the Young function rule out the requested exponent s
struct AdmissibilityError : std::invalid_argument {
  explicit AdmissibilityError(const std::string& m) : std::invalid_argument(m) {}
};

// a numeric procedure failed to converge / bracket / stay monotone
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& m) : std::runtime_error(m) {}
};

// the Luxemburg bisection escaped every bracket: the norm is infinite (or the
// modular never drops below one)
struct NormInfiniteError : NumericError {
  explicit NormInfiniteError(const std::string& m) : NumericError(m) {}
};

// user-facing configuration problems; the CLI maps these to exit code 2
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace folap
