#pragma once

#include <stdexcept>
#include <string>

namespace trigspline {

// Parameter combination leaves a transform's domain (e.g. log of a
// nonpositive argument for a strongly negative base value).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A denominator factor of a closed-form Fourier coefficient vanishes;
// the caller must perturb alpha.
class SingularDenominator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested order outside the printed closed forms.
class UnsupportedOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidGrid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An aliased channel denominator cancels to numerical zero.
class DenominatorDegenerate : public std::runtime_error {
 public:
  DenominatorDegenerate(const std::string& what, int channel)
      : std::runtime_error(what), channel_index(channel) {}
  int channel_index;
};

class OrderTooHigh : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IllConditioned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureNoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace trigspline
