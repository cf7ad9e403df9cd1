#ifndef SPDC_ERRORS_HPP
#define SPDC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spdc {

// Base class for all library errors so callers can catch spdc::Error.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive quadrature exhausted its refinement budget before tolerance.
class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

// A sampling grid violates a validity condition (size, span, aliasing).
class BadGrid : public Error {
 public:
  explicit BadGrid(const std::string& msg) : Error(msg) {}
};

// A width search never found the requested level crossing in its bracket.
class NoCrossing : public Error {
 public:
  explicit NoCrossing(const std::string& msg) : Error(msg) {}
};

// An optional configuration field required by the operation is absent.
class MissingField : public Error {
 public:
  explicit MissingField(const std::string& msg) : Error(msg) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// N = 1 states have no defined coherence widths.
class DegenerateState : public Error {
 public:
  explicit DegenerateState(const std::string& msg) : Error(msg) {}
};

// A rejection-sampling proposal exceeded its envelope; abort, never clip.
class EnvelopeViolation : public Error {
 public:
  explicit EnvelopeViolation(const std::string& msg) : Error(msg) {}
};

class InsufficientData : public Error {
 public:
  explicit InsufficientData(const std::string& msg) : Error(msg) {}
};

// Deconvolution subtracted more variance than the histogram carries.
class NegativeVariance : public Error {
 public:
  explicit NegativeVariance(const std::string& msg) : Error(msg) {}
};

// CLI / config-file validation failure.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace spdc

#endif  // SPDC_ERRORS_HPP
