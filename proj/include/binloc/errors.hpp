#pragma once

#include <stdexcept>

namespace binloc {

// Argument outside the open domain of an information-theoretic function.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tabulated detection model queried outside its table.
struct ModelDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bayes normaliser collapsed below the representable floor; indicates a
// pathological model rather than a user error.
struct NumericalUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every importance weight evaluated to zero.
struct DegenerateWeights : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Assumed detection function fails to dominate the true one.
struct EnvelopeViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario configuration inconsistent or malformed.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All SIR particle weights underflowed.
struct ParticleDegeneracy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No Monte Carlo trial met the entropy qualification threshold.
struct NoQualifyingTrials : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace binloc
