#pragma once

#include <stdexcept>
#include <string>

namespace gp3 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A geometric quantity is undefined: orthogonal endpoints, vanishing overlap,
// degenerate polygon, orthogonal cycle closure, missing readout signal.
struct DegeneracyError : Error {
  using Error::Error;
};

// Amplitude escaped the three-level subspace (nonzero |01> component).
struct LeakageError : Error {
  using Error::Error;
};

// A fixed phase/sign convention failed to hold (cycle closure,
// reparametrization, pulse decomposition).
struct ConventionError : Error {
  using Error::Error;
};

// Quadrature failed to reach the requested tolerance; carries the achieved
// error estimate.
struct QuadratureError : Error {
  QuadratureError(const std::string& what, double achieved_estimate)
      : Error(what), achieved(achieved_estimate) {}
  double achieved;
};

// Malformed sweep configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace gp3
