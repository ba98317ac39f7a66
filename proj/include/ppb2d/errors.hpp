#pragma once

#include <stdexcept>
#include <string>

namespace ppb {

/// Base class for every domain error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested quantity is undefined on (or too close to) the nodal set of
/// the wavefunction, |psi|^2 <= node threshold.
struct NodalRegion : Error {
  using Error::Error;
};

/// Hyperbolic-frame quantities are singular at the coordinate origin.
struct OriginSingular : Error {
  using Error::Error;
};

/// A superposition would leave the polynomial-times-quadratic-phase family
/// (its terms carry different phase signs).
struct RepresentationMismatch : Error {
  using Error::Error;
};

/// The velocity field has nonzero vorticity on the region, so no velocity
/// potential exists there.
struct NotIrrotational : Error {
  NotIrrotational(const std::string& msg, double violation_)
      : Error(msg), violation(violation_) {}
  double violation;  // max |vorticity| measured on the region
};

/// The velocity field has nonzero divergence on the region, so no stream
/// function (and hence no complex velocity potential) exists there.
struct NotSolenoidal : Error {
  NotSolenoidal(const std::string& msg, double violation_)
      : Error(msg), violation(violation_) {}
  double violation;  // max |divergence| measured on the region
};

/// No monomial A*z^a fits the sampled complex potential within tolerance.
struct NoMonomialFit : Error {
  NoMonomialFit(const std::string& msg, double best_residual_)
      : Error(msg), best_residual(best_residual_) {}
  double best_residual;
};

}  // namespace ppb
