#pragma once

#include <functional>
#include <vector>

#include "ppb2d/eigenstates.hpp"
#include "ppb2d/numgrid_spec.hpp"

namespace ppb {

/// Hydrodynamic quantities of one state at one point.
struct FlowSample {
  Vec2 point;
  Vec2 j;       // probability current
  Vec2 vel;     // Madelung velocity j / |psi|^2
  double div;   // divergence of the velocity
  double vort;  // vorticity of the velocity
  bool nodal = false;          // velocity-based entries invalid when set
  bool has_hyperbolic = false;
  double ju = 0.0, jv = 0.0;   // current projected on the hyperbolic frame
};

/// Precomputes the derivative wavefunctions of one state so that pointwise
/// hydrodynamics can be evaluated repeatedly without rebuilding polynomials.
/// All member functions are const and safe to call concurrently.
class FlowField {
 public:
  FlowField(Wavefunction w, const PhysParams& p);

  const Wavefunction& wavefunction() const { return w_; }

  double density(Vec2 pt) const { return w_.density(pt); }

  /// Probability current Re[psi* (-i hbar grad) psi] / m. Defined
  /// everywhere, including nodes.
  Vec2 current(Vec2 pt) const;

  /// current / |psi|^2. Throws NodalRegion when |psi|^2 <= eps_node.
  Vec2 velocity(Vec2 pt, double eps_node = 0.0) const;

  /// dvx/dx + dvy/dy from analytic derivatives of j and |psi|^2.
  double divergence(Vec2 pt, double eps_node = 0.0) const;

  /// dvy/dx - dvx/dy from analytic derivatives of j and |psi|^2.
  double vorticity(Vec2 pt, double eps_node = 0.0) const;

  /// Current components along the unit vectors of the rectangular
  /// hyperbolic frame, e_u = grad u / |grad u|, e_v = grad v / |grad v|.
  /// Throws OriginSingular at (0,0).
  std::pair<double, double> current_hyperbolic(Vec2 pt) const;

  FlowSample sample(Vec2 pt, double eps_node = 0.0) const;

 private:
  Wavefunction w_, wx_, wy_, wxx_, wyy_;
  double hbar_over_m_;
};

Vec2 current(const Wavefunction& w, const PhysParams& p, Vec2 pt);
Vec2 velocity(const Wavefunction& w, const PhysParams& p, Vec2 pt, double eps_node = 0.0);
double divergence(const Wavefunction& w, const PhysParams& p, Vec2 pt, double eps_node = 0.0);
double vorticity(const Wavefunction& w, const PhysParams& p, Vec2 pt, double eps_node = 0.0);
std::pair<double, double> current_hyperbolic(const Wavefunction& w, const PhysParams& p, Vec2 pt);

/// Node threshold for a sampled region: 1e-8 times the largest |psi|^2
/// among the samples.
double node_threshold(const Wavefunction& w, const std::vector<Vec2>& points);

/// The closed-form hyperbolic current components (j_u, j_v) of the
/// stationary states nx = ny = n for n = 0, 1, 2. Branch selects the
/// overall sign: Plus is the (+,-) state, Minus the (-,+) one. Serves as
/// the analytic side of the cross-check against current_hyperbolic.
std::pair<double, double> stationary_current_closed_form(int n, Branch b,
                                                         const PhysParams& p,
                                                         double u, double v);

/// Velocity potential and stream function reconstructed from a flow by
/// line integration; both vanish at the anchor point.
struct PotentialPair {
  std::function<double(Vec2)> phi;  // velocity potential, grad phi = v
  std::function<double(Vec2)> psi;  // stream function, (dpsi/dy, -dpsi/dx) = v
  Vec2 anchor;
};

struct ExtractOptions {
  double premise_tol = 1e-6;   // scaled by gamma: max allowed |vort|, |div|
  double path_tol = 1e-6;      // scaled by gamma * diam^2: two-path mismatch
  int quad_panels = 8;         // panels per integration segment
};

/// Reconstructs Phi and Psi for the state's velocity field on a rectangular
/// region. The region must avoid nodes; the premises (vorticity ~ 0 for
/// Phi, divergence ~ 0 for Psi) are verified on the sample grid first and
/// NotIrrotational / NotSolenoidal carry the measured violation. Values are
/// anchored to 0 at the region's lower-left corner and every returned value
/// is checked against a second, independent integration path.
PotentialPair extract_potentials(const Wavefunction& w, const PhysParams& p,
                                 const GridSpec& region,
                                 const ExtractOptions& opts = {});

/// Same reconstruction for an arbitrary velocity field (premises checked by
/// central differences). gamma_scale fixes the tolerance unit.
PotentialPair extract_potentials(const std::function<Vec2(Vec2)>& vel,
                                 double gamma_scale, const GridSpec& region,
                                 const ExtractOptions& opts = {});

/// W(z) = A z^a; a corner flow rounds the angle pi / a.
struct CornerPotential {
  cplx amplitude;   // A
  int exponent;     // a
  double residual;  // relative rms misfit on the region
};

/// Fits the complex field Phi + i Psi against monomials A z^a + c for
/// integer a in [1, a_max] and returns the best fit. Throws NoMonomialFit
/// when every candidate exponent misses by more than fit_tol.
CornerPotential fit_corner_potential(const PotentialPair& pair, const GridSpec& region,
                                     int a_max = 6, double fit_tol = 1e-6);

/// dW/dz = A a z^{a-1}; equals vx - i vy for the flow W describes.
cplx complex_velocity(const CornerPotential& cp, cplx z);

}  // namespace ppb
