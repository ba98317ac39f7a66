#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ppb2d/errors.hpp"
#include "ppb2d/hermite_pm.hpp"
#include "ppb2d/poly2d.hpp"
#include "ppb2d/types.hpp"

namespace ppb {

/// Physical constants of the barrier V(x,y) = v0 - m gamma^2 (x^2+y^2)/2,
/// plus the derived inverse-length scale beta = sqrt(m gamma / hbar).
/// Defaults are natural units.
struct PhysParams {
  double hbar = 1.0;
  double mass = 1.0;
  double gamma = 1.0;
  double v0 = 0.0;

  PhysParams() = default;
  PhysParams(double hbar_, double mass_, double gamma_, double v0_);

  double beta() const { return beta_; }

 private:
  double beta_ = 1.0;
};

/// Branch pair plus quantum numbers; identifies one of the four
/// eigenfunction types: (+,+) -> 1, (+,-) -> 2, (-,+) -> 3, (-,-) -> 4.
struct StateLabel {
  Branch bx = Branch::Plus;
  Branch by = Branch::Plus;
  int nx = 0;
  int ny = 0;

  int type() const;
  static StateLabel from_type(int type, int nx, int ny);
};

enum class FlowClass { Diverging, Converging, CornerYtoX, CornerXtoY, Stationary };

const char* to_string(FlowClass c);

/// Degeneracy count of an energy level; types 2 and 3 are infinitely
/// degenerate.
struct Degeneracy {
  bool infinite = false;
  long count = 0;  // valid when !infinite

  static Degeneracy finite(long n) { return {false, n}; }
  static Degeneracy inf() { return {true, 0}; }
};

/// A complex polynomial in (x, y) times the quadratic phase
/// e^{i (sx beta^2 x^2 + sy beta^2 y^2) / 2}. The family is closed under
/// addition (equal phase signs), d/dx, d/dy, multiplication by x and y,
/// and complex conjugation, so every operator needed here acts in closed
/// form with no numerical differentiation.
struct Wavefunction {
  Poly2D poly;
  int sx = +1;  // sign of the x^2 phase
  int sy = +1;  // sign of the y^2 phase
  double beta = 1.0;

  cplx operator()(double x, double y) const {
    const double b2 = beta * beta;
    const double phase = 0.5 * b2 * (sx * x * x + sy * y * y);
    return poly.eval(x, y) * std::polar(1.0, phase);
  }
  cplx operator()(Vec2 p) const { return (*this)(p.x, p.y); }

  /// |psi|^2; the phase has unit modulus, so only the polynomial enters.
  double density(double x, double y) const { return std::norm(poly.eval(x, y)); }
  double density(Vec2 p) const { return density(p.x, p.y); }

  Wavefunction dx() const;
  Wavefunction dy() const;
  Wavefunction conjugated() const;
};

/// Energy eigenvalue of a labelled state. Real part is always v0; the
/// imaginary part is -(nx+ny+1) hbar gamma, -(nx-ny) hbar gamma,
/// +(nx-ny) hbar gamma, +(nx+ny+1) hbar gamma for types 1..4.
cplx energy(const StateLabel& label, const PhysParams& p);

/// H^{bx}_{nx}(beta x) H^{by}_{ny}(beta y) times the quadratic phase with
/// signs (sx, sy) taken from the branches.
Wavefunction build_state(const StateLabel& label, const PhysParams& p);

/// Flips both branches; build_state of the result is the pointwise complex
/// conjugate of build_state of the input.
StateLabel conjugate_state(const StateLabel& label);

/// e^{-i E t / hbar}; modulus e^{Im(E) t / hbar}.
cplx time_factor(const StateLabel& label, const PhysParams& p, double t);

/// Diverging (type 1), Converging (type 4), corner flows (types 2/3), with
/// nx == ny corner states classified Stationary (real energy).
FlowClass classify_flow(const StateLabel& label);

/// Degeneracy of the level: types 1/4 have level+1 states with
/// nx+ny = level; types 2/3 are infinitely degenerate.
Degeneracy degeneracy(int type, long level);

struct Superposition {
  Wavefunction w;
  /// True iff every term carries the same energy eigenvalue.
  bool is_energy_eigenstate = true;
};

/// Coefficient-weighted sum of basis states. All labels must share the same
/// branch pair (phase signs); otherwise the sum leaves the representable
/// family and RepresentationMismatch is thrown. Differing energies are
/// allowed but flagged.
Superposition superpose(const std::vector<std::pair<cplx, StateLabel>>& terms,
                        const PhysParams& p);

/// Value of the orbital angular momentum operator
/// -i hbar (x d/dy - y d/dx) applied to w, evaluated analytically.
cplx apply_lz(const Wavefunction& w, const PhysParams& p, Vec2 point);

struct LzEstimate {
  cplx estimate;
  double max_deviation;
};

/// Mean of apply_lz(w, pt) / w(pt) over the sample points and the maximum
/// deviation from that mean. An Lz eigenstate gives deviation ~ 0. Throws
/// NodalRegion if any sample sits below the node threshold
/// 1e-8 * max |w|^2 over the samples.
LzEstimate lz_eigencheck(const Wavefunction& w, const PhysParams& p,
                         const std::vector<Vec2>& points);

/// (H w)(point) computed in closed form on the representation.
Wavefunction hamiltonian_apply(const Wavefunction& w, const PhysParams& p);

/// (H w - E w)(point); zero for exact eigenpairs.
cplx schrodinger_residual(const Wavefunction& w, cplx energy_value,
                          const PhysParams& p, Vec2 point);

struct Polar {
  double r;
  double phi;  // in (-pi, pi]; 0 at the origin by convention
};

struct HyperbolicPoint {
  double u;  // x^2 - y^2
  double v;  // 2 x y
};

Polar to_polar(double x, double y);
HyperbolicPoint to_hyperbolic(double x, double y);

struct ScaleFactors {
  double hu;
  double hv;
};

/// h_u = h_v = 2 (u^2 + v^2)^{1/4} = 2 r. Throws OriginSingular at (0,0).
ScaleFactors scale_factors(double u, double v);

}  // namespace ppb
