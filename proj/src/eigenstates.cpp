#include "ppb2d/eigenstates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppb {

PhysParams::PhysParams(double hbar_, double mass_, double gamma_, double v0_)
    : hbar(hbar_), mass(mass_), gamma(gamma_), v0(v0_) {
  if (!(hbar > 0.0) || !(mass > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("PhysParams: hbar, mass, gamma must be positive");
  }
  beta_ = std::sqrt(mass * gamma / hbar);
}

int StateLabel::type() const {
  if (bx == Branch::Plus) return by == Branch::Plus ? 1 : 2;
  return by == Branch::Plus ? 3 : 4;
}

StateLabel StateLabel::from_type(int type, int nx, int ny) {
  if (type < 1 || type > 4) throw std::invalid_argument("StateLabel: type must be 1..4");
  if (nx < 0 || ny < 0) throw std::invalid_argument("StateLabel: quantum numbers must be nonnegative");
  const Branch bx = (type == 1 || type == 2) ? Branch::Plus : Branch::Minus;
  const Branch by = (type == 1 || type == 3) ? Branch::Plus : Branch::Minus;
  return {bx, by, nx, ny};
}

const char* to_string(FlowClass c) {
  switch (c) {
    case FlowClass::Diverging: return "diverging";
    case FlowClass::Converging: return "converging";
    case FlowClass::CornerYtoX: return "corner_y_to_x";
    case FlowClass::CornerXtoY: return "corner_x_to_y";
    case FlowClass::Stationary: return "stationary";
  }
  return "?";
}

Wavefunction Wavefunction::dx() const {
  // d/dx (P e^{iS}) = (P_x + i sx beta^2 x P) e^{iS}
  const double b2 = beta * beta;
  Poly2D d = poly.dx();
  d.add_scaled(poly.shifted(1, 0), I * static_cast<double>(sx) * b2);
  return {std::move(d), sx, sy, beta};
}

Wavefunction Wavefunction::dy() const {
  const double b2 = beta * beta;
  Poly2D d = poly.dy();
  d.add_scaled(poly.shifted(0, 1), I * static_cast<double>(sy) * b2);
  return {std::move(d), sx, sy, beta};
}

Wavefunction Wavefunction::conjugated() const {
  return {poly.conjugated(), -sx, -sy, beta};
}

cplx energy(const StateLabel& label, const PhysParams& p) {
  const double sx = branch_sign(label.bx);
  const double sy = branch_sign(label.by);
  // E = v0 - i [sx (nx + 1/2) + sy (ny + 1/2)] hbar gamma
  const double imag = -(sx * (label.nx + 0.5) + sy * (label.ny + 0.5)) * p.hbar * p.gamma;
  return {p.v0, imag};
}

Wavefunction build_state(const StateLabel& label, const PhysParams& p) {
  const ComplexPoly1D hx = hermite_pm(label.nx, label.bx);
  const ComplexPoly1D hy = hermite_pm(label.ny, label.by);
  const double b = p.beta();
  Poly2D poly(static_cast<int>(hx.coeffs.size()), static_cast<int>(hy.coeffs.size()));
  double bi = 1.0;
  for (std::size_t i = 0; i < hx.coeffs.size(); ++i) {
    double bj = 1.0;
    for (std::size_t j = 0; j < hy.coeffs.size(); ++j) {
      poly.at(static_cast<int>(i), static_cast<int>(j)) = hx.coeffs[i] * bi * hy.coeffs[j] * bj;
      bj *= b;
    }
    bi *= b;
  }
  return {std::move(poly), branch_sign(label.bx), branch_sign(label.by), b};
}

StateLabel conjugate_state(const StateLabel& label) {
  return {conjugate(label.bx), conjugate(label.by), label.nx, label.ny};
}

cplx time_factor(const StateLabel& label, const PhysParams& p, double t) {
  return std::exp(-I * energy(label, p) * t / p.hbar);
}

FlowClass classify_flow(const StateLabel& label) {
  switch (label.type()) {
    case 1: return FlowClass::Diverging;
    case 4: return FlowClass::Converging;
    case 2: return label.nx == label.ny ? FlowClass::Stationary : FlowClass::CornerYtoX;
    default: return label.nx == label.ny ? FlowClass::Stationary : FlowClass::CornerXtoY;
  }
}

Degeneracy degeneracy(int type, long level) {
  if (type < 1 || type > 4) throw std::invalid_argument("degeneracy: type must be 1..4");
  if (type == 2 || type == 3) return Degeneracy::inf();
  if (level < 0) throw std::invalid_argument("degeneracy: level must be nonnegative for types 1/4");
  return Degeneracy::finite(level + 1);
}

Superposition superpose(const std::vector<std::pair<cplx, StateLabel>>& terms,
                        const PhysParams& p) {
  if (terms.empty()) throw std::invalid_argument("superpose: no terms");
  const Branch bx = terms.front().second.bx;
  const Branch by = terms.front().second.by;
  for (const auto& [c, label] : terms) {
    if (label.bx != bx || label.by != by) {
      throw RepresentationMismatch(
          "superpose: terms carry different phase signs; the sum leaves the "
          "polynomial-times-phase family");
    }
  }
  Superposition result;
  result.w = build_state(terms.front().second, p);
  result.w.poly = result.w.poly.scaled(terms.front().first);
  const cplx e0 = energy(terms.front().second, p);
  for (std::size_t k = 1; k < terms.size(); ++k) {
    result.w.poly.add_scaled(build_state(terms[k].second, p).poly, terms[k].first);
    if (energy(terms[k].second, p) != e0) result.is_energy_eigenstate = false;
  }
  return result;
}

cplx apply_lz(const Wavefunction& w, const PhysParams& p, Vec2 point) {
  const cplx wx = w.dx()(point);
  const cplx wy = w.dy()(point);
  return -I * p.hbar * (point.x * wy - point.y * wx);
}

LzEstimate lz_eigencheck(const Wavefunction& w, const PhysParams& p,
                         const std::vector<Vec2>& points) {
  if (points.empty()) throw std::invalid_argument("lz_eigencheck: no sample points");
  double max_density = 0.0;
  for (const Vec2& pt : points) max_density = std::max(max_density, w.density(pt));
  const double eps = 1e-8 * max_density;

  const Wavefunction wx = w.dx();
  const Wavefunction wy = w.dy();
  std::vector<cplx> ratios;
  ratios.reserve(points.size());
  cplx sum{0.0};
  for (const Vec2& pt : points) {
    if (w.density(pt) <= eps) {
      throw NodalRegion("lz_eigencheck: sample point below node threshold");
    }
    const cplx lz = -I * p.hbar * (pt.x * wy(pt) - pt.y * wx(pt));
    const cplx ratio = lz / w(pt);
    ratios.push_back(ratio);
    sum += ratio;
  }
  const cplx mean = sum / static_cast<double>(ratios.size());
  double dev = 0.0;
  for (const cplx& r : ratios) dev = std::max(dev, std::abs(r - mean));
  return {mean, dev};
}

Wavefunction hamiltonian_apply(const Wavefunction& w, const PhysParams& p) {
  // The representation ties the phase to the barrier: beta^2 = m gamma/hbar.
  // Under that identity the quadratic pieces of the kinetic phase term and
  // of the potential cancel exactly, and hbar^2 beta^2 / m = hbar gamma;
  // applying H in this reduced form keeps the eigen-residual free of the
  // otherwise catastrophic x^2 |P| cancellation noise.
  const double b2 = w.beta * w.beta;
  if (std::abs(b2 * p.hbar - p.mass * p.gamma) > 1e-12 * p.mass * p.gamma) {
    throw std::invalid_argument(
        "hamiltonian_apply: wavefunction beta is inconsistent with the parameters");
  }
  const double hb2m = p.hbar * p.hbar / (2.0 * p.mass);
  const double hg = p.hbar * p.gamma;

  // H (P e^{iS}) = e^{iS} [ -hb2m (P_xx + P_yy)
  //                - i hbar gamma (sx x P_x + sy y P_y)
  //                - i hbar gamma (sx + sy)/2 P + v0 P ]
  const Poly2D px = w.poly.dx();
  const Poly2D py = w.poly.dy();
  Poly2D h = (px.dx() + py.dy()).scaled(-hb2m);
  h.add_scaled(px.shifted(1, 0), -I * hg * static_cast<double>(w.sx));
  h.add_scaled(py.shifted(0, 1), -I * hg * static_cast<double>(w.sy));
  h.add_scaled(w.poly, cplx{p.v0, -0.5 * hg * static_cast<double>(w.sx + w.sy)});
  return {std::move(h), w.sx, w.sy, w.beta};
}

cplx schrodinger_residual(const Wavefunction& w, cplx energy_value,
                          const PhysParams& p, Vec2 point) {
  return hamiltonian_apply(w, p)(point) - energy_value * w(point);
}

Polar to_polar(double x, double y) {
  if (x == 0.0 && y == 0.0) return {0.0, 0.0};
  if (y == 0.0) return {std::abs(x), x < 0.0 ? std::numbers::pi : 0.0};
  return {std::hypot(x, y), std::atan2(y, x)};
}

HyperbolicPoint to_hyperbolic(double x, double y) {
  return {x * x - y * y, 2.0 * x * y};
}

ScaleFactors scale_factors(double u, double v) {
  if (u == 0.0 && v == 0.0) {
    throw OriginSingular("scale_factors: singular at the coordinate origin");
  }
  const double h = 2.0 * std::pow(u * u + v * v, 0.25);
  return {h, h};
}

}  // namespace ppb
