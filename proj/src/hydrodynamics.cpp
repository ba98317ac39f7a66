#include "ppb2d/hydrodynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>

namespace ppb {

namespace {

// 12-point Gauss-Legendre rule on [-1, 1]; exact through degree 23.
constexpr std::array<double, 6> kGlNodes = {
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr std::array<double, 6> kGlWeights = {
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

// Integrates f over [a, b] with `panels` Gauss-Legendre panels.
template <typename F>
double integrate_1d(const F& f, double a, double b, int panels) {
  const double dx = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * dx;
    const double half = 0.5 * dx;
    double acc = 0.0;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
      acc += kGlWeights[k] * (f(mid + half * kGlNodes[k]) + f(mid - half * kGlNodes[k]));
    }
    total += acc * half;
  }
  return total;
}

}  // namespace

FlowField::FlowField(Wavefunction w, const PhysParams& p)
    : w_(std::move(w)),
      wx_(w_.dx()),
      wy_(w_.dy()),
      wxx_(wx_.dx()),
      wyy_(wy_.dy()),
      hbar_over_m_(p.hbar / p.mass) {}

Vec2 FlowField::current(Vec2 pt) const {
  const cplx psi = w_(pt);
  const cplx px = wx_(pt);
  const cplx py = wy_(pt);
  return {hbar_over_m_ * std::imag(std::conj(psi) * px),
          hbar_over_m_ * std::imag(std::conj(psi) * py)};
}

Vec2 FlowField::velocity(Vec2 pt, double eps_node) const {
  const double rho = w_.density(pt);
  if (rho <= eps_node) throw NodalRegion("velocity: point in nodal region");
  const Vec2 j = current(pt);
  return {j.x / rho, j.y / rho};
}

double FlowField::divergence(Vec2 pt, double eps_node) const {
  const double rho = w_.density(pt);
  if (rho <= eps_node) throw NodalRegion("divergence: point in nodal region");
  const cplx psi = w_(pt);
  const cplx px = wx_(pt);
  const cplx py = wy_(pt);
  // div j = (hbar/m) Im[psi* (psi_xx + psi_yy)]; the |grad psi|^2 terms are real.
  const double div_j = hbar_over_m_ * std::imag(std::conj(psi) * (wxx_(pt) + wyy_(pt)));
  const double jx = hbar_over_m_ * std::imag(std::conj(psi) * px);
  const double jy = hbar_over_m_ * std::imag(std::conj(psi) * py);
  const double rho_x = 2.0 * std::real(std::conj(psi) * px);
  const double rho_y = 2.0 * std::real(std::conj(psi) * py);
  return div_j / rho - (jx * rho_x + jy * rho_y) / (rho * rho);
}

double FlowField::vorticity(Vec2 pt, double eps_node) const {
  const double rho = w_.density(pt);
  if (rho <= eps_node) throw NodalRegion("vorticity: point in nodal region");
  const cplx psi = w_(pt);
  const cplx px = wx_(pt);
  const cplx py = wy_(pt);
  // curl j = (hbar/m) Im[psi_x* psi_y - psi_y* psi_x] = 2 (hbar/m) Im[psi_x* psi_y]
  const double curl_j = 2.0 * hbar_over_m_ * std::imag(std::conj(px) * py);
  const double jx = hbar_over_m_ * std::imag(std::conj(psi) * px);
  const double jy = hbar_over_m_ * std::imag(std::conj(psi) * py);
  const double rho_x = 2.0 * std::real(std::conj(psi) * px);
  const double rho_y = 2.0 * std::real(std::conj(psi) * py);
  return curl_j / rho - (jy * rho_x - jx * rho_y) / (rho * rho);
}

std::pair<double, double> FlowField::current_hyperbolic(Vec2 pt) const {
  const double r = std::hypot(pt.x, pt.y);
  if (r == 0.0) {
    throw OriginSingular("current_hyperbolic: hyperbolic frame singular at origin");
  }
  const Vec2 j = current(pt);
  // e_u = (x, -y)/r, e_v = (y, x)/r
  return {(j.x * pt.x - j.y * pt.y) / r, (j.x * pt.y + j.y * pt.x) / r};
}

FlowSample FlowField::sample(Vec2 pt, double eps_node) const {
  FlowSample s;
  s.point = pt;
  s.j = current(pt);
  const double rho = w_.density(pt);
  if (rho <= eps_node) {
    s.nodal = true;
  } else {
    s.vel = velocity(pt, eps_node);
    s.div = divergence(pt, eps_node);
    s.vort = vorticity(pt, eps_node);
  }
  if (pt.x != 0.0 || pt.y != 0.0) {
    auto [ju, jv] = current_hyperbolic(pt);
    s.has_hyperbolic = true;
    s.ju = ju;
    s.jv = jv;
  }
  return s;
}

Vec2 current(const Wavefunction& w, const PhysParams& p, Vec2 pt) {
  return FlowField(w, p).current(pt);
}
Vec2 velocity(const Wavefunction& w, const PhysParams& p, Vec2 pt, double eps_node) {
  return FlowField(w, p).velocity(pt, eps_node);
}
double divergence(const Wavefunction& w, const PhysParams& p, Vec2 pt, double eps_node) {
  return FlowField(w, p).divergence(pt, eps_node);
}
double vorticity(const Wavefunction& w, const PhysParams& p, Vec2 pt, double eps_node) {
  return FlowField(w, p).vorticity(pt, eps_node);
}
std::pair<double, double> current_hyperbolic(const Wavefunction& w, const PhysParams& p, Vec2 pt) {
  return FlowField(w, p).current_hyperbolic(pt);
}

double node_threshold(const Wavefunction& w, const std::vector<Vec2>& points) {
  double max_rho = 0.0;
  for (const Vec2& pt : points) max_rho = std::max(max_rho, w.density(pt));
  return 1e-8 * max_rho;
}

std::pair<double, double> stationary_current_closed_form(int n, Branch b,
                                                         const PhysParams& p,
                                                         double u, double v) {
  if (u == 0.0 && v == 0.0) {
    throw OriginSingular("stationary_current_closed_form: singular at origin");
  }
  const double s = branch_sign(b);
  const double h = 2.0 * std::pow(u * u + v * v, 0.25);
  const double b4 = std::pow(p.beta(), 4);
  switch (n) {
    case 0:
      return {s * 0.5 * p.gamma * h, 0.0};
    case 1:
      return {s * 2.0 * p.gamma * b4 * v * v * h, 0.0};
    case 2:
      return {s * 8.0 * p.gamma * ((b4 * v * v + 5.0) * (b4 * v * v + 1.0) + 4.0 * b4 * u * u) * h,
              -s * 64.0 * p.gamma * b4 * u * v * h};
    default:
      throw std::invalid_argument("stationary_current_closed_form: printed forms cover n = 0, 1, 2");
  }
}

namespace {

// Shared implementation: velocity field + scales in, verified PotentialPair out.
PotentialPair extract_impl(std::function<Vec2(Vec2)> vel,
                           std::function<double(Vec2)> vort_of,
                           std::function<double(Vec2)> div_of,
                           double gamma_scale, const GridSpec& region,
                           const ExtractOptions& opts) {
  const auto pts = region.points();

  double max_vort = 0.0, max_div = 0.0;
  for (const Vec2& pt : pts) {
    max_vort = std::max(max_vort, std::abs(vort_of(pt)));
    max_div = std::max(max_div, std::abs(div_of(pt)));
  }
  if (max_vort > opts.premise_tol * gamma_scale) {
    throw NotIrrotational("extract_potentials: velocity is not irrotational on the region",
                          max_vort);
  }
  if (max_div > opts.premise_tol * gamma_scale) {
    throw NotSolenoidal("extract_potentials: velocity is not solenoidal on the region",
                        max_div);
  }

  const Vec2 anchor{region.x_min, region.y_min};
  const int panels = opts.quad_panels;

  // Phi by integrating v . dl, Psi by integrating the flux -vy dx + vx dy.
  auto phi_along = [vel, panels](Vec2 from, Vec2 to, bool horizontal_first) {
    const Vec2 corner = horizontal_first ? Vec2{to.x, from.y} : Vec2{from.x, to.y};
    auto vx_on = [&](double y) {
      return [&vel, y](double x) { return vel({x, y}).x; };
    };
    auto vy_on = [&](double x) {
      return [&vel, x](double y) { return vel({x, y}).y; };
    };
    if (horizontal_first) {
      return integrate_1d(vx_on(from.y), from.x, to.x, panels) +
             integrate_1d(vy_on(corner.x), from.y, to.y, panels);
    }
    return integrate_1d(vy_on(from.x), from.y, to.y, panels) +
           integrate_1d(vx_on(corner.y), from.x, to.x, panels);
  };
  auto psi_along = [vel, panels](Vec2 from, Vec2 to, bool horizontal_first) {
    auto mvy_on = [&](double y) {
      return [&vel, y](double x) { return -vel({x, y}).y; };
    };
    auto vx_on = [&](double x) {
      return [&vel, x](double y) { return vel({x, y}).x; };
    };
    if (horizontal_first) {
      return integrate_1d(mvy_on(from.y), from.x, to.x, panels) +
             integrate_1d(vx_on(to.x), from.y, to.y, panels);
    }
    return integrate_1d(vx_on(from.x), from.y, to.y, panels) +
           integrate_1d(mvy_on(to.y), from.x, to.x, panels);
  };

  const double dx = region.x_max - region.x_min;
  const double dy = region.y_max - region.y_min;
  const double diam2 = dx * dx + dy * dy;
  const double path_tol = opts.path_tol * gamma_scale * diam2;

  // Two independent axis-parallel paths must agree at every grid point.
  for (const Vec2& pt : pts) {
    const double phi_a = phi_along(anchor, pt, true);
    const double phi_b = phi_along(anchor, pt, false);
    if (std::abs(phi_a - phi_b) > path_tol) {
      throw NotIrrotational("extract_potentials: path-dependent circulation integral",
                            std::abs(phi_a - phi_b));
    }
    const double psi_a = psi_along(anchor, pt, true);
    const double psi_b = psi_along(anchor, pt, false);
    if (std::abs(psi_a - psi_b) > path_tol) {
      throw NotSolenoidal("extract_potentials: path-dependent flux integral",
                          std::abs(psi_a - psi_b));
    }
  }

  PotentialPair pair;
  pair.anchor = anchor;
  pair.phi = [phi_along, anchor](Vec2 pt) { return phi_along(anchor, pt, true); };
  pair.psi = [psi_along, anchor](Vec2 pt) { return psi_along(anchor, pt, true); };
  return pair;
}

}  // namespace

PotentialPair extract_potentials(const Wavefunction& w, const PhysParams& p,
                                 const GridSpec& region, const ExtractOptions& opts) {
  auto field = std::make_shared<FlowField>(w, p);
  const auto pts = region.points();
  const double eps = node_threshold(w, pts);
  for (const Vec2& pt : pts) {
    if (w.density(pt) <= eps) {
      throw NodalRegion("extract_potentials: region touches the nodal set");
    }
  }
  auto vel = [field, eps](Vec2 pt) { return field->velocity(pt, eps); };
  auto vort = [field, eps](Vec2 pt) { return field->vorticity(pt, eps); };
  auto dive = [field, eps](Vec2 pt) { return field->divergence(pt, eps); };
  return extract_impl(vel, vort, dive, p.gamma, region, opts);
}

PotentialPair extract_potentials(const std::function<Vec2(Vec2)>& vel,
                                 double gamma_scale, const GridSpec& region,
                                 const ExtractOptions& opts) {
  auto fd_vort = [vel](Vec2 pt) {
    const double hx = 1e-5 * std::max(1.0, std::abs(pt.x));
    const double hy = 1e-5 * std::max(1.0, std::abs(pt.y));
    return (vel({pt.x + hx, pt.y}).y - vel({pt.x - hx, pt.y}).y) / (2.0 * hx) -
           (vel({pt.x, pt.y + hy}).x - vel({pt.x, pt.y - hy}).x) / (2.0 * hy);
  };
  auto fd_div = [vel](Vec2 pt) {
    const double hx = 1e-5 * std::max(1.0, std::abs(pt.x));
    const double hy = 1e-5 * std::max(1.0, std::abs(pt.y));
    return (vel({pt.x + hx, pt.y}).x - vel({pt.x - hx, pt.y}).x) / (2.0 * hx) +
           (vel({pt.x, pt.y + hy}).y - vel({pt.x, pt.y - hy}).y) / (2.0 * hy);
  };
  return extract_impl(vel, fd_vort, fd_div, gamma_scale, region, opts);
}

CornerPotential fit_corner_potential(const PotentialPair& pair, const GridSpec& region,
                                     int a_max, double fit_tol) {
  if (a_max < 1) throw std::invalid_argument("fit_corner_potential: a_max must be >= 1");
  const auto pts = region.points();
  const auto n = static_cast<double>(pts.size());

  std::vector<cplx> wvals;
  wvals.reserve(pts.size());
  cplx wsum{0.0};
  for (const Vec2& pt : pts) {
    const cplx val{pair.phi(pt), pair.psi(pt)};
    wvals.push_back(val);
    wsum += val;
  }
  const cplx wmean = wsum / n;
  double scale2 = 0.0;
  for (const cplx& v : wvals) scale2 += std::norm(v - wmean);
  const double scale = std::max(std::sqrt(scale2 / n), 1e-300);

  CornerPotential best{cplx{0.0}, 0, std::numeric_limits<double>::infinity()};
  for (int a = 1; a <= a_max; ++a) {
    // Least squares for W ~ A z^a + c (the constant absorbs the anchor).
    cplx sbb{0.0}, sb{0.0}, sbw{0.0};
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const cplx z{pts[k].x, pts[k].y};
      const cplx b = std::pow(z, a);
      sbb += std::norm(b);
      sb += b;
      sbw += std::conj(b) * wvals[k];
    }
    const cplx det = sbb * n - std::conj(sb) * sb;
    if (std::abs(det) == 0.0) continue;
    const cplx amp = (sbw * n - std::conj(sb) * wsum) / det;
    const cplx offs = (wsum - amp * sb) / n;
    double res2 = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const cplx z{pts[k].x, pts[k].y};
      res2 += std::norm(wvals[k] - amp * std::pow(z, a) - offs);
    }
    const double residual = std::sqrt(res2 / n) / scale;
    if (residual < best.residual) best = {amp, a, residual};
  }
  if (!(best.residual <= fit_tol)) {
    throw NoMonomialFit("fit_corner_potential: no monomial exponent fits the sampled potential",
                        best.residual);
  }
  return best;
}

cplx complex_velocity(const CornerPotential& cp, cplx z) {
  return cp.amplitude * static_cast<double>(cp.exponent) *
         std::pow(z, cp.exponent - 1);
}

}  // namespace ppb
