#include "ppb2d/numgrid.hpp"

#include <cmath>
#include <stdexcept>

namespace ppb {

Vec2 default_fd_step(Vec2 pt) {
  return {1e-5 * std::max(1.0, std::abs(pt.x)), 1e-5 * std::max(1.0, std::abs(pt.y))};
}

namespace {

Vec2 steps_for(Vec2 pt, double h) {
  if (h > 0.0) return {h, h};
  return default_fd_step(pt);
}

template <typename Eval>
auto richardson_combine(const Eval& eval, double hx, double hy, bool richardson)
    -> decltype(eval(hx, hy)) {
  const auto coarse = eval(hx, hy);
  if (!richardson) return coarse;
  const auto fine = eval(0.5 * hx, 0.5 * hy);
  return (1.0 / 3.0) * (4.0 * fine - coarse);
}

}  // namespace

Vec2 fd_gradient(const ScalarField& f, Vec2 pt, double h, bool richardson) {
  const Vec2 hs = steps_for(pt, h);
  auto eval = [&](double hx, double hy) -> Vec2 {
    return {(f({pt.x + hx, pt.y}) - f({pt.x - hx, pt.y})) / (2.0 * hx),
            (f({pt.x, pt.y + hy}) - f({pt.x, pt.y - hy})) / (2.0 * hy)};
  };
  if (!richardson) return eval(hs.x, hs.y);
  const Vec2 coarse = eval(hs.x, hs.y);
  const Vec2 fine = eval(0.5 * hs.x, 0.5 * hs.y);
  return (1.0 / 3.0) * (4.0 * fine - coarse);
}

double fd_divergence(const VectorField& f, Vec2 pt, double h, bool richardson) {
  const Vec2 hs = steps_for(pt, h);
  auto eval = [&](double hx, double hy) {
    return (f({pt.x + hx, pt.y}).x - f({pt.x - hx, pt.y}).x) / (2.0 * hx) +
           (f({pt.x, pt.y + hy}).y - f({pt.x, pt.y - hy}).y) / (2.0 * hy);
  };
  return richardson_combine(eval, hs.x, hs.y, richardson);
}

double fd_curl(const VectorField& f, Vec2 pt, double h, bool richardson) {
  const Vec2 hs = steps_for(pt, h);
  auto eval = [&](double hx, double hy) {
    return (f({pt.x + hx, pt.y}).y - f({pt.x - hx, pt.y}).y) / (2.0 * hx) -
           (f({pt.x, pt.y + hy}).x - f({pt.x, pt.y - hy}).x) / (2.0 * hy);
  };
  return richardson_combine(eval, hs.x, hs.y, richardson);
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::StepLimit: return "step_limit";
    case Termination::LeftBounds: return "left_bounds";
    case Termination::NodalRegion: return "nodal_region";
  }
  return "?";
}

Streamline integrate_streamline(const VectorField& vel, Vec2 seed, double step,
                                int max_steps, const GridSpec& bounds) {
  if (!(step > 0.0)) throw std::invalid_argument("integrate_streamline: step must be positive");
  if (max_steps < 1) throw std::invalid_argument("integrate_streamline: max_steps must be >= 1");
  if (!bounds.contains(seed)) {
    throw std::invalid_argument("integrate_streamline: seed outside bounds");
  }

  // Direction field; |v| below the floor counts as stagnation.
  const double v_seed = norm(vel(seed));  // nodal seed throws here
  const double v_floor = 1e-12 * std::max(v_seed, 1e-30);
  auto direction = [&](Vec2 pt) -> std::optional<Vec2> {
    const Vec2 v = vel(pt);
    const double speed = norm(v);
    if (speed <= v_floor) return std::nullopt;
    return Vec2{v.x / speed, v.y / speed};
  };

  Streamline line;
  line.points.push_back(seed);
  Vec2 p = seed;
  for (int k = 0; k < max_steps; ++k) {
    std::optional<Vec2> k1, k2, k3, k4;
    try {
      k1 = direction(p);
      if (k1) k2 = direction(p + (0.5 * step) * *k1);
      if (k2) k3 = direction(p + (0.5 * step) * *k2);
      if (k3) k4 = direction(p + step * *k3);
    } catch (const NodalRegion&) {
      line.terminated_by = Termination::NodalRegion;
      return line;
    }
    if (!k1 || !k2 || !k3 || !k4) {
      line.terminated_by = Termination::NodalRegion;
      return line;
    }
    const Vec2 delta = (step / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
    if (norm(delta) < 0.5 * step) {  // stage directions cancel: stagnation point
      line.terminated_by = Termination::NodalRegion;
      return line;
    }
    p = p + delta;
    line.points.push_back(p);
    if (!bounds.contains(p)) {
      line.terminated_by = Termination::LeftBounds;
      return line;
    }
  }
  line.terminated_by = Termination::StepLimit;
  return line;
}

}  // namespace ppb
