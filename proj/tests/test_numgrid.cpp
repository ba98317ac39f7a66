#include <doctest.h>

#include <cmath>

#include "ppb2d/hydrodynamics.hpp"
#include "ppb2d/numgrid.hpp"

using namespace ppb;

namespace {
const PhysParams natural{};
}

TEST_CASE("grid spec validation and layout") {
  CHECK_THROWS_AS(GridSpec(1.0, 0.0, 0.0, 1.0, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(0.0, 1.0, 0.0, 1.0, 1, 5), std::invalid_argument);
  const GridSpec g(0.0, 1.0, 0.0, 2.0, 3, 5);
  CHECK(g.x(0) == 0.0);
  CHECK(g.x(2) == 1.0);
  CHECK(g.y(4) == 2.0);
  CHECK(g.points().size() == 15);
  CHECK(g.contains({0.5, 1.0}));
  CHECK_FALSE(g.contains({1.5, 1.0}));
}

TEST_CASE("finite-difference oracles") {
  // Phi = gamma u / 2 as a function of (x, y); grad = gamma (x, -y)
  ScalarField phi = [](Vec2 pt) { return 0.5 * (pt.x * pt.x - pt.y * pt.y); };
  const Vec2 g = fd_gradient(phi, {1.0, 1.0});
  CHECK(g.x == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g.y == doctest::Approx(-1.0).epsilon(1e-9));

  const FlowField f(build_state({Branch::Plus, Branch::Plus, 0, 0}, natural), natural);
  VectorField vel = [&f](Vec2 pt) { return f.velocity(pt, 0.0); };
  CHECK(std::abs(fd_divergence(vel, {0.7, -1.3}, 1e-4) - 2.0) < 1e-6);
  CHECK(std::abs(fd_curl(vel, {0.7, -1.3}, 1e-4)) < 1e-6);

  const FlowField f21(build_state({Branch::Plus, Branch::Plus, 2, 1}, natural), natural);
  VectorField vel21 = [&f21](Vec2 pt) { return f21.velocity(pt, 0.0); };
  for (const Vec2 pt : {Vec2{0.6, 0.9}, Vec2{-1.4, 1.2}}) {
    CHECK(std::abs(fd_curl(vel21, pt, 1e-4)) < 1e-6);
    // FD against the analytic divergence, plain and Richardson
    const double ref = f21.divergence(pt);
    CHECK(std::abs(fd_divergence(vel21, pt, 1e-3) - ref) < 1e-4);
    CHECK(std::abs(fd_divergence(vel21, pt, 1e-3, true) - ref) <
          std::abs(fd_divergence(vel21, pt, 1e-3) - ref) + 1e-12);
  }

  // NodalRegion propagates from the underlying field: stencil points at
  // x = +-1e-3 have |psi|^2 ~ 1.6e-5, below this node threshold
  const FlowField f11(build_state({Branch::Plus, Branch::Minus, 1, 1}, natural), natural);
  VectorField vel11 = [&f11](Vec2 pt) { return f11.velocity(pt, 1e-3); };
  CHECK_THROWS_AS(fd_divergence(vel11, {1e-5, 1.0}, 1e-3), NodalRegion);
}

TEST_CASE("grid sampling with nodal flags") {
  const GridSpec spec(-2.0, 2.0, -2.0, 2.0, 5, 5);

  const GridTable<double> ones =
      sample_grid<double>([](Vec2) { return 1.0; }, spec);
  for (const auto& cell : ones.cells) {
    REQUIRE(cell.has_value());
    CHECK(*cell == 1.0);
  }

  // unit-modulus phase state: density exactly 1 everywhere
  const Wavefunction w00 = build_state({Branch::Plus, Branch::Minus, 0, 0}, natural);
  const GridTable<double> dens =
      sample_grid<double>([&w00](Vec2 pt) { return w00.density(pt); }, spec);
  for (const auto& cell : dens.cells) CHECK(*cell == 1.0);

  // velocity of the (1,1) state: axis cells are nodal, others valid
  const FlowField f11(build_state({Branch::Plus, Branch::Minus, 1, 1}, natural), natural);
  const GridTable<Vec2> vel = sample_grid<Vec2>(
      [&f11](Vec2 pt) { return f11.velocity(pt, 1e-12); }, spec);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) {
      const bool on_axis = spec.x(i) == 0.0 || spec.y(j) == 0.0;
      CHECK(vel.at(i, j).has_value() == !on_axis);
    }
  }
}

TEST_CASE("streamlines follow the hyperbolas") {
  const FlowField f(build_state({Branch::Plus, Branch::Minus, 0, 0}, natural), natural);
  VectorField vel = [&f](Vec2 pt) { return f.velocity(pt, 0.0); };
  const GridSpec bounds(-12.0, 12.0, -12.0, 12.0, 2, 2);

  const Streamline line = integrate_streamline(vel, {2.0, 0.5}, 1e-3, 4000, bounds);
  CHECK(line.terminated_by == Termination::StepLimit);
  for (const Vec2& pt : line.points) CHECK(std::abs(pt.x * pt.y - 1.0) < 1e-6);

  // consecutive points are one arc-length step apart
  for (std::size_t k = 1; k < 50; ++k) {
    CHECK(norm(line.points[k] - line.points[k - 1]) <= 2e-3);
  }
}

TEST_CASE("radial ray of the diverging flow") {
  const FlowField f(build_state({Branch::Plus, Branch::Plus, 0, 0}, natural), natural);
  VectorField vel = [&f](Vec2 pt) { return f.velocity(pt, 0.0); };
  const GridSpec bounds(-4.0, 4.0, -4.0, 4.0, 2, 2);
  const Streamline ray = integrate_streamline(vel, {1.0, 0.0}, 1e-2, 10000, bounds);
  CHECK(ray.terminated_by == Termination::LeftBounds);
  for (const Vec2& pt : ray.points) {
    CHECK(std::abs(pt.y) < 1e-9);
    CHECK(pt.x >= 1.0 - 1e-12);
  }
  CHECK(ray.points.back().x > 4.0 - 1e-9);
}

TEST_CASE("converging flow stalls at the stagnation point") {
  const FlowField f(build_state({Branch::Minus, Branch::Minus, 0, 0}, natural), natural);
  VectorField vel = [&f](Vec2 pt) { return f.velocity(pt, 0.0); };
  const GridSpec bounds(-4.0, 4.0, -4.0, 4.0, 2, 2);
  const Streamline in = integrate_streamline(vel, {2.0, 2.0}, 1e-3, 10000, bounds);
  CHECK(in.terminated_by == Termination::NodalRegion);
  CHECK(norm(in.points.back()) < 0.01);
}

TEST_CASE("corner flow rounds the center") {
  const FlowField f(build_state({Branch::Plus, Branch::Minus, 0, 0}, natural), natural);
  VectorField vel = [&f](Vec2 pt) { return f.velocity(pt, 0.0); };
  const GridSpec bounds(0.0, 4.0, 0.0, 4.0, 2, 2);
  const Streamline line = integrate_streamline(vel, {0.01, 3.0}, 1e-3, 20000, bounds);
  CHECK(line.terminated_by == Termination::LeftBounds);
  double min_y = 1e9;
  for (const Vec2& pt : line.points) {
    min_y = std::min(min_y, pt.y);
    CHECK(std::abs(pt.x * pt.y - 0.03) < 1e-6);
  }
  CHECK(min_y < 0.02);                       // came down the y-axis side
  CHECK(line.points.back().x > 4.0 - 1e-9);  // left through the x side
}

TEST_CASE("streamline argument validation") {
  const FlowField f(build_state({Branch::Plus, Branch::Minus, 1, 1}, natural), natural);
  VectorField vel = [&f](Vec2 pt) { return f.velocity(pt, 1e-12); };
  const GridSpec bounds(-4.0, 4.0, -4.0, 4.0, 2, 2);
  CHECK_THROWS_AS(integrate_streamline(vel, {5.0, 0.5}, 1e-3, 100, bounds),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_streamline(vel, {1.0, 1.0}, -1.0, 100, bounds),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_streamline(vel, {0.0, 1.0}, 1e-3, 100, bounds), NodalRegion);
}
