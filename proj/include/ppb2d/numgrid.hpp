#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ppb2d/errors.hpp"
#include "ppb2d/numgrid_spec.hpp"
#include "ppb2d/types.hpp"

namespace ppb {

using ScalarField = std::function<double(Vec2)>;
using VectorField = std::function<Vec2(Vec2)>;
using ComplexField = std::function<cplx(Vec2)>;

/// Default step for the finite-difference oracles: 1e-5 * max(1, |coord|)
/// per axis, balancing truncation against roundoff for smooth fields.
Vec2 default_fd_step(Vec2 pt);

/// Second-order central differences; with richardson = true, one step of
/// Richardson extrapolation (halving h) raises the order to four.
/// h <= 0 selects the default step. NodalRegion from the underlying field
/// propagates.
Vec2 fd_gradient(const ScalarField& f, Vec2 pt, double h = 0.0, bool richardson = false);
double fd_divergence(const VectorField& f, Vec2 pt, double h = 0.0, bool richardson = false);
double fd_curl(const VectorField& f, Vec2 pt, double h = 0.0, bool richardson = false);

/// Row-major table of grid samples; nodal cells are flagged, not fatal.
template <typename T>
struct GridTable {
  GridSpec spec;
  std::vector<std::optional<T>> cells;  // index = j * nx_pts + i, y slowest

  const std::optional<T>& at(int i, int j) const {
    return cells[static_cast<std::size_t>(j) * spec.nx_pts + i];
  }
};

template <typename T>
GridTable<T> sample_grid(const std::function<T(Vec2)>& field, const GridSpec& spec) {
  GridTable<T> table{spec, {}};
  table.cells.reserve(static_cast<std::size_t>(spec.nx_pts) * spec.ny_pts);
  for (int j = 0; j < spec.ny_pts; ++j) {
    for (int i = 0; i < spec.nx_pts; ++i) {
      try {
        table.cells.push_back(field({spec.x(i), spec.y(j)}));
      } catch (const NodalRegion&) {
        table.cells.push_back(std::nullopt);
      }
    }
  }
  return table;
}

enum class Termination { StepLimit, LeftBounds, NodalRegion };

const char* to_string(Termination t);

/// Polyline traced through a velocity field.
struct Streamline {
  std::vector<Vec2> points;
  Termination terminated_by = Termination::StepLimit;
};

/// Classical fixed-step RK4 on the normalized velocity direction, so the
/// step is arc length and stagnation points cannot stall the march.
/// Terminates on leaving the bounds, exhausting max_steps, entering a nodal
/// region, or stagnating (|v| ~ 0 or no forward progress); the last two
/// both report NodalRegion. A nodal seed throws instead.
Streamline integrate_streamline(const VectorField& vel, Vec2 seed, double step,
                                int max_steps, const GridSpec& bounds);

}  // namespace ppb
