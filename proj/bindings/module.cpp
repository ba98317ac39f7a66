#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "ppb2d/hydrodynamics.hpp"
#include "ppb2d/numgrid.hpp"
#include "ppb2d/verify.hpp"
#include "ppb2d/version.hpp"

namespace py = pybind11;
using namespace ppb;

namespace {

Vec2 as_vec(std::pair<double, double> pt) { return {pt.first, pt.second}; }

std::vector<Vec2> as_vecs(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const auto& [x, y] : pts) out.push_back({x, y});
  return out;
}

py::tuple tup(Vec2 v) { return py::make_tuple(v.x, v.y); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Eigenstates and probability-current hydrodynamics of the "
            "two-dimensional parabolic potential barrier";
  m.attr("__version__") = kVersion;

  py::register_exception<NodalRegion>(m, "NodalRegionError");
  py::register_exception<OriginSingular>(m, "OriginSingularError");
  py::register_exception<RepresentationMismatch>(m, "RepresentationMismatchError");
  py::register_exception<NotIrrotational>(m, "NotIrrotationalError");
  py::register_exception<NotSolenoidal>(m, "NotSolenoidalError");
  py::register_exception<NoMonomialFit>(m, "NoMonomialFitError");

  py::enum_<Branch>(m, "Branch")
      .value("PLUS", Branch::Plus)
      .value("MINUS", Branch::Minus);

  py::class_<PhysParams>(m, "PhysParams")
      .def(py::init<>())
      .def(py::init<double, double, double, double>(), py::arg("hbar"), py::arg("mass"),
           py::arg("gamma"), py::arg("v0"))
      .def_readonly("hbar", &PhysParams::hbar)
      .def_readonly("mass", &PhysParams::mass)
      .def_readonly("gamma", &PhysParams::gamma)
      .def_readonly("v0", &PhysParams::v0)
      .def_property_readonly("beta", &PhysParams::beta)
      .def("__repr__", [](const PhysParams& p) {
        return "PhysParams(hbar=" + std::to_string(p.hbar) + ", mass=" + std::to_string(p.mass) +
               ", gamma=" + std::to_string(p.gamma) + ", v0=" + std::to_string(p.v0) + ")";
      });

  py::class_<StateLabel>(m, "StateLabel")
      .def(py::init([](int type, int nx, int ny) { return StateLabel::from_type(type, nx, ny); }),
           py::arg("type"), py::arg("nx"), py::arg("ny"))
      .def_readonly("bx", &StateLabel::bx)
      .def_readonly("by", &StateLabel::by)
      .def_readonly("nx", &StateLabel::nx)
      .def_readonly("ny", &StateLabel::ny)
      .def_property_readonly("type", &StateLabel::type)
      .def("__repr__", [](const StateLabel& l) {
        return "StateLabel(type=" + std::to_string(l.type()) + ", nx=" + std::to_string(l.nx) +
               ", ny=" + std::to_string(l.ny) + ")";
      });

  py::class_<Wavefunction>(m, "Wavefunction")
      .def("__call__", [](const Wavefunction& w, double x, double y) { return w(x, y); },
           py::arg("x"), py::arg("y"))
      .def("density", [](const Wavefunction& w, double x, double y) { return w.density(x, y); },
           py::arg("x"), py::arg("y"))
      .def("conjugated", &Wavefunction::conjugated);

  py::class_<Superposition>(m, "Superposition")
      .def_readonly("wavefunction", &Superposition::w)
      .def_readonly("is_energy_eigenstate", &Superposition::is_energy_eigenstate);

  m.def("hermite_pm_coeffs",
        [](int n, Branch b) { return hermite_pm(n, b).coeffs; }, py::arg("n"), py::arg("branch"),
        "Ascending complex coefficients of the degree-n barrier polynomial");
  m.def("hermite_ode_residual", &ode_residual, py::arg("n"), py::arg("branch"), py::arg("xi"));

  m.def("energy", &energy, py::arg("label"), py::arg("params"));
  m.def("build_state", &build_state, py::arg("label"), py::arg("params"));
  m.def("conjugate_state", &conjugate_state, py::arg("label"));
  m.def("time_factor", &time_factor, py::arg("label"), py::arg("params"), py::arg("t"));
  m.def("classify_flow",
        [](const StateLabel& l) { return std::string(to_string(classify_flow(l))); },
        py::arg("label"));
  m.def("degeneracy",
        [](int type, long level) -> py::object {
          const Degeneracy d = degeneracy(type, level);
          if (d.infinite) return py::float_(std::numeric_limits<double>::infinity());
          return py::int_(d.count);
        },
        py::arg("type"), py::arg("level"),
        "Level degeneracy: an integer for types 1/4, math.inf for types 2/3");
  m.def("superpose",
        [](const std::vector<std::pair<cplx, StateLabel>>& terms, const PhysParams& p) {
          return superpose(terms, p);
        },
        py::arg("terms"), py::arg("params"));
  m.def("apply_lz",
        [](const Wavefunction& w, const PhysParams& p, double x, double y) {
          return apply_lz(w, p, {x, y});
        },
        py::arg("w"), py::arg("params"), py::arg("x"), py::arg("y"));
  m.def("lz_eigencheck",
        [](const Wavefunction& w, const PhysParams& p,
           const std::vector<std::pair<double, double>>& pts) {
          const LzEstimate e = lz_eigencheck(w, p, as_vecs(pts));
          return py::make_tuple(e.estimate, e.max_deviation);
        },
        py::arg("w"), py::arg("params"), py::arg("points"),
        "Mean of (Lz w / w) over the samples and the max deviation from it");
  m.def("schrodinger_residual",
        [](const Wavefunction& w, cplx e, const PhysParams& p, double x, double y) {
          return schrodinger_residual(w, e, p, {x, y});
        },
        py::arg("w"), py::arg("energy"), py::arg("params"), py::arg("x"), py::arg("y"));
  m.def("to_polar",
        [](double x, double y) {
          const Polar pol = to_polar(x, y);
          return py::make_tuple(pol.r, pol.phi);
        },
        py::arg("x"), py::arg("y"));
  m.def("to_hyperbolic",
        [](double x, double y) {
          const HyperbolicPoint h = to_hyperbolic(x, y);
          return py::make_tuple(h.u, h.v);
        },
        py::arg("x"), py::arg("y"));
  m.def("scale_factors",
        [](double u, double v) {
          const ScaleFactors s = scale_factors(u, v);
          return py::make_tuple(s.hu, s.hv);
        },
        py::arg("u"), py::arg("v"));

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<double, double, double, double, int, int>(), py::arg("x_min"),
           py::arg("x_max"), py::arg("y_min"), py::arg("y_max"), py::arg("nx_pts"),
           py::arg("ny_pts"))
      .def_readonly("x_min", &GridSpec::x_min)
      .def_readonly("x_max", &GridSpec::x_max)
      .def_readonly("y_min", &GridSpec::y_min)
      .def_readonly("y_max", &GridSpec::y_max)
      .def_readonly("nx_pts", &GridSpec::nx_pts)
      .def_readonly("ny_pts", &GridSpec::ny_pts);

  py::class_<FlowField>(m, "FlowField")
      .def(py::init<Wavefunction, const PhysParams&>(), py::arg("w"), py::arg("params"))
      .def("density", [](const FlowField& f, double x, double y) { return f.density({x, y}); },
           py::arg("x"), py::arg("y"))
      .def("current", [](const FlowField& f, double x, double y) { return tup(f.current({x, y})); },
           py::arg("x"), py::arg("y"))
      .def("velocity",
           [](const FlowField& f, double x, double y, double eps_node) {
             return tup(f.velocity({x, y}, eps_node));
           },
           py::arg("x"), py::arg("y"), py::arg("eps_node") = 0.0)
      .def("divergence",
           [](const FlowField& f, double x, double y, double eps_node) {
             return f.divergence({x, y}, eps_node);
           },
           py::arg("x"), py::arg("y"), py::arg("eps_node") = 0.0)
      .def("vorticity",
           [](const FlowField& f, double x, double y, double eps_node) {
             return f.vorticity({x, y}, eps_node);
           },
           py::arg("x"), py::arg("y"), py::arg("eps_node") = 0.0)
      .def("current_hyperbolic",
           [](const FlowField& f, double x, double y) {
             const auto [ju, jv] = f.current_hyperbolic({x, y});
             return py::make_tuple(ju, jv);
           },
           py::arg("x"), py::arg("y"));

  m.def("node_threshold",
        [](const Wavefunction& w, const std::vector<std::pair<double, double>>& pts) {
          return node_threshold(w, as_vecs(pts));
        },
        py::arg("w"), py::arg("points"));
  m.def("stationary_current_closed_form",
        [](int n, Branch b, const PhysParams& p, double u, double v) {
          const auto [ju, jv] = stationary_current_closed_form(n, b, p, u, v);
          return py::make_tuple(ju, jv);
        },
        py::arg("n"), py::arg("branch"), py::arg("params"), py::arg("u"), py::arg("v"));

  py::class_<PotentialPair>(m, "PotentialPair")
      .def("phi", [](const PotentialPair& p, double x, double y) { return p.phi({x, y}); },
           py::arg("x"), py::arg("y"))
      .def("psi", [](const PotentialPair& p, double x, double y) { return p.psi({x, y}); },
           py::arg("x"), py::arg("y"))
      .def_property_readonly("anchor", [](const PotentialPair& p) { return tup(p.anchor); });

  py::class_<CornerPotential>(m, "CornerPotential")
      .def_readonly("amplitude", &CornerPotential::amplitude)
      .def_readonly("exponent", &CornerPotential::exponent)
      .def_readonly("residual", &CornerPotential::residual)
      .def("__repr__", [](const CornerPotential& c) {
        return "CornerPotential(A=" + std::to_string(c.amplitude.real()) + "+" +
               std::to_string(c.amplitude.imag()) + "j, a=" + std::to_string(c.exponent) + ")";
      });

  m.def("extract_potentials",
        [](const Wavefunction& w, const PhysParams& p, const GridSpec& region) {
          return extract_potentials(w, p, region);
        },
        py::arg("w"), py::arg("params"), py::arg("region"));
  m.def("fit_corner_potential", &fit_corner_potential, py::arg("pair"), py::arg("region"),
        py::arg("a_max") = 6, py::arg("fit_tol") = 1e-6);
  m.def("complex_velocity", &complex_velocity, py::arg("corner"), py::arg("z"),
        "dW/dz = A a z^(a-1) = vx - i vy");

  m.def("integrate_streamline",
        [](const FlowField& f, std::pair<double, double> seed, double step, int max_steps,
           const GridSpec& bounds, double eps_node) {
          const Streamline line = integrate_streamline(
              [&f, eps_node](Vec2 pt) { return f.velocity(pt, eps_node); }, as_vec(seed), step,
              max_steps, bounds);
          std::vector<std::pair<double, double>> pts;
          pts.reserve(line.points.size());
          for (const Vec2& pt : line.points) pts.emplace_back(pt.x, pt.y);
          return py::make_tuple(pts, std::string(to_string(line.terminated_by)));
        },
        py::arg("field"), py::arg("seed"), py::arg("step"), py::arg("max_steps"),
        py::arg("bounds"), py::arg("eps_node") = 0.0,
        "RK4 flow line; returns (points, termination_reason)");

  m.def("run_verification",
        [](const PhysParams& p, int n_max, std::uint64_t seed) {
          py::list out;
          for (const auto& r : verify::run_all(p, n_max, seed)) {
            py::dict d;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(std::move(d));
          }
          return out;
        },
        py::arg("params") = PhysParams{}, py::arg("n_max") = 8, py::arg("seed") = 42,
        "Run the full invariant suite; returns a list of check dicts");
}
