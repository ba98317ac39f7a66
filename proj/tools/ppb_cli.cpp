// Command line front-end: construction, field export, streamline tracing,
// potential extraction and the verification suite for the two-dimensional
// parabolic potential barrier.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 physics-negative result (requested potentials do not exist).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppb2d/hydrodynamics.hpp"
#include "ppb2d/numgrid.hpp"
#include "ppb2d/verify.hpp"
#include "ppb2d/version.hpp"

using json = nlohmann::ordered_json;
using namespace ppb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPhysicsNegative = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits round-trip doubles exactly; negative zero prints
// as plain 0.
std::string fmt17(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Same negative-zero normalization for values entering JSON documents.
double nz(double v) { return v == 0.0 ? 0.0 : v; }

struct Options {
  double hbar = 1.0, mass = 1.0, gamma = 1.0, v0 = 0.0;
  std::string format;  // resolved later: flag > PPB_DEFAULT_FORMAT > csv
  std::string out_path;
  double tol = 1e-6;
  std::uint64_t seed = 42;
  std::string bounds = "-2,2,-2,2";
  std::string res = "21,21";

  int type = 0;
  int nx = 0, ny = 0;
  std::vector<std::string> terms;

  // per-command
  int n_max = 6;
  std::string which;
  std::vector<std::string> seed_points;
  double step = 1e-3;
  int max_steps = 10000;
  int a_max = 6;

  PhysParams params() const {
    if (hbar <= 0.0 || mass <= 0.0 || gamma <= 0.0) {
      throw UsageError("hbar, mass and gamma must be positive");
    }
    return PhysParams(hbar, mass, gamma, v0);
  }

  std::string resolved_format() const {
    std::string f = format;
    if (f.empty()) {
      const char* env = std::getenv("PPB_DEFAULT_FORMAT");
      f = env ? env : "csv";
    }
    if (f != "csv" && f != "json") throw UsageError("format must be csv or json");
    return f;
  }

  GridSpec grid() const {
    const auto b = split_doubles(bounds, 4, "--bounds expects xmin,xmax,ymin,ymax");
    const auto r = split_doubles(res, 2, "--res expects NX,NY");
    if (r[0] != std::floor(r[0]) || r[1] != std::floor(r[1])) {
      throw UsageError("--res expects integers");
    }
    try {
      return GridSpec(b[0], b[1], b[2], b[3], static_cast<int>(r[0]), static_cast<int>(r[1]));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  static std::vector<double> split_doubles(const std::string& s, std::size_t want,
                                           const std::string& msg) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw UsageError(msg);
      } catch (const UsageError&) {
        throw;
      } catch (...) {
        throw UsageError(msg);
      }
    }
    if (out.size() != want) throw UsageError(msg);
    return out;
  }
};

json params_json(const PhysParams& p) {
  return {{"hbar", p.hbar}, {"mass", p.mass}, {"gamma", p.gamma},
          {"v0", p.v0}, {"beta", p.beta()}};
}

json make_meta(const std::string& command, const PhysParams& p) {
  return {{"command", command}, {"version", kVersion}, {"params", params_json(p)}};
}

// State selection: either --type/--nx/--ny, or repeated
// --term "c_re,c_im:type,nx,ny" superposition terms.
struct StateSpec {
  Wavefunction w;
  json description;
};

StateSpec resolve_state(const Options& o, const PhysParams& p) {
  if (!o.terms.empty()) {
    std::vector<std::pair<cplx, StateLabel>> terms;
    json desc = json::array();
    for (const std::string& t : o.terms) {
      const auto colon = t.find(':');
      if (colon == std::string::npos) {
        throw UsageError("--term expects \"c_re,c_im:type,nx,ny\"");
      }
      const auto c = Options::split_doubles(t.substr(0, colon), 2, "--term coefficient must be c_re,c_im");
      const auto l = Options::split_doubles(t.substr(colon + 1), 3, "--term label must be type,nx,ny");
      try {
        terms.emplace_back(cplx{c[0], c[1]},
                           StateLabel::from_type(static_cast<int>(l[0]), static_cast<int>(l[1]),
                                                 static_cast<int>(l[2])));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      desc.push_back({{"coeff", {c[0], c[1]}},
                      {"type", static_cast<int>(l[0])},
                      {"nx", static_cast<int>(l[1])},
                      {"ny", static_cast<int>(l[2])}});
    }
    try {
      Superposition s = superpose(terms, p);
      if (!s.is_energy_eigenstate) {
        std::cerr << "warning: superposition terms carry different energies "
                     "(not an energy eigenstate)\n";
      }
      return {std::move(s.w), json{{"terms", desc}}};
    } catch (const RepresentationMismatch& e) {
      throw UsageError(e.what());
    }
  }
  if (o.type < 1 || o.type > 4) {
    throw UsageError("select a state with --type {1|2|3|4} --nx N --ny M or --term ...");
  }
  StateLabel label;
  try {
    label = StateLabel::from_type(o.type, o.nx, o.ny);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return {build_state(label, p),
          json{{"type", o.type}, {"nx", o.nx}, {"ny", o.ny},
               {"flow_class", to_string(classify_flow(label))}}};
}

// Output goes to --out PATH or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(std::ostream& os, const json& doc) { os << doc.dump(2) << "\n"; }

int cmd_energies(const Options& o) {
  const PhysParams p = o.params();
  if (o.type < 1 || o.type > 4) throw UsageError("--type {1|2|3|4} is required");
  if (o.n_max < 0) throw UsageError("--n-max must be nonnegative");

  Sink sink(o.out_path);
  std::ostream& os = sink.stream();

  json rows = json::array();
  std::ostringstream csv;
  csv << "nx,ny,energy_re,energy_im,flow_class,degeneracy\n";
  for (int n = 0; n <= o.n_max; ++n) {
    const Degeneracy deg = degeneracy(o.type, n);
    const std::string deg_str = deg.infinite ? "inf" : std::to_string(deg.count);
    for (int nx = 0; nx <= n; ++nx) {
      const int ny = n - nx;
      const StateLabel label = StateLabel::from_type(o.type, nx, ny);
      const cplx e = energy(label, p);
      const char* cls = to_string(classify_flow(label));
      csv << nx << ',' << ny << ',' << fmt17(e.real()) << ',' << fmt17(e.imag()) << ','
          << cls << ',' << deg_str << "\n";
      json row = {{"nx", nx}, {"ny", ny}, {"energy", {nz(e.real()), nz(e.imag())}},
                  {"flow_class", cls}};
      if (deg.infinite) {
        row["degeneracy"] = "inf";
      } else {
        row["degeneracy"] = deg.count;
      }
      rows.push_back(std::move(row));
    }
  }

  if (o.resolved_format() == "csv") {
    os << csv.str();
  } else {
    json doc = {{"meta", make_meta("energies", p)}, {"data", rows}};
    doc["meta"]["type"] = o.type;
    doc["meta"]["n_max"] = o.n_max;
    emit_json(os, doc);
  }
  return kExitOk;
}

int cmd_field(const Options& o) {
  const PhysParams p = o.params();
  static const std::vector<std::string> kFields{"psi", "density", "current",
                                                "velocity", "divergence", "vorticity"};
  if (std::find(kFields.begin(), kFields.end(), o.which) == kFields.end()) {
    throw UsageError("--which must be one of psi|density|current|velocity|divergence|vorticity");
  }
  const GridSpec grid = o.grid();
  StateSpec state = resolve_state(o, p);
  const FlowField field(state.w, p);
  const double eps = node_threshold(state.w, grid.points());

  Sink sink(o.out_path);
  std::ostream& os = sink.stream();

  const bool is_json = o.resolved_format() == "json";
  json rows = json::array();
  std::ostringstream csv;
  if (o.which == "psi") {
    csv << "x,y,psi_re,psi_im\n";
  } else if (o.which == "density") {
    csv << "x,y,density\n";
  } else if (o.which == "current" || o.which == "velocity") {
    csv << "x,y," << o.which << "_x," << o.which << "_y\n";
  } else {
    csv << "x,y," << o.which << "\n";
  }

  for (int j = 0; j < grid.ny_pts; ++j) {
    for (int i = 0; i < grid.nx_pts; ++i) {
      const Vec2 pt{grid.x(i), grid.y(j)};
      json row = {{"x", pt.x}, {"y", pt.y}};
      csv << fmt17(pt.x) << ',' << fmt17(pt.y) << ',';
      if (o.which == "psi") {
        const cplx v = state.w(pt);
        csv << fmt17(v.real()) << ',' << fmt17(v.imag());
        row["psi"] = {nz(v.real()), nz(v.imag())};
      } else if (o.which == "density") {
        const double v = state.w.density(pt);
        csv << fmt17(v);
        row["density"] = nz(v);
      } else if (o.which == "current") {
        const Vec2 v = field.current(pt);
        csv << fmt17(v.x) << ',' << fmt17(v.y);
        row["current"] = {nz(v.x), nz(v.y)};
      } else {
        try {
          if (o.which == "velocity") {
            const Vec2 v = field.velocity(pt, eps);
            csv << fmt17(v.x) << ',' << fmt17(v.y);
            row["velocity"] = {nz(v.x), nz(v.y)};
          } else if (o.which == "divergence") {
            const double v = field.divergence(pt, eps);
            csv << fmt17(v);
            row["divergence"] = nz(v);
          } else {
            const double v = field.vorticity(pt, eps);
            csv << fmt17(v);
            row["vorticity"] = nz(v);
          }
        } catch (const NodalRegion&) {
          csv << (o.which == "velocity" ? "nodal,nodal" : "nodal");
          row[o.which] = "nodal";
        }
      }
      csv << "\n";
      if (is_json) rows.push_back(std::move(row));
    }
  }

  if (!is_json) {
    os << csv.str();
  } else {
    json doc = {{"meta", make_meta("field", p)}, {"data", rows}};
    doc["meta"]["which"] = o.which;
    doc["meta"]["state"] = state.description;
    doc["meta"]["grid"] = {{"bounds", {grid.x_min, grid.x_max, grid.y_min, grid.y_max}},
                           {"res", {grid.nx_pts, grid.ny_pts}}};
    emit_json(os, doc);
  }
  return kExitOk;
}

int cmd_streamline(const Options& o) {
  const PhysParams p = o.params();
  if (o.seed_points.empty()) throw UsageError("at least one --seed-point x,y is required");
  if (!(o.step > 0.0)) throw UsageError("--step must be positive");
  if (o.max_steps < 1) throw UsageError("--max-steps must be >= 1");
  const GridSpec bounds = o.grid();
  StateSpec state = resolve_state(o, p);
  const FlowField field(state.w, p);
  const double eps = node_threshold(state.w, bounds.points());
  VectorField vel = [&field, eps](Vec2 pt) { return field.velocity(pt, eps); };

  Sink sink(o.out_path);
  std::ostream& os = sink.stream();

  struct Failed {
    std::size_t index;
    Vec2 seed;
    std::string reason;
  };
  std::vector<Failed> failed;
  std::vector<std::pair<Vec2, Streamline>> lines;
  for (std::size_t k = 0; k < o.seed_points.size(); ++k) {
    const auto xy = Options::split_doubles(o.seed_points[k], 2, "--seed-point expects x,y");
    const Vec2 seed{xy[0], xy[1]};
    try {
      lines.emplace_back(seed, integrate_streamline(vel, seed, o.step, o.max_steps, bounds));
    } catch (const NodalRegion&) {
      failed.push_back({k, seed, "nodal_region"});
    } catch (const std::invalid_argument&) {
      failed.push_back({k, seed, "outside_bounds"});
    }
  }
  if (lines.empty()) throw UsageError("no streamline could be started from the given seeds");

  if (o.resolved_format() == "csv") {
    os << "streamline_id,point_index,x,y\n";
    for (std::size_t id = 0; id < lines.size(); ++id) {
      const Streamline& line = lines[id].second;
      for (std::size_t i = 0; i < line.points.size(); ++i) {
        os << id << ',' << i << ',' << fmt17(line.points[i].x) << ','
           << fmt17(line.points[i].y) << "\n";
      }
    }
    for (std::size_t id = 0; id < lines.size(); ++id) {
      os << "# streamline " << id << ": seed=" << fmt17(lines[id].first.x) << ','
         << fmt17(lines[id].first.y) << " terminated_by=" << to_string(lines[id].second.terminated_by)
         << " points=" << lines[id].second.points.size() << "\n";
    }
    for (const Failed& f : failed) {
      os << "# seed " << f.index << " (" << fmt17(f.seed.x) << ',' << fmt17(f.seed.y)
         << "): " << f.reason << "\n";
    }
  } else {
    json data = json::array();
    for (std::size_t id = 0; id < lines.size(); ++id) {
      json pts = json::array();
      for (const Vec2& pt : lines[id].second.points) pts.push_back({nz(pt.x), nz(pt.y)});
      data.push_back({{"id", id},
                      {"seed", {lines[id].first.x, lines[id].first.y}},
                      {"terminated_by", to_string(lines[id].second.terminated_by)},
                      {"points", std::move(pts)}});
    }
    json doc = {{"meta", make_meta("streamline", p)}, {"data", data}};
    doc["meta"]["state"] = state.description;
    doc["meta"]["step"] = o.step;
    doc["meta"]["max_steps"] = o.max_steps;
    if (!failed.empty()) {
      json bad = json::array();
      for (const Failed& f : failed) {
        bad.push_back({{"index", f.index}, {"seed", {f.seed.x, f.seed.y}}, {"reason", f.reason}});
      }
      doc["meta"]["failed_seeds"] = std::move(bad);
    }
    emit_json(os, doc);
  }
  return kExitOk;
}

int cmd_potentials(const Options& o) {
  const PhysParams p = o.params();
  const GridSpec region = o.grid();
  StateSpec state = resolve_state(o, p);

  Sink sink(o.out_path);
  std::ostream& os = sink.stream();
  const bool is_json = o.resolved_format() == "json";

  ExtractOptions eopts;
  eopts.premise_tol = o.tol;

  std::string kind;
  double violation = 0.0;
  try {
    const PotentialPair pair = extract_potentials(state.w, p, region, eopts);
    const CornerPotential cp = fit_corner_potential(pair, region, o.a_max, o.tol);

    if (!is_json) {
      os << "x,y,u,v,phi,psi\n";
      for (int j = 0; j < region.ny_pts; ++j) {
        for (int i = 0; i < region.nx_pts; ++i) {
          const Vec2 pt{region.x(i), region.y(j)};
          const HyperbolicPoint h = to_hyperbolic(pt.x, pt.y);
          os << fmt17(pt.x) << ',' << fmt17(pt.y) << ',' << fmt17(h.u) << ',' << fmt17(h.v)
             << ',' << fmt17(pair.phi(pt)) << ',' << fmt17(pair.psi(pt)) << "\n";
        }
      }
      os << "# fit: amplitude_re=" << fmt17(cp.amplitude.real())
         << " amplitude_im=" << fmt17(cp.amplitude.imag()) << " exponent=" << cp.exponent
         << " residual=" << fmt17(cp.residual) << "\n";
      os << "# anchor: " << fmt17(pair.anchor.x) << ',' << fmt17(pair.anchor.y) << "\n";
    } else {
      json samples = json::array();
      for (int j = 0; j < region.ny_pts; ++j) {
        for (int i = 0; i < region.nx_pts; ++i) {
          const Vec2 pt{region.x(i), region.y(j)};
          const HyperbolicPoint h = to_hyperbolic(pt.x, pt.y);
          samples.push_back({{"x", pt.x}, {"y", pt.y}, {"u", nz(h.u)}, {"v", nz(h.v)},
                             {"phi", nz(pair.phi(pt))}, {"psi", nz(pair.psi(pt))}});
        }
      }
      json doc = {{"meta", make_meta("potentials", p)},
                  {"data", json::array({json{
                      {"fit", {{"amplitude", {nz(cp.amplitude.real()), nz(cp.amplitude.imag())}},
                               {"exponent", cp.exponent},
                               {"residual", cp.residual}}},
                      {"anchor", {pair.anchor.x, pair.anchor.y}},
                      {"samples", std::move(samples)}}})}};
      doc["meta"]["state"] = state.description;
      emit_json(os, doc);
    }
    return kExitOk;
  } catch (const NotIrrotational& e) {
    kind = "not_irrotational";
    violation = e.violation;
  } catch (const NotSolenoidal& e) {
    kind = "not_solenoidal";
    violation = e.violation;
  } catch (const NoMonomialFit& e) {
    kind = "no_monomial_fit";
    violation = e.best_residual;
  } catch (const NodalRegion& e) {
    throw UsageError(std::string(e.what()) + " (choose --bounds away from nodal lines)");
  }

  // Physics-negative outcome: the requested potentials do not exist.
  if (!is_json) {
    os << "error,violation\n" << kind << ',' << fmt17(violation) << "\n";
  } else {
    json doc = {{"meta", make_meta("potentials", p)},
                {"data", json::array({json{{"error", kind}, {"violation", violation}}})}};
    doc["meta"]["state"] = state.description;
    emit_json(os, doc);
  }
  return kExitPhysicsNegative;
}

int cmd_verify(const Options& o) {
  const PhysParams p = o.params();
  if (o.n_max < 0) throw UsageError("--n-max must be nonnegative");
  const auto results = verify::run_all(p, o.n_max, o.seed);

  Sink sink(o.out_path);
  std::ostream& os = sink.stream();

  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;

  if (o.resolved_format() == "json") {
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    json doc = {{"meta", make_meta("verify", p)}, {"data", rows}};
    doc["meta"]["n_max"] = o.n_max;
    doc["meta"]["seed"] = o.seed;
    doc["meta"]["passed"] = passed;
    doc["meta"]["total"] = results.size();
    emit_json(os, doc);
  } else {
    for (const auto& r : results) {
      os << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << " - " << r.detail << "\n";
    }
    os << passed << "/" << results.size() << " checks passed (n_max=" << o.n_max
       << ", seed=" << o.seed << ")\n";
  }
  return passed == results.size() ? kExitOk : kExitVerifyFailed;
}

void add_common(CLI::App* cmd, Options& o, bool with_state, bool with_grid) {
  cmd->add_option("--hbar", o.hbar, "Planck constant (default 1)");
  cmd->add_option("--mass", o.mass, "particle mass (default 1)");
  cmd->add_option("--gamma", o.gamma, "barrier curvature rate (default 1)");
  cmd->add_option("--v0", o.v0, "barrier top energy (default 0)");
  cmd->add_option("--format", o.format, "output format: csv|json (env PPB_DEFAULT_FORMAT)");
  cmd->add_option("--out", o.out_path, "write output to this file instead of stdout");
  cmd->add_option("--tol", o.tol, "tolerance scale for premise checks and fits (default 1e-6)");
  cmd->add_option("--seed", o.seed, "RNG seed for randomized checks (default 42)");
  if (with_state) {
    cmd->add_option("--type", o.type, "state type 1..4: (+,+), (+,-), (-,+), (-,-)");
    cmd->add_option("--nx", o.nx, "x quantum number");
    cmd->add_option("--ny", o.ny, "y quantum number");
    cmd->add_option("--term", o.terms,
                    "superposition term \"c_re,c_im:type,nx,ny\" (repeatable)");
  }
  if (with_grid) {
    cmd->add_option("--bounds", o.bounds, "grid bounds xmin,xmax,ymin,ymax");
    cmd->add_option("--res", o.res, "grid resolution NX,NY");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact eigenstates and probability-current hydrodynamics of the "
               "two-dimensional parabolic potential barrier"};
  app.require_subcommand(1);
  Options o;

  CLI::App* energies = app.add_subcommand("energies", "spectrum table of one state type");
  add_common(energies, o, false, false);
  energies->add_option("--type", o.type, "state type 1..4")->required();
  energies->add_option("--n-max", o.n_max, "include all nx+ny <= n_max (default 6)");

  CLI::App* field = app.add_subcommand("field", "sample a field on a grid");
  add_common(field, o, true, true);
  field->add_option("--which", o.which,
                    "psi|density|current|velocity|divergence|vorticity")->required();

  CLI::App* streamline = app.add_subcommand("streamline", "trace flow lines");
  add_common(streamline, o, true, true);
  streamline->add_option("--seed-point", o.seed_points, "streamline seed x,y (repeatable)");
  streamline->add_option("--step", o.step, "arc-length step (default 1e-3)");
  streamline->add_option("--max-steps", o.max_steps, "step limit per streamline (default 10000)");

  CLI::App* potentials = app.add_subcommand("potentials",
                                            "extract velocity potential and stream function");
  add_common(potentials, o, true, true);
  potentials->add_option("--a-max", o.a_max, "largest monomial exponent to try (default 6)");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  add_common(verify, o, false, false);
  verify->add_option("--n-max", o.n_max, "quantum-number range (default 8)")->default_val(8);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(energies)) return cmd_energies(o);
    if (app.got_subcommand(field)) return cmd_field(o);
    if (app.got_subcommand(streamline)) return cmd_streamline(o);
    if (app.got_subcommand(potentials)) return cmd_potentials(o);
    return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
