#include <doctest.h>

#include <cmath>

#include "ppb2d/hydrodynamics.hpp"

using namespace ppb;

namespace {
const PhysParams natural{};

// Independent oracle for states whose polynomial factor is real: the
// current is carried by the quadratic phase alone,
// j = (hbar/m) |psi|^2 grad S with S = beta^2 (sx x^2 + sy y^2) / 2.
Vec2 phase_current_oracle(const Wavefunction& w, const PhysParams& p, Vec2 pt) {
  const double b2 = w.beta * w.beta;
  const double rho = w.density(pt);
  return {p.hbar / p.mass * rho * b2 * w.sx * pt.x,
          p.hbar / p.mass * rho * b2 * w.sy * pt.y};
}
}  // namespace

TEST_CASE("current matches the phase-gradient oracle") {
  const FlowField corner(build_state({Branch::Plus, Branch::Minus, 0, 0}, natural), natural);
  const Vec2 j = corner.current({1.0, 2.0});
  CHECK(j.x == doctest::Approx(1.0));
  CHECK(j.y == doctest::Approx(-2.0));

  const FlowField diverging(build_state({Branch::Plus, Branch::Plus, 0, 0}, natural), natural);
  const Vec2 jd = diverging.current({1.0, 1.0});
  CHECK(jd.x == doctest::Approx(1.0));
  CHECK(jd.y == doctest::Approx(1.0));

  // real polynomial factors carry no current of their own
  for (const StateLabel l : {StateLabel{Branch::Plus, Branch::Minus, 1, 1},
                             StateLabel{Branch::Plus, Branch::Plus, 1, 1},
                             StateLabel{Branch::Minus, Branch::Plus, 1, 1}}) {
    const Wavefunction w = build_state(l, natural);
    const FlowField f(w, natural);
    for (const Vec2 pt : {Vec2{0.7, 1.1}, Vec2{-1.3, 0.4}, Vec2{2.2, -1.8}}) {
      const Vec2 got = f.current(pt);
      const Vec2 want = phase_current_oracle(w, natural, pt);
      CHECK(got.x == doctest::Approx(want.x).epsilon(1e-12));
      CHECK(got.y == doctest::Approx(want.y).epsilon(1e-12));
    }
  }
}

TEST_CASE("velocity and its nodal set") {
  const FlowField f11(build_state({Branch::Plus, Branch::Minus, 1, 1}, natural), natural);
  const Vec2 v = f11.velocity({1.0, 1.0});
  CHECK(v.x == doctest::Approx(1.0));
  CHECK(v.y == doctest::Approx(-1.0));
  CHECK_THROWS_AS(f11.velocity({0.0, 1.0}), NodalRegion);
  CHECK_THROWS_AS(f11.velocity({2.0, 0.0}, 1e-12), NodalRegion);

  const FlowField f00(build_state({Branch::Minus, Branch::Plus, 0, 0}, natural), natural);
  const Vec2 v2 = f00.velocity({2.0, 1.0});
  CHECK(v2.x == doctest::Approx(-2.0));
  CHECK(v2.y == doctest::Approx(1.0));

  // velocity * density = current
  for (const Vec2 pt : {Vec2{0.5, 0.8}, Vec2{-1.1, 1.7}}) {
    const Vec2 j = f11.current(pt);
    const Vec2 vv = f11.velocity(pt);
    const double rho = f11.density(pt);
    CHECK(vv.x * rho == doctest::Approx(j.x).epsilon(1e-12));
    CHECK(vv.y * rho == doctest::Approx(j.y).epsilon(1e-12));
  }

  // non-natural parameters: v = gamma (x, -y) for the stationary ground state
  const PhysParams p2(2.0, 0.5, 1.5, -3.0);
  const FlowField g(build_state({Branch::Plus, Branch::Minus, 0, 0}, p2), p2);
  const Vec2 vg = g.velocity({0.8, -0.6});
  CHECK(vg.x == doctest::Approx(p2.gamma * 0.8));
  CHECK(vg.y == doctest::Approx(p2.gamma * 0.6));
}

TEST_CASE("divergence and vorticity") {
  const FlowField div_field(build_state({Branch::Plus, Branch::Plus, 0, 0}, natural), natural);
  for (const Vec2 pt : {Vec2{0.1, 0.1}, Vec2{-1.5, 2.3}, Vec2{2.9, -0.4}}) {
    CHECK(div_field.divergence(pt) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(div_field.vorticity(pt)) < 1e-12);
  }
  const FlowField conv(build_state({Branch::Minus, Branch::Minus, 0, 0}, natural), natural);
  CHECK(conv.divergence({1.0, -1.0}) == doctest::Approx(-2.0).epsilon(1e-12));

  const FlowField stat(build_state({Branch::Plus, Branch::Minus, 0, 0}, natural), natural);
  for (const Vec2 pt : {Vec2{0.4, 1.9}, Vec2{-2.1, 0.3}}) {
    CHECK(std::abs(stat.divergence(pt)) < 1e-12);
    CHECK(std::abs(stat.vorticity(pt)) < 1e-12);
  }

  // separable eigenstates are irrotational off nodes
  for (int type = 1; type <= 4; ++type) {
    const FlowField f(build_state(StateLabel::from_type(type, 2, 1), natural), natural);
    for (const Vec2 pt : {Vec2{0.6, 0.9}, Vec2{-1.2, -2.0}, Vec2{1.8, 0.3}}) {
      CHECK(std::abs(f.vorticity(pt)) < 1e-10);
    }
  }
}

TEST_CASE("hyperbolic current components") {
  const FlowField f11(build_state({Branch::Plus, Branch::Minus, 1, 1}, natural), natural);
  const auto [ju, jv] = f11.current_hyperbolic({1.0, 1.0});
  CHECK(ju == doctest::Approx(16.0 * std::sqrt(2.0)));
  CHECK(std::abs(jv) < 1e-12);

  const FlowField f00(build_state({Branch::Plus, Branch::Minus, 0, 0}, natural), natural);
  const FlowField g00(build_state({Branch::Minus, Branch::Plus, 0, 0}, natural), natural);
  for (const Vec2 pt : {Vec2{0.8, 0.3}, Vec2{-1.1, 1.6}, Vec2{2.0, -0.9}}) {
    const double hu = 2.0 * std::hypot(pt.x, pt.y);
    const auto [au, av] = f00.current_hyperbolic(pt);
    CHECK(au == doctest::Approx(0.5 * natural.gamma * hu));
    CHECK(std::abs(av) < 1e-12);
    const auto [bu, bv] = g00.current_hyperbolic(pt);
    CHECK(bu == doctest::Approx(-0.5 * natural.gamma * hu));
    CHECK(std::abs(bv) < 1e-12);
  }
  CHECK_THROWS_AS(f00.current_hyperbolic({0.0, 0.0}), OriginSingular);
}

TEST_CASE("closed-form stationary currents") {
  const auto [ju1, jv1] = stationary_current_closed_form(1, Branch::Plus, natural, 0.0, 2.0);
  CHECK(ju1 == doctest::Approx(16.0 * std::sqrt(2.0)));
  CHECK(jv1 == 0.0);

  const auto [ju0, jv0] = stationary_current_closed_form(0, Branch::Minus, natural, 1.0, 0.0);
  CHECK(ju0 == doctest::Approx(-1.0));
  CHECK(jv0 == 0.0);

  CHECK_THROWS_AS(stationary_current_closed_form(0, Branch::Plus, natural, 0.0, 0.0),
                  OriginSingular);
  CHECK_THROWS_AS(stationary_current_closed_form(3, Branch::Plus, natural, 1.0, 1.0),
                  std::invalid_argument);

  // n = 2: the printed form against the numeric current, both branches
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const int type = b == Branch::Plus ? 2 : 3;
    const FlowField f(build_state(StateLabel::from_type(type, 2, 2), natural), natural);
    for (const Vec2 pt : {Vec2{0.5, 0.9}, Vec2{1.4, 0.6}, Vec2{1.9, 1.9}}) {
      const HyperbolicPoint h = to_hyperbolic(pt.x, pt.y);
      const auto [ju_ref, jv_ref] = stationary_current_closed_form(2, b, natural, h.u, h.v);
      const auto [ju_num, jv_num] = f.current_hyperbolic(pt);
      const double scale = std::hypot(ju_ref, jv_ref);
      CHECK(std::hypot(ju_num - ju_ref, jv_num - jv_ref) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("potential extraction for the right-angle flows") {
  const GridSpec region(0.2, 2.0, 0.2, 2.0, 21, 21);
  const Wavefunction w = build_state({Branch::Plus, Branch::Minus, 0, 0}, natural);
  const PotentialPair pair = extract_potentials(w, natural, region);
  const HyperbolicPoint h0 = to_hyperbolic(pair.anchor.x, pair.anchor.y);
  for (const Vec2 pt : {Vec2{0.5, 1.0}, Vec2{1.5, 0.4}, Vec2{1.9, 1.9}}) {
    const HyperbolicPoint h = to_hyperbolic(pt.x, pt.y);
    CHECK(pair.phi(pt) == doctest::Approx(0.5 * (h.u - h0.u)).epsilon(1e-10));
    CHECK(pair.psi(pt) == doctest::Approx(0.5 * (h.v - h0.v)).epsilon(1e-10));
  }

  const CornerPotential cp = fit_corner_potential(pair, region);
  CHECK(cp.exponent == 2);
  CHECK(std::abs(cp.amplitude - cplx{0.5}) < 1e-8);
  CHECK(cp.residual < 1e-8);

  const CornerPotential cm = fit_corner_potential(
      extract_potentials(build_state({Branch::Minus, Branch::Plus, 1, 1}, natural), natural,
                         region),
      region);
  CHECK(cm.exponent == 2);
  CHECK(std::abs(cm.amplitude - cplx{-0.5}) < 1e-8);
}

TEST_CASE("extraction rejects flows without potentials") {
  const GridSpec region(0.2, 2.0, 0.2, 2.0, 21, 21);
  for (int type : {1, 4}) {
    try {
      extract_potentials(build_state(StateLabel::from_type(type, 0, 0), natural), natural,
                         region);
      FAIL("expected NotSolenoidal");
    } catch (const NotSolenoidal& e) {
      CHECK(e.violation == doctest::Approx(2.0).epsilon(1e-9));
    }
  }
  try {
    extract_potentials(build_state({Branch::Plus, Branch::Minus, 2, 2}, natural), natural,
                       region);
    FAIL("expected NotSolenoidal");
  } catch (const NotSolenoidal& e) {
    CHECK(e.violation > 1e-3);
  }

  // a region that crosses the nodal axes is rejected up front
  const GridSpec over_axis(-1.0, 1.0, -1.0, 1.0, 11, 11);
  CHECK_THROWS_AS(extract_potentials(build_state({Branch::Plus, Branch::Minus, 1, 1}, natural),
                                     natural, over_axis),
                  NodalRegion);
}

TEST_CASE("synthetic fields: uniform flow and no-fit diagnosis") {
  const GridSpec region(0.2, 2.0, 0.2, 2.0, 15, 15);
  const double c = 0.31;
  const PotentialPair uniform =
      extract_potentials([c](Vec2) { return Vec2{c, 0.0}; }, 1.0, region);
  const CornerPotential ucp = fit_corner_potential(uniform, region);
  CHECK(ucp.exponent == 1);
  CHECK(std::abs(ucp.amplitude - cplx{c}) < 1e-8);

  // W = e^z is irrotational and solenoidal but no single monomial
  const PotentialPair expf = extract_potentials(
      [](Vec2 pt) {
        return Vec2{std::exp(pt.x) * std::cos(pt.y), -std::exp(pt.x) * std::sin(pt.y)};
      },
      1.0, region);
  CHECK_THROWS_AS(fit_corner_potential(expf, region, 6, 1e-6), NoMonomialFit);
}

TEST_CASE("complex velocity of a corner potential") {
  const CornerPotential cp{cplx{0.5}, 2, 0.0};
  CHECK(complex_velocity(cp, cplx{1.0, 1.0}) == cplx{1.0, 1.0});

  const CornerPotential uniform{cplx{0.7, 0.1}, 1, 0.0};
  CHECK(complex_velocity(uniform, cplx{5.0, -3.0}) == cplx{0.7, 0.1});

  // dW/dz = vx - i vy against the (-,+) ground-state velocity at (0,1)
  const CornerPotential cm{cplx{-0.5}, 2, 0.0};
  const cplx dw = complex_velocity(cm, cplx{0.0, 1.0});
  const Vec2 v = velocity(build_state({Branch::Minus, Branch::Plus, 0, 0}, natural), natural,
                          {0.0, 1.0});
  CHECK(dw.real() == doctest::Approx(v.x));
  CHECK(-dw.imag() == doctest::Approx(v.y));
  CHECK(v.y == doctest::Approx(1.0));

  // and at a generic point for the (+,-) flow
  const Vec2 vp = velocity(build_state({Branch::Plus, Branch::Minus, 0, 0}, natural), natural,
                           {1.0, 1.0});
  const cplx dwp = complex_velocity(cp, cplx{1.0, 1.0});
  CHECK(dwp.real() == doctest::Approx(vp.x));
  CHECK(-dwp.imag() == doctest::Approx(vp.y));
}

TEST_CASE("flow samples") {
  const FlowField f(build_state({Branch::Plus, Branch::Minus, 1, 1}, natural), natural);
  const FlowSample ok = f.sample({1.0, 1.0}, 1e-12);
  CHECK_FALSE(ok.nodal);
  CHECK(ok.has_hyperbolic);
  CHECK(ok.ju == doctest::Approx(16.0 * std::sqrt(2.0)));
  CHECK(ok.vel.x == doctest::Approx(1.0));

  const FlowSample nodal = f.sample({0.0, 1.0}, 1e-12);
  CHECK(nodal.nodal);
  CHECK(nodal.j.x == doctest::Approx(0.0));

  const std::vector<Vec2> pts{{0.5, 0.5}, {1.0, 1.0}};
  CHECK(node_threshold(f.wavefunction(), pts) == doctest::Approx(1e-8 * 16.0));
}
