#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ppb2d/eigenstates.hpp"

using namespace ppb;

namespace {
const PhysParams natural{};

bool close(cplx a, cplx b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(b));
}
}  // namespace

TEST_CASE("PhysParams consistency and validation") {
  const PhysParams p(2.0, 0.5, 1.5, -3.0);
  CHECK(std::abs(p.beta() * p.beta() * p.hbar / p.mass - p.gamma) <= 1e-12 * p.gamma);
  CHECK_THROWS_AS(PhysParams(0.0, 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PhysParams(1.0, -1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PhysParams(1.0, 1.0, 0.0, 5.0), std::invalid_argument);
}

TEST_CASE("state label type mapping") {
  CHECK(StateLabel{Branch::Plus, Branch::Plus, 0, 0}.type() == 1);
  CHECK(StateLabel{Branch::Plus, Branch::Minus, 0, 0}.type() == 2);
  CHECK(StateLabel{Branch::Minus, Branch::Plus, 0, 0}.type() == 3);
  CHECK(StateLabel{Branch::Minus, Branch::Minus, 0, 0}.type() == 4);
  for (int t = 1; t <= 4; ++t) CHECK(StateLabel::from_type(t, 2, 5).type() == t);
  CHECK_THROWS_AS(StateLabel::from_type(5, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(StateLabel::from_type(1, -1, 0), std::invalid_argument);
}

TEST_CASE("energies of the four types") {
  CHECK(energy({Branch::Plus, Branch::Plus, 1, 0}, natural) == cplx{0.0, -2.0});
  PhysParams shifted(1.0, 1.0, 1.0, 5.0);
  CHECK(energy({Branch::Plus, Branch::Minus, 3, 3}, shifted) == cplx{5.0, 0.0});
  CHECK(energy({Branch::Minus, Branch::Minus, 0, 0}, natural) == cplx{0.0, 1.0});
  CHECK(energy({Branch::Minus, Branch::Plus, 1, 4}, natural) == cplx{0.0, -3.0});
  // degenerate pair of types 1 and 4 at nx+ny = 1
  CHECK(energy({Branch::Plus, Branch::Plus, 1, 0}, natural) ==
        energy({Branch::Plus, Branch::Plus, 0, 1}, natural));
}

TEST_CASE("build_state reproduces the printed eigenfunctions") {
  // type 2 ground state: pure quadratic phase
  const Wavefunction w00 = build_state({Branch::Plus, Branch::Minus, 0, 0}, natural);
  CHECK(w00.poly.eval(0.3, -1.7) == cplx{1.0});
  CHECK(close(w00(1.0, 2.0), std::polar(1.0, 0.5 * (1.0 - 4.0))));

  const Wavefunction w11 = build_state({Branch::Plus, Branch::Minus, 1, 1}, natural);
  CHECK(close(w11(1.0, 1.0), cplx{4.0}));

  const Wavefunction w20 = build_state({Branch::Plus, Branch::Plus, 2, 0}, natural);
  CHECK(close(w20(1.0, 0.0), cplx{4.0, -2.0} * std::polar(1.0, 0.5)));

  // stationary n = 2 state, frozen closed form in both coordinate systems
  const Wavefunction w22 = build_state({Branch::Plus, Branch::Minus, 2, 2}, natural);
  for (const Vec2 pt : {Vec2{0.7, 1.3}, Vec2{-1.1, 0.4}, Vec2{2.0, -0.6}}) {
    const double x = pt.x, y = pt.y;
    const cplx expected = 4.0 * (4.0 * x * x * y * y + 1.0 + 2.0 * I * (x * x - y * y)) *
                          std::polar(1.0, 0.5 * (x * x - y * y));
    CHECK(close(w22(x, y), expected));
    const HyperbolicPoint h = to_hyperbolic(x, y);
    const cplx expected_uv =
        4.0 * (h.v * h.v + 1.0 + 2.0 * I * h.u) * std::polar(1.0, 0.5 * h.u);
    CHECK(close(w22(x, y), expected_uv));
  }

  // beta wiring: non-natural parameters
  const PhysParams p2(2.0, 0.5, 1.5, -3.0);
  const Wavefunction v11 = build_state({Branch::Plus, Branch::Minus, 1, 1}, p2);
  const double b = p2.beta();
  const double x = 0.8, y = -0.5;
  CHECK(close(v11(x, y), 4.0 * b * b * x * y *
                             std::polar(1.0, 0.5 * b * b * (x * x - y * y))));
}

TEST_CASE("conjugation flips both branches and conjugates values") {
  const StateLabel l{Branch::Plus, Branch::Minus, 2, 1};
  const StateLabel lc = conjugate_state(l);
  CHECK(lc.bx == Branch::Minus);
  CHECK(lc.by == Branch::Plus);
  CHECK(lc.nx == 2);
  CHECK(lc.ny == 1);
  const Wavefunction w = build_state(l, natural);
  const Wavefunction wc = build_state(lc, natural);
  for (const Vec2 pt : {Vec2{0.5, 0.5}, Vec2{-1.2, 2.1}, Vec2{2.7, -0.3}}) {
    CHECK(close(wc(pt), std::conj(w(pt))));
  }
}

TEST_CASE("time factor") {
  CHECK(std::abs(std::abs(time_factor({Branch::Plus, Branch::Minus, 4, 4}, natural, 7.0)) - 1.0) <
        1e-14);
  CHECK(std::abs(std::abs(time_factor({Branch::Plus, Branch::Plus, 0, 0}, natural, 1.0)) -
                 std::exp(-1.0)) < 1e-14);
  CHECK(time_factor({Branch::Minus, Branch::Plus, 3, 1}, natural, 0.0) == cplx{1.0});
}

TEST_CASE("flow classification") {
  CHECK(classify_flow({Branch::Plus, Branch::Plus, 3, 1}) == FlowClass::Diverging);
  CHECK(classify_flow({Branch::Minus, Branch::Minus, 0, 0}) == FlowClass::Converging);
  CHECK(classify_flow({Branch::Plus, Branch::Minus, 2, 2}) == FlowClass::Stationary);
  CHECK(classify_flow({Branch::Minus, Branch::Plus, 2, 2}) == FlowClass::Stationary);
  CHECK(classify_flow({Branch::Plus, Branch::Minus, 2, 0}) == FlowClass::CornerYtoX);
  CHECK(classify_flow({Branch::Minus, Branch::Plus, 0, 1}) == FlowClass::CornerXtoY);
}

TEST_CASE("degeneracy") {
  CHECK(degeneracy(1, 2).count == 3);
  CHECK(degeneracy(4, 0).count == 1);
  CHECK(degeneracy(2, 3).infinite);
  CHECK(degeneracy(3, 0).infinite);
  CHECK_THROWS_AS(degeneracy(1, -1), std::invalid_argument);
  CHECK_THROWS_AS(degeneracy(0, 1), std::invalid_argument);
}

TEST_CASE("superpositions in polar form") {
  using terms_t = std::vector<std::pair<cplx, StateLabel>>;
  const StateLabel s10{Branch::Plus, Branch::Plus, 1, 0};
  const StateLabel s01{Branch::Plus, Branch::Plus, 0, 1};
  const StateLabel s20{Branch::Plus, Branch::Plus, 2, 0};
  const StateLabel s11{Branch::Plus, Branch::Plus, 1, 1};
  const StateLabel s02{Branch::Plus, Branch::Plus, 0, 2};

  const Superposition plus = superpose(terms_t{{cplx{1.0}, s10}, {I, s01}}, natural);
  CHECK(plus.is_energy_eigenstate);
  for (const Vec2 pt : {Vec2{0.6, 1.1}, Vec2{-1.4, 0.2}, Vec2{0.9, -2.0}}) {
    const Polar pol = to_polar(pt.x, pt.y);
    const cplx expected = 2.0 * pol.r * std::polar(1.0, 0.5 * pol.r * pol.r) *
                          std::polar(1.0, pol.phi);
    CHECK(close(plus.w(pt), expected));
  }

  const Superposition two = superpose(
      terms_t{{cplx{1.0}, s20}, {2.0 * I, s11}, {cplx{-1.0}, s02}}, natural);
  for (const Vec2 pt : {Vec2{1.0, 0.5}, Vec2{-0.8, 1.2}}) {
    const Polar pol = to_polar(pt.x, pt.y);
    const cplx expected = 4.0 * pol.r * pol.r * std::polar(1.0, 0.5 * pol.r * pol.r) *
                          std::polar(1.0, 2.0 * pol.phi);
    CHECK(close(two.w(pt), expected));
  }

  // identity superposition
  const Superposition ident = superpose(terms_t{{cplx{1.0}, s20}}, natural);
  CHECK(close(ident.w(0.4, 0.9), build_state(s20, natural)(0.4, 0.9)));

  // mixing energies is allowed but flagged
  const Superposition mixed =
      superpose(terms_t{{cplx{1.0}, s10}, {cplx{1.0}, StateLabel{Branch::Plus, Branch::Plus, 0, 0}}},
                natural);
  CHECK_FALSE(mixed.is_energy_eigenstate);

  // mixing branch pairs leaves the representation
  CHECK_THROWS_AS(
      superpose(terms_t{{cplx{1.0}, s10}, {cplx{1.0}, StateLabel{Branch::Plus, Branch::Minus, 1, 0}}},
                natural),
      RepresentationMismatch);
}

TEST_CASE("angular momentum operator") {
  const Wavefunction w00 = build_state({Branch::Plus, Branch::Plus, 0, 0}, natural);
  CHECK(std::abs(apply_lz(w00, natural, {1.3, -0.4})) < 1e-14);

  using terms_t = std::vector<std::pair<cplx, StateLabel>>;
  const Superposition plus = superpose(
      terms_t{{cplx{1.0}, StateLabel{Branch::Plus, Branch::Plus, 1, 0}},
              {I, StateLabel{Branch::Plus, Branch::Plus, 0, 1}}},
      natural);
  for (const Vec2 pt : {Vec2{0.7, 0.2}, Vec2{-1.0, 1.5}}) {
    CHECK(close(apply_lz(plus.w, natural, pt), natural.hbar * plus.w(pt)));
  }

  const Superposition two = superpose(
      terms_t{{cplx{1.0}, StateLabel{Branch::Plus, Branch::Plus, 2, 0}},
              {2.0 * I, StateLabel{Branch::Plus, Branch::Plus, 1, 1}},
              {cplx{-1.0}, StateLabel{Branch::Plus, Branch::Plus, 0, 2}}},
      natural);
  const Vec2 pt{1.0, 0.5};
  CHECK(close(apply_lz(two.w, natural, pt), 2.0 * natural.hbar * two.w(pt)));
}

TEST_CASE("lz_eigencheck") {
  std::vector<Vec2> pts;
  for (int k = 0; k < 24; ++k) {
    const double ang = 0.26 * k + 0.1;
    const double r = 0.5 + 0.07 * k;
    pts.push_back({r * std::cos(ang), r * std::sin(ang)});
  }
  using terms_t = std::vector<std::pair<cplx, StateLabel>>;
  const Superposition minus = superpose(
      terms_t{{cplx{1.0}, StateLabel{Branch::Plus, Branch::Plus, 1, 0}},
              {-I, StateLabel{Branch::Plus, Branch::Plus, 0, 1}}},
      natural);
  const LzEstimate em = lz_eigencheck(minus.w, natural, pts);
  CHECK(std::abs(em.estimate - cplx{-natural.hbar}) < 1e-8 * natural.hbar);
  CHECK(em.max_deviation < 1e-8 * natural.hbar);

  const Superposition zero = superpose(
      terms_t{{cplx{1.0}, StateLabel{Branch::Plus, Branch::Plus, 2, 0}},
              {cplx{1.0}, StateLabel{Branch::Plus, Branch::Plus, 0, 2}}},
      natural);
  const LzEstimate e0 = lz_eigencheck(zero.w, natural, pts);
  CHECK(std::abs(e0.estimate) < 1e-8 * natural.hbar);

  const Wavefunction basis = build_state({Branch::Plus, Branch::Plus, 1, 0}, natural);
  CHECK(lz_eigencheck(basis, natural, pts).max_deviation > 1e-3 * natural.hbar);

  // sample on a nodal line of the (1,1) state
  const Wavefunction w11 = build_state({Branch::Plus, Branch::Plus, 1, 1}, natural);
  std::vector<Vec2> bad = pts;
  bad.push_back({0.0, 1.0});
  CHECK_THROWS_AS(lz_eigencheck(w11, natural, bad), NodalRegion);
}

TEST_CASE("schrodinger residual") {
  for (const PhysParams& p : {PhysParams{}, PhysParams(2.0, 1.0, 1.0, 0.0),
                              PhysParams(1.0, 1.0, 0.5, 0.0)}) {
    for (int type = 1; type <= 4; ++type) {
      for (int nx : {0, 3, 8}) {
        for (int ny : {0, 2, 8}) {
          const StateLabel l = StateLabel::from_type(type, nx, ny);
          const Wavefunction w = build_state(l, p);
          const Wavefunction hw = hamiltonian_apply(w, p);
          const cplx e = energy(l, p);
          for (const Vec2 pt : {Vec2{0.4, -2.2}, Vec2{-1.9, 1.0}, Vec2{2.8, 2.8}}) {
            // eps-amplification allowance for real-energy states, where
            // 1 + |H w| gives no scale (see the verify suite)
            const double r2 = pt.x * pt.x + pt.y * pt.y;
            const double terms = (std::abs(p.v0) + 0.5 * p.mass * p.gamma * p.gamma * r2 +
                                  (nx + ny + 1) * p.hbar * p.gamma) *
                                 std::abs(w(pt));
            const double tol = 1e-10 * (1.0 + std::abs(hw(pt))) + 1e-12 * terms;
            CHECK(std::abs(schrodinger_residual(w, e, p, pt)) <= tol);
          }
        }
      }
    }
  }

  // shifting the energy shifts the residual by -dE * w
  const StateLabel l{Branch::Plus, Branch::Plus, 1, 2};
  const Wavefunction w = build_state(l, natural);
  const Vec2 pt{0.9, 1.4};
  const cplx res = schrodinger_residual(w, energy(l, natural) + 1.0, natural, pt);
  CHECK(close(res, -w(pt)));

  // the L = 1 superposition shares the energy V0 - 2 i hbar gamma
  using terms_t = std::vector<std::pair<cplx, StateLabel>>;
  const Superposition plus = superpose(
      terms_t{{cplx{1.0}, StateLabel{Branch::Plus, Branch::Plus, 1, 0}},
              {I, StateLabel{Branch::Plus, Branch::Plus, 0, 1}}},
      natural);
  const cplx e{natural.v0, -2.0 * natural.hbar * natural.gamma};
  for (const Vec2 q : {Vec2{1.2, -0.3}, Vec2{-0.5, 0.8}}) {
    const double scale = 1.0 + std::abs(hamiltonian_apply(plus.w, natural)(q));
    CHECK(std::abs(schrodinger_residual(plus.w, e, natural, q)) <= 1e-10 * scale);
  }
}

TEST_CASE("coordinate transforms") {
  const HyperbolicPoint h11 = to_hyperbolic(1.0, 1.0);
  CHECK(h11.u == 0.0);
  CHECK(h11.v == 2.0);
  const Polar p10 = to_polar(1.0, 0.0);
  CHECK(p10.r == 1.0);
  CHECK(p10.phi == 0.0);
  const HyperbolicPoint h21 = to_hyperbolic(2.0, 1.0);
  CHECK(h21.u == 3.0);
  CHECK(h21.v == 4.0);
  CHECK(h21.u * h21.u + h21.v * h21.v == doctest::Approx(25.0));

  CHECK(to_polar(0.0, 0.0).phi == 0.0);
  CHECK(to_polar(-2.0, 0.0).phi == doctest::Approx(std::numbers::pi));
  CHECK(to_polar(0.0, -1.0).phi == doctest::Approx(-std::numbers::pi / 2));

  // (u,v) = (0,2) is the image of (x,y) = (1,1): h = 2 sqrt(x^2+y^2)
  const HyperbolicPoint huv = to_hyperbolic(1.0, 1.0);
  const ScaleFactors s02 = scale_factors(huv.u, huv.v);
  CHECK(s02.hu == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(s02.hv == s02.hu);
  CHECK(scale_factors(1.0, 0.0).hu == doctest::Approx(2.0));
  CHECK(scale_factors(3.0, 4.0).hu == doctest::Approx(2.0 * std::sqrt(5.0)));
  CHECK_THROWS_AS(scale_factors(0.0, 0.0), OriginSingular);
}
