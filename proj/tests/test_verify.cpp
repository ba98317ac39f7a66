#include <doctest.h>

#include "ppb2d/verify.hpp"

using namespace ppb;

TEST_CASE("verification suite passes at reduced range") {
  const auto results = verify::run_all(PhysParams{}, 3, 42);
  CHECK(results.size() == 15);
  for (const auto& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("verification suite is seed-deterministic") {
  const auto a = verify::check_spectrum(PhysParams{}, 2, 7);
  const auto b = verify::check_spectrum(PhysParams{}, 2, 7);
  CHECK(a.pass == b.pass);
  CHECK(a.detail == b.detail);
}
