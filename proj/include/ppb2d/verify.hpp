#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppb2d/eigenstates.hpp"

namespace ppb::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Each check runs one invariant suite at the given physical parameters and
// is deterministic for a fixed seed. n_max caps the quantum-number ranges
// where a range is not pinned by the suite itself.

CheckResult check_spectrum(const PhysParams& p, int n_max, std::uint64_t seed);
CheckResult check_polynomials();
CheckResult check_degeneracy();
CheckResult check_angular_momentum(const PhysParams& p, std::uint64_t seed);
CheckResult check_irrotationality(const PhysParams& p, int n_max, std::uint64_t seed);
CheckResult check_solenoidality(const PhysParams& p, std::uint64_t seed);
CheckResult check_closed_form_currents(const PhysParams& p);
CheckResult check_potentials(const PhysParams& p);
CheckResult check_streamlines(const PhysParams& p);
CheckResult check_conjugation_parity(const PhysParams& p, int n_max, std::uint64_t seed);
CheckResult check_oracle_crosscheck(const PhysParams& p, int n_max, std::uint64_t seed);
CheckResult check_velocity_definition(const PhysParams& p, int n_max, std::uint64_t seed);
CheckResult check_coordinate_identities(std::uint64_t seed);
CheckResult check_hyperbolic_frame(const PhysParams& p);
CheckResult check_potential_gradient_order();

/// The full suite in a fixed order.
std::vector<CheckResult> run_all(const PhysParams& p, int n_max, std::uint64_t seed);

}  // namespace ppb::verify
