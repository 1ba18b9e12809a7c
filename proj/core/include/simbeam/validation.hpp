// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace simbeam {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the model and solver invariants on small seeded instances (N = 16, L = 3, K = 2):
/// recomposition, unit modulus, finite-difference gradient agreement, the null global-phase
/// direction, budget exactness, monotone AO traces, covariance reconstruction and SINR scale
/// invariance.
std::vector<CheckOutcome> run_property_suite(std::uint64_t seed, int instances = 5);

}  // namespace simbeam
