// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "simbeam/experiment.hpp"

namespace simbeam::testing {

/// Paper-default config shrunk to the given size.
inline SimConfig small_config(int side, int layers, int users, std::uint64_t seed = 7) {
  SimConfig c;
  c.N_x = c.N_y = side;
  c.L = layers;
  c.K = c.M = users;
  c.base_seed = seed;
  return c;
}

struct Instance {
  SimSystem system;
  ChannelSet channels;
  PhaseState phases;
};

inline Instance make_instance(int side, int layers, int users, std::uint64_t seed) {
  SimSystem sys = build_system(small_config(side, layers, users, seed));
  ChannelSet ch = trial_channels(sys, 0);
  PhaseState th = random_phases(layers, side * side, seed * 31 + 5);
  return {std::move(sys), std::move(ch), std::move(th)};
}

}  // namespace simbeam::testing
