// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

namespace simbeam {

/// How each line search picks its first trial step.
enum class StepRule {
  kFixed,            // always armijo_init
  kBarzilaiBorwein,  // |s|^2 / -<s, y> from the previous step, armijo_init when undefined
};

/// Knobs of the alternating solver. Defaults: stopping threshold 1e-6 and 100-iteration caps
/// for the outer loop, the water-filling loop and the line search.
struct OptimizerParams {
  double damping = 0.5;         // weight of the fresh water-filling solution, in (0, 1]
  double armijo_init = 1.0;     // first trial step
  double armijo_shrink = 0.5;   // backtracking factor, in (0, 1)
  double armijo_slope = 1e-4;   // sufficient-increase constant, > 0
  StepRule step_rule = StepRule::kBarzilaiBorwein;
  double ao_tolerance = 1e-6;   // fractional sum-rate increase that counts as converged
  int inner_max = 100;
  int outer_max = 100;
  int codebook_size = 0;        // 0 selects 10 * L * N

  bool operator==(const OptimizerParams&) const = default;
};

/// Everything needed to build one simulated system. Lengths in meters, powers in the units
/// named by the field; conversion to milliwatts happens through the accessors below.
struct SimConfig {
  // system
  int M = 4;
  int K = 4;
  int L = 7;
  double carrier_freq = 28e9;    // Hz
  double P_T = 10.0;             // dBm
  double noise_power = -104.0;   // dBm, per user

  // geometry
  int N_x = 7;
  int N_y = 7;
  double H_BS = 10.0;            // m
  double T_SIM = 5.0;            // wavelengths
  double d_UE = 10.0;            // m
  double element_spacing = 0.5;  // wavelengths
  std::optional<double> d_x;     // m; absent means element_spacing * lambda
  std::optional<double> d_y;

  // channel
  double C0 = -60.0;             // dB at 1 m
  double alpha = 3.5;
  double gain_bs = 5.0;          // dBi
  double gain_ue = 0.0;          // dBi

  OptimizerParams optimizer;

  // experiment
  std::uint64_t base_seed = 1;
  int trial_count = 100;

  int N() const { return N_x * N_y; }
  double wavelength() const;
  double meta_atom_dx() const;
  double meta_atom_dy() const;
  double transmit_power_mw() const;
  double noise_power_mw() const;
  int codebook_size() const;

  bool operator==(const SimConfig&) const = default;
};

/// Throws ConfigError naming the offending field when an invariant does not hold.
void validate(const SimConfig& config);

}  // namespace simbeam
