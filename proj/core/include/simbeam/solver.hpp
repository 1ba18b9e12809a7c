// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "simbeam/config.hpp"
#include "simbeam/gradient.hpp"
#include "simbeam/power_allocation.hpp"

namespace simbeam {

/// Uniform draw of every phase in [0, 2pi).
PhaseState random_phases(int layers, int atoms, std::uint64_t seed);

struct AscentStep {
  PhaseState phases;
  double step = 0.0;  // 0 means no acceptable step was found
  double sum_rate = 0.0;
  int backtracks = 0;
};

/// Backtracking line search along `gradient`: tries step = armijo_init * shrink^t for
/// t = 0..inner_max and accepts the first with R(theta + step g) >= R(theta) + slope * step |g|^2.
/// On failure the input state comes back unchanged with step 0.
AscentStep armijo_ascent_step(const PhaseState& phases, const Eigen::MatrixXd& gradient,
                              double current_rate,
                              const std::function<double(const PhaseState&)>& evaluate,
                              const OptimizerParams& params);

/// Same search starting from `initial_step` instead of armijo_init.
AscentStep armijo_ascent_step(const PhaseState& phases, const Eigen::MatrixXd& gradient,
                              double current_rate,
                              const std::function<double(const PhaseState&)>& evaluate,
                              const OptimizerParams& params, double initial_step);

struct AscentResult {
  PhaseState phases;
  double sum_rate = 0.0;
  std::vector<double> rates;  // after each accepted step
  int steps = 0;
  bool converged = false;     // fractional increase fell below tolerance (or a stationary point)
};

/// Gradient ascent on the phases for fixed powers, stopping when the fractional sum-rate
/// increase of a step drops below ao_tolerance, the line search stalls, or after inner_max steps.
/// With StepRule::kBarzilaiBorwein the first trial step of every search after the first is
/// |s|^2 / -<s, y> (s the previous update, y the gradient change), capped at 100 * armijo_init.
AscentResult gradient_ascent(const PhaseState& start, const PropagationStack& stack,
                             const ChannelSet& channels, const PowerAllocation& power,
                             const OptimizerParams& params);

enum class SolveStatus { kConverged, kIterationCap };

std::string_view to_string(SolveStatus status);

/// Iteration-indexed record of a solve. `rates[0]` is the starting point and every later
/// entry follows one update (a gradient step or a power-allocation step).
struct SolveTrace {
  std::vector<double> rates;
  std::vector<double> outer_rates;       // after each outer round
  std::vector<int> gradient_steps;       // per outer round
  std::vector<int> power_iterations;     // per outer round
  std::vector<bool> power_accepted;      // per outer round
  double phase_ms = 0.0;
  double power_ms = 0.0;

  int updates() const { return static_cast<int>(rates.size()) - 1; }
};

struct SolveResult {
  PhaseState phases;
  PowerAllocation power;
  double sum_rate = 0.0;
  SolveTrace trace;
  SolveStatus status = SolveStatus::kConverged;
  int outer_iterations = 0;
  int total_gradient_steps = 0;
  double wall_ms = 0.0;
};

/// Alternates phase ascent (powers fixed) and damped water-filling (phases fixed), starting
/// from `initial` phases and uniform powers. Each round is one gradient_ascent call followed by
/// one damped_power_iteration call; a water-filling result that lowers the sum rate is
/// discarded. Stops when a whole round improves R by less than ao_tolerance (fractional) or
/// after outer_max rounds.
SolveResult alternating_optimize(const PropagationStack& stack, const ChannelSet& channels,
                                 double budget_mw, const OptimizerParams& params,
                                 const PhaseState& initial);

/// Convenience overload drawing the initial phases from `init_seed`.
SolveResult alternating_optimize(const PropagationStack& stack, const ChannelSet& channels,
                                 const SimConfig& config, std::uint64_t init_seed);

}  // namespace simbeam
