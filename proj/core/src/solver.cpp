// SPDX-License-Identifier: Apache-2.0
#include "simbeam/solver.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "simbeam/errors.hpp"
#include "simbeam/rng.hpp"
#include "simbeam/units.hpp"

namespace simbeam {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kMaxStepRatio = 100.0;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

bool small_increase(double before, double after, double tolerance) {
  if (before <= 0.0) return after <= 0.0;
  return (after - before) / before < tolerance;
}

}  // namespace

PhaseState random_phases(int layers, int atoms, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  Eigen::MatrixXd theta(layers, atoms);
  for (int l = 0; l < layers; ++l)
    for (int n = 0; n < atoms; ++n) theta(l, n) = uniform(rng);
  return PhaseState(std::move(theta));
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kIterationCap: return "iteration_cap";
  }
  return "unknown";
}

AscentStep armijo_ascent_step(const PhaseState& phases, const Eigen::MatrixXd& gradient,
                              double current_rate,
                              const std::function<double(const PhaseState&)>& evaluate,
                              const OptimizerParams& params) {
  return armijo_ascent_step(phases, gradient, current_rate, evaluate, params, params.armijo_init);
}

AscentStep armijo_ascent_step(const PhaseState& phases, const Eigen::MatrixXd& gradient,
                              double current_rate,
                              const std::function<double(const PhaseState&)>& evaluate,
                              const OptimizerParams& params, double initial_step) {
  AscentStep out{phases, 0.0, current_rate, 0};
  const double slope = gradient.squaredNorm();
  if (!(slope > 0.0) || !(initial_step > 0.0)) return out;

  double step = initial_step;
  for (int t = 0; t <= params.inner_max; ++t, step *= params.armijo_shrink) {
    PhaseState trial = phases.advanced(gradient, step);
    const double rate = evaluate(trial);
    if (rate >= current_rate + params.armijo_slope * step * slope) {
      out.phases = std::move(trial);
      out.step = step;
      out.sum_rate = rate;
      out.backtracks = t;
      return out;
    }
  }
  out.backtracks = params.inner_max;
  return out;
}

AscentResult gradient_ascent(const PhaseState& start, const PropagationStack& stack,
                             const ChannelSet& channels, const PowerAllocation& power,
                             const OptimizerParams& params) {
  const SumRateObjective objective(stack, channels, power);
  const std::function<double(const PhaseState&)> evaluate = std::cref(objective);

  AscentResult res;
  res.phases = start;
  res.sum_rate = objective(start);

  Eigen::MatrixXd previous_gradient;
  double previous_step = 0.0;
  for (int it = 0; it < params.inner_max; ++it) {
    const Eigen::MatrixXd g = sum_rate_gradient(res.phases, stack, channels, power);

    double initial = params.armijo_init;
    if (params.step_rule == StepRule::kBarzilaiBorwein && previous_step > 0.0) {
      // s = previous_step * previous_gradient; the wrap into [0, 2pi) does not change R.
      const double ss = previous_step * previous_step * previous_gradient.squaredNorm();
      const double sy = previous_step * (previous_gradient.array() * (g - previous_gradient).array()).sum();
      if (sy < 0.0) initial = std::min(-ss / sy, kMaxStepRatio * params.armijo_init);
    }

    AscentStep step = armijo_ascent_step(res.phases, g, res.sum_rate, evaluate, params, initial);
    previous_gradient = g;
    previous_step = step.step;
    if (step.step == 0.0) {
      res.converged = true;
      break;
    }
    const double before = res.sum_rate;
    res.phases = std::move(step.phases);
    res.sum_rate = step.sum_rate;
    res.rates.push_back(res.sum_rate);
    ++res.steps;
    if (small_increase(before, res.sum_rate, params.ao_tolerance)) {
      res.converged = true;
      break;
    }
  }
  return res;
}

SolveResult alternating_optimize(const PropagationStack& stack, const ChannelSet& channels,
                                 double budget_mw, const OptimizerParams& params,
                                 const PhaseState& initial) {
  check_dimensions(initial, stack);
  const auto started = Clock::now();

  SolveResult res;
  res.phases = initial;
  res.power = PowerAllocation::uniform(channels.K(), budget_mw);
  res.sum_rate = SumRateObjective(stack, channels, res.power)(res.phases);
  res.trace.rates.push_back(res.sum_rate);
  res.status = SolveStatus::kIterationCap;

  for (int round = 1; round <= params.outer_max; ++round) {
    const double round_start = res.sum_rate;

    auto t0 = Clock::now();
    AscentResult ascent = gradient_ascent(res.phases, stack, channels, res.power, params);
    res.trace.phase_ms += elapsed_ms(t0);
    res.phases = std::move(ascent.phases);
    res.sum_rate = ascent.sum_rate;
    res.trace.rates.insert(res.trace.rates.end(), ascent.rates.begin(), ascent.rates.end());
    res.trace.gradient_steps.push_back(ascent.steps);
    res.total_gradient_steps += ascent.steps;

    t0 = Clock::now();
    const EffectiveGains gains = effective_gains(channels, res.phases, stack);
    PowerIterationResult pw = damped_power_iteration(gains, channels.sigma2, budget_mw, params);
    const double pw_rate = sum_rate(sinr(gains, pw.power, channels.sigma2));
    const bool accept = pw_rate >= res.sum_rate;
    if (accept) {
      res.power = std::move(pw.power);
      res.sum_rate = pw_rate;
    }
    res.trace.power_ms += elapsed_ms(t0);
    res.trace.rates.push_back(res.sum_rate);
    res.trace.power_iterations.push_back(pw.iterations);
    res.trace.power_accepted.push_back(accept);

    res.trace.outer_rates.push_back(res.sum_rate);
    res.outer_iterations = round;
    if (small_increase(round_start, res.sum_rate, params.ao_tolerance)) {
      res.status = SolveStatus::kConverged;
      break;
    }
  }
  res.wall_ms = elapsed_ms(started);
  return res;
}

SolveResult alternating_optimize(const PropagationStack& stack, const ChannelSet& channels,
                                 const SimConfig& config, std::uint64_t init_seed) {
  return alternating_optimize(stack, channels, config.transmit_power_mw(), config.optimizer,
                              random_phases(stack.L(), stack.N(), init_seed));
}

}  // namespace simbeam
