// SPDX-License-Identifier: Apache-2.0
#include "simbeam/baselines.hpp"

#include <chrono>

#include "simbeam/errors.hpp"
#include "simbeam/rng.hpp"

namespace simbeam {

SolveResult uniform_power_scheme(const PropagationStack& stack, const ChannelSet& channels,
                                 double budget_mw, const OptimizerParams& params,
                                 const PhaseState& initial) {
  const auto started = std::chrono::steady_clock::now();
  SolveResult res;
  res.power = PowerAllocation::uniform(channels.K(), budget_mw);
  res.trace.rates.push_back(SumRateObjective(stack, channels, res.power)(initial));

  AscentResult ascent = gradient_ascent(initial, stack, channels, res.power, params);
  res.phases = std::move(ascent.phases);
  res.sum_rate = ascent.sum_rate;
  res.trace.rates.insert(res.trace.rates.end(), ascent.rates.begin(), ascent.rates.end());
  res.trace.gradient_steps.push_back(ascent.steps);
  res.trace.outer_rates.push_back(res.sum_rate);
  res.total_gradient_steps = ascent.steps;
  res.outer_iterations = 1;
  res.status = ascent.converged ? SolveStatus::kConverged : SolveStatus::kIterationCap;
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  res.trace.phase_ms = res.wall_ms;
  return res;
}

PhaseState codebook_candidate(const PropagationStack& stack, const CodebookSpec& spec, int index) {
  return random_phases(stack.L(), stack.N(),
                       derive_seed(spec.seed, Stream::kCodebook, static_cast<std::uint64_t>(index)));
}

CodebookResult codebook_scheme(const PropagationStack& stack, const ChannelSet& channels,
                               double budget_mw, const OptimizerParams& params,
                               const CodebookSpec& spec) {
  if (spec.size < 1) throw ContractError("codebook_scheme: codebook size must be at least 1");
  const auto started = std::chrono::steady_clock::now();

  CodebookResult out;
  out.candidate_rates.reserve(static_cast<std::size_t>(spec.size));
  bool best_converged = true;
  for (int i = 0; i < spec.size; ++i) {
    PhaseState phases = codebook_candidate(stack, spec, i);
    const EffectiveGains gains = effective_gains(channels, phases, stack);
    PowerIterationResult pw = damped_power_iteration(gains, channels.sigma2, budget_mw, params);
    const double rate = sum_rate(sinr(gains, pw.power, channels.sigma2));
    out.candidate_rates.push_back(rate);
    if (i == 0 || rate > out.best.sum_rate) {
      out.best_index = i;
      out.best.phases = std::move(phases);
      out.best.power = std::move(pw.power);
      out.best.sum_rate = rate;
      best_converged = pw.converged;
    }
  }

  out.best.trace.rates = {out.best.sum_rate};
  out.best.trace.outer_rates = {out.best.sum_rate};
  out.best.status = best_converged ? SolveStatus::kConverged : SolveStatus::kIterationCap;
  out.best.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  out.best.trace.power_ms = out.best.wall_ms;
  return out;
}

}  // namespace simbeam
