// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "simbeam/config.hpp"
#include "simbeam/metrics.hpp"

namespace simbeam {

/// One simultaneous water-filling update. Interference is evaluated at `previous`, every user
/// receives (level - (interference + noise) / |q_kk|^2)^+, and the level is located by
/// bisection so the powers sum to `budget_mw`. Users with q_kk = 0 get zero power.
PowerAllocation water_fill_update(const EffectiveGains& gains, const PowerAllocation& previous,
                                  const Eigen::VectorXd& sigma2, double budget_mw);

struct PowerIterationResult {
  PowerAllocation power;
  int iterations = 0;
  bool converged = false;
};

/// Damped iterative water-filling: p <- (1 - damping) p + damping * water_fill_update(p),
/// starting from `start` (uniform when omitted) until |dp|_1 / budget < ao_tolerance or
/// inner_max updates. Without convergence the best iterate by sum rate is returned.
PowerIterationResult damped_power_iteration(const EffectiveGains& gains,
                                            const Eigen::VectorXd& sigma2, double budget_mw,
                                            const OptimizerParams& params);
PowerIterationResult damped_power_iteration(const EffectiveGains& gains,
                                            const Eigen::VectorXd& sigma2, double budget_mw,
                                            const OptimizerParams& params,
                                            const PowerAllocation& start);

}  // namespace simbeam
