// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "simbeam/metrics.hpp"

namespace simbeam {

/// Sum rate as a function of the phases, with powers and channels held fixed.
class SumRateObjective {
 public:
  SumRateObjective(const PropagationStack& stack, const ChannelSet& channels,
                   const PowerAllocation& power);

  double operator()(const PhaseState& phases) const;

  const PropagationStack& stack() const { return *stack_; }
  const ChannelSet& channels() const { return *channels_; }
  const PowerAllocation& power() const { return *power_; }

 private:
  const PropagationStack* stack_;
  const ChannelSet* channels_;
  const PowerAllocation* power_;
};

/// Analytic partial derivatives dR/dtheta for every (layer, atom), returned as an L x N matrix.
///
/// With c = U^l w_k' and r = h_k^H V^l, the cross gain q_kk' = sum_n r_n e^{j theta_n} c_n, so
/// d|q_kk'|^2 / d theta_n = 2 Im[conj(r_n e^{j theta_n} c_n) q_kk'] = 2 eta_kk'(n) and
///
///   dR/dtheta_n = 2 log2(e) sum_k delta_k (p_k eta_kk - gamma_k sum_{k' != k} p_k' eta_kk'),
///   delta_k = 1 / (sum_k' |q_kk'|^2 p_k' + sigma_k^2).
///
/// The vectors U^l W1 and H^H V^l are carried forward/backward through the stack instead of
/// forming U^l and V^l, so one call costs O(L N^2 K + L N K^2).
Eigen::MatrixXd sum_rate_gradient(const PhaseState& phases, const PropagationStack& stack,
                                  const ChannelSet& channels, const PowerAllocation& power);

}  // namespace simbeam
