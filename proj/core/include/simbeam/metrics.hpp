// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "simbeam/beamformer.hpp"
#include "simbeam/channel.hpp"

namespace simbeam {

/// Transmit powers per user, milliwatts.
struct PowerAllocation {
  Eigen::VectorXd p;

  static PowerAllocation uniform(int K, double total_mw) {
    return {Eigen::VectorXd::Constant(K, total_mw / K)};
  }
  double total() const { return p.sum(); }
  int K() const { return static_cast<int>(p.size()); }
};

/// q[k, k'] = h_k^H G w^1_{k'}: what user k receives from stream k' per unit amplitude.
struct EffectiveGains {
  Eigen::MatrixXcd q;

  int K() const { return static_cast<int>(q.rows()); }
};

EffectiveGains effective_gains(const ChannelSet& channels, const BeamformerMatrix& G,
                               const Eigen::MatrixXcd& W1);

/// Same quantity, computed by pushing the antenna columns through the stack instead of
/// forming G (O(L N^2 K) rather than O(L N^3)).
EffectiveGains effective_gains(const ChannelSet& channels, const PhaseState& phases,
                               const PropagationStack& stack);

/// gamma_k = |q_kk|^2 p_k / (sum_{k' != k} |q_kk'|^2 p_k' + sigma_k^2).
Eigen::VectorXd sinr(const EffectiveGains& gains, const PowerAllocation& power,
                     const Eigen::VectorXd& sigma2);

/// Sum of log2(1 + gamma_k) in bits/s/Hz. Throws ContractError on a negative SINR.
double sum_rate(const Eigen::VectorXd& gammas);

struct RateReport {
  Eigen::VectorXd gamma;
  Eigen::VectorXd rate_per_user;
  double sum_rate = 0.0;
};

RateReport rate_report(const EffectiveGains& gains, const PowerAllocation& power,
                       const Eigen::VectorXd& sigma2);

}  // namespace simbeam
