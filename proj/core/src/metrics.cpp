// SPDX-License-Identifier: Apache-2.0
#include "simbeam/metrics.hpp"

#include <cmath>

#include "simbeam/errors.hpp"

namespace simbeam {

EffectiveGains effective_gains(const ChannelSet& channels, const BeamformerMatrix& G,
                               const Eigen::MatrixXcd& W1) {
  if (G.G.rows() != channels.N() || G.G.cols() != W1.rows() || W1.cols() != channels.K())
    throw ContractError("effective_gains: inconsistent dimensions");
  return {channels.H.adjoint() * (G.G * W1)};
}

EffectiveGains effective_gains(const ChannelSet& channels, const PhaseState& phases,
                               const PropagationStack& stack) {
  if (stack.N() != channels.N() || stack.M() != channels.K())
    throw ContractError("effective_gains: channel set does not match the stack");
  return {channels.H.adjoint() * propagate(phases, stack, stack.W1())};
}

Eigen::VectorXd sinr(const EffectiveGains& gains, const PowerAllocation& power,
                     const Eigen::VectorXd& sigma2) {
  const int K = gains.K();
  if (gains.q.cols() != K || power.K() != K || sigma2.size() != K)
    throw ContractError("sinr: inconsistent dimensions");

  const Eigen::MatrixXd g2 = gains.q.cwiseAbs2();
  Eigen::VectorXd gamma(K);
  for (int k = 0; k < K; ++k) {
    double interference = 0.0;
    for (int j = 0; j < K; ++j)
      if (j != k) interference += g2(k, j) * power.p(j);
    gamma(k) = g2(k, k) * power.p(k) / (interference + sigma2(k));
  }
  return gamma;
}

double sum_rate(const Eigen::VectorXd& gammas) {
  double r = 0.0;
  for (Eigen::Index k = 0; k < gammas.size(); ++k) {
    if (gammas(k) < 0.0 || std::isnan(gammas(k)))
      throw ContractError("sum_rate: SINR must be nonnegative");
    r += std::log2(1.0 + gammas(k));
  }
  return r;
}

RateReport rate_report(const EffectiveGains& gains, const PowerAllocation& power,
                       const Eigen::VectorXd& sigma2) {
  RateReport rep;
  rep.gamma = sinr(gains, power, sigma2);
  rep.rate_per_user = rep.gamma.unaryExpr([](double g) { return std::log2(1.0 + g); });
  rep.sum_rate = sum_rate(rep.gamma);
  return rep;
}

}  // namespace simbeam
