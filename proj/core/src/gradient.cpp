// SPDX-License-Identifier: Apache-2.0
#include "simbeam/gradient.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "simbeam/errors.hpp"

namespace simbeam {

SumRateObjective::SumRateObjective(const PropagationStack& stack, const ChannelSet& channels,
                                   const PowerAllocation& power)
    : stack_(&stack), channels_(&channels), power_(&power) {
  if (channels.N() != stack.N() || channels.K() != stack.M() || power.K() != channels.K())
    throw ContractError("SumRateObjective: inconsistent dimensions");
}

double SumRateObjective::operator()(const PhaseState& phases) const {
  return sum_rate(sinr(effective_gains(*channels_, phases, *stack_), *power_, channels_->sigma2));
}

Eigen::MatrixXd sum_rate_gradient(const PhaseState& phases, const PropagationStack& stack,
                                  const ChannelSet& channels, const PowerAllocation& power) {
  check_dimensions(phases, stack);
  if (channels.N() != stack.N() || channels.K() != stack.M() || power.K() != channels.K())
    throw ContractError("sum_rate_gradient: inconsistent dimensions");

  const int L = stack.L();
  const int N = stack.N();
  const int K = channels.K();

  std::vector<Eigen::VectorXcd> phasor(static_cast<std::size_t>(L));
  for (int l = 1; l <= L; ++l) phasor[static_cast<std::size_t>(l - 1)] = phases.phasors(l);
  auto phi = [&](int l) -> const Eigen::VectorXcd& { return phasor[static_cast<std::size_t>(l - 1)]; };

  // forward[l-1] = U^l W1 (N x K), backward[l-1] = H^H V^l (K x N)
  std::vector<Eigen::MatrixXcd> forward(static_cast<std::size_t>(L));
  std::vector<Eigen::MatrixXcd> backward(static_cast<std::size_t>(L));
  forward[0] = stack.W1();
  for (int l = 2; l <= L; ++l)
    forward[static_cast<std::size_t>(l - 1)] =
        stack.W(l) * (phi(l - 1).asDiagonal() * forward[static_cast<std::size_t>(l - 2)]);
  backward[static_cast<std::size_t>(L - 1)] = channels.H.adjoint();
  for (int l = L - 1; l >= 1; --l)
    backward[static_cast<std::size_t>(l - 1)] =
        (backward[static_cast<std::size_t>(l)] * phi(l + 1).asDiagonal()) * stack.W(l + 1);

  const Eigen::MatrixXcd q =
      backward[static_cast<std::size_t>(L - 1)] * (phi(L).asDiagonal() * forward[static_cast<std::size_t>(L - 1)]);
  const Eigen::MatrixXd g2 = q.cwiseAbs2();
  const Eigen::VectorXd& p = power.p;

  Eigen::VectorXd delta(K);
  Eigen::VectorXd gamma(K);
  for (int k = 0; k < K; ++k) {
    double interference = 0.0;
    for (int j = 0; j < K; ++j)
      if (j != k) interference += g2(k, j) * p(j);
    const double signal = g2(k, k) * p(k);
    delta(k) = 1.0 / (signal + interference + channels.sigma2(k));
    gamma(k) = signal / (interference + channels.sigma2(k));
  }

  // weight[k, k'] multiplies eta_kk' in the sum: delta_k p_k for k' = k, -delta_k gamma_k p_k' otherwise.
  Eigen::MatrixXd weight(K, K);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j)
      weight(k, j) = (j == k) ? delta(k) * p(k) : -delta(k) * gamma(k) * p(j);

  const double scale = 2.0 * std::numbers::log2e;
  Eigen::MatrixXd grad(L, N);
  for (int l = 1; l <= L; ++l) {
    const auto& c = forward[static_cast<std::size_t>(l - 1)];
    const auto& r = backward[static_cast<std::size_t>(l - 1)];
    const auto& ph = phi(l);
    for (int n = 0; n < N; ++n) {
      double acc = 0.0;
      for (int k = 0; k < K; ++k) {
        const cd rk = r(k, n) * ph(n);
        for (int j = 0; j < K; ++j) {
          if (weight(k, j) == 0.0) continue;
          const double eta = std::imag(std::conj(rk * c(n, j)) * q(k, j));
          acc += weight(k, j) * eta;
        }
      }
      grad(l - 1, n) = scale * acc;
    }
  }
  return grad;
}

}  // namespace simbeam
