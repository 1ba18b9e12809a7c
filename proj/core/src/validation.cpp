// SPDX-License-Identifier: Apache-2.0
#include "simbeam/validation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "simbeam/experiment.hpp"
#include "simbeam/rng.hpp"

namespace simbeam {

namespace {

SimConfig small_config(std::uint64_t seed) {
  SimConfig c;
  c.K = c.M = 2;
  c.L = 3;
  c.N_x = c.N_y = 4;
  c.base_seed = seed;
  return c;
}

double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

std::vector<CheckOutcome> run_property_suite(std::uint64_t seed, int instances) {
  double recomposition = 0.0;
  double modulus = 0.0;
  double fd_gap = 0.0;
  double layer_sum = 0.0;
  double budget = 0.0;
  double monotone = 0.0;
  double reconstruction = 0.0;
  double scale = 0.0;

  for (int i = 0; i < instances; ++i) {
    const SimSystem sys = build_system(small_config(seed + static_cast<std::uint64_t>(i)));
    const ChannelSet ch = trial_channels(sys, i);
    const PhaseState theta = random_phases(sys.config.L, sys.config.N(), derive_seed(seed, {0x76, static_cast<std::uint64_t>(i)}));

    const BeamformerMatrix G = compose_beamformer(theta, sys.stack);
    for (int l = 1; l <= sys.config.L; ++l) {
      const auto pp = partial_products(theta, sys.stack, l);
      const Eigen::MatrixXcd rebuilt = pp.V * theta.phasors(l).asDiagonal() * pp.U;
      recomposition = std::max(recomposition, (rebuilt - G.G).norm() / G.G.norm());
      modulus = std::max(modulus, (theta.phasors(l).cwiseAbs().array() - 1.0).abs().maxCoeff());
    }

    const double budget_mw = sys.config.transmit_power_mw();
    const PowerAllocation p = PowerAllocation::uniform(2, budget_mw);
    const Eigen::MatrixXd g = sum_rate_gradient(theta, sys.stack, ch, p);
    const SumRateObjective R(sys.stack, ch, p);
    const double h = 1e-6;
    for (int l = 0; l < theta.L(); ++l) {
      for (int n = 0; n < theta.N(); ++n) {
        Eigen::MatrixXd plus = theta.theta();
        Eigen::MatrixXd minus = theta.theta();
        plus(l, n) += h;
        minus(l, n) -= h;
        const double fd = (R(PhaseState(plus)) - R(PhaseState(minus))) / (2.0 * h);
        // Tiny partials are compared on the scale of the whole gradient.
        fd_gap = std::max(fd_gap, std::abs(fd - g(l, n)) / std::max(std::abs(g(l, n)), 1e-3 * g.norm()));
      }
      layer_sum = std::max(layer_sum, std::abs(g.row(l).sum()) / g.norm());
    }

    const EffectiveGains q = effective_gains(ch, theta, sys.stack);
    const PowerIterationResult pw = damped_power_iteration(q, ch.sigma2, budget_mw, sys.config.optimizer);
    budget = std::max(budget, std::abs(pw.power.total() - budget_mw));

    const SolveResult ao = alternating_optimize(sys.stack, ch, budget_mw, sys.config.optimizer, theta);
    for (std::size_t t = 1; t < ao.trace.rates.size(); ++t)
      monotone = std::max(monotone, ao.trace.rates[t - 1] - ao.trace.rates[t]);

    const Eigen::MatrixXcd FFh = sys.covariance.F * sys.covariance.F.adjoint();
    reconstruction = std::max(reconstruction, (FFh.real() - sys.covariance.R).norm() / sys.covariance.R.norm());

    ChannelSet scaled = ch;
    scaled.sigma2 *= 37.0;
    const PowerAllocation p37{p.p * 37.0};
    const Eigen::VectorXd g1 = sinr(q, p, ch.sigma2);
    const Eigen::VectorXd g2 = sinr(q, p37, scaled.sigma2);
    for (int k = 0; k < g1.size(); ++k) scale = std::max(scale, relative_gap(g1(k), g2(k)));
  }

  return {
      {"recomposition V*Phi*U == G", recomposition < 1e-12, fmt::format("max rel err {:.3e}", recomposition)},
      {"unit-modulus phase factors", modulus < 1e-14, fmt::format("max |1-|phi|| {:.3e}", modulus)},
      {"gradient vs central differences", fd_gap < 1e-5, fmt::format("max rel err {:.3e}", fd_gap)},
      {"per-layer gradient sum vanishes", layer_sum < 1e-8, fmt::format("max |sum|/|g| {:.3e}", layer_sum)},
      {"water-filling budget exact", budget < 1e-9, fmt::format("max |sum p - P_T| {:.3e} mW", budget)},
      {"AO trace nondecreasing", monotone <= 1e-9, fmt::format("max drop {:.3e}", monotone)},
      {"covariance factor reconstructs R", reconstruction < 1e-10, fmt::format("rel err {:.3e}", reconstruction)},
      {"SINR invariant to joint power/noise scaling", scale < 1e-12, fmt::format("max rel err {:.3e}", scale)},
  };
}

}  // namespace simbeam
