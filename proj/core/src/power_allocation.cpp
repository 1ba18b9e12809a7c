// SPDX-License-Identifier: Apache-2.0
#include "simbeam/power_allocation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "simbeam/errors.hpp"

namespace simbeam {

namespace {

constexpr int kMaxBisections = 400;

double filled(const std::vector<double>& floor, double level) {
  double s = 0.0;
  for (double a : floor) s += std::max(level - a, 0.0);
  return s;
}

}  // namespace

PowerAllocation water_fill_update(const EffectiveGains& gains, const PowerAllocation& previous,
                                  const Eigen::VectorXd& sigma2, double budget_mw) {
  const int K = gains.K();
  if (previous.K() != K || sigma2.size() != K || gains.q.cols() != K)
    throw ContractError("water_fill_update: inconsistent dimensions");
  if (!(budget_mw >= 0.0)) throw ContractError("water_fill_update: budget must be nonnegative");

  const Eigen::MatrixXd g2 = gains.q.cwiseAbs2();

  // floor[k] = (interference + noise) / |q_kk|^2 for users with a usable direct gain.
  std::vector<int> users;
  std::vector<double> floor;
  for (int k = 0; k < K; ++k) {
    if (!(g2(k, k) > 0.0)) continue;
    double interference = 0.0;
    for (int j = 0; j < K; ++j)
      if (j != k) interference += g2(k, j) * previous.p(j);
    users.push_back(k);
    floor.push_back((interference + sigma2(k)) / g2(k, k));
  }

  PowerAllocation out{Eigen::VectorXd::Zero(K)};
  if (users.empty() || budget_mw == 0.0) return out;

  double lo = 0.0;
  double hi = budget_mw + *std::max_element(floor.begin(), floor.end());
  const double tol = 1e-12 * std::max(1.0, budget_mw);
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double residual = filled(floor, mid) - budget_mw;
    if (std::abs(residual) <= tol) {
      lo = hi = mid;
      break;
    }
    (residual > 0.0 ? hi : lo) = mid;
  }
  const double level = 0.5 * (lo + hi);

  // Recompute the level in closed form on the active set so the budget holds to rounding.
  double active_floor = 0.0;
  int active = 0;
  for (double a : floor)
    if (a < level) {
      active_floor += a;
      ++active;
    }
  const double exact = active > 0 ? (budget_mw + active_floor) / active : level;
  for (std::size_t i = 0; i < users.size(); ++i)
    out.p(users[i]) = std::max(exact - floor[i], 0.0);
  return out;
}

PowerIterationResult damped_power_iteration(const EffectiveGains& gains,
                                            const Eigen::VectorXd& sigma2, double budget_mw,
                                            const OptimizerParams& params) {
  return damped_power_iteration(gains, sigma2, budget_mw, params,
                                PowerAllocation::uniform(gains.K(), budget_mw));
}

PowerIterationResult damped_power_iteration(const EffectiveGains& gains,
                                            const Eigen::VectorXd& sigma2, double budget_mw,
                                            const OptimizerParams& params,
                                            const PowerAllocation& start) {
  PowerIterationResult res;
  if (start.K() != gains.K()) throw ContractError("damped_power_iteration: start has wrong size");
  if (budget_mw == 0.0) {
    res.power.p = Eigen::VectorXd::Zero(gains.K());
    res.converged = true;
    return res;
  }
  PowerAllocation p = start;
  PowerAllocation best = start;
  double best_rate = sum_rate(sinr(gains, start, sigma2));

  for (int it = 1; it <= params.inner_max; ++it) {
    const PowerAllocation target = water_fill_update(gains, p, sigma2, budget_mw);
    PowerAllocation next{(1.0 - params.damping) * p.p + params.damping * target.p};
    const double change = (next.p - p.p).lpNorm<1>() / budget_mw;
    p = std::move(next);
    res.iterations = it;

    const double rate = sum_rate(sinr(gains, p, sigma2));
    if (rate > best_rate) {
      best_rate = rate;
      best = p;
    }
    if (change < params.ao_tolerance) {
      res.converged = true;
      break;
    }
  }

  res.power = res.converged ? p : best;
  const double total = res.power.total();
  if (total > 0.0) res.power.p *= budget_mw / total;
  return res;
}

}  // namespace simbeam
