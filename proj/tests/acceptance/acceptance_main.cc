// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "simbeam/baselines.hpp"
#include "simbeam/experiment.hpp"
#include "simbeam/gradient.hpp"
#include "simbeam/power_allocation.hpp"
#include "simbeam/rng.hpp"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace {

using namespace simbeam;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  g_failures += !ok;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn) {
  std::vector<T> out(n);
  std::atomic<int> next{0};
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < std::min(jobs(), n); ++w)
      pool.emplace_back([&] {
        for (int i; (i = next++) < n;) out[i] = fn(i);
      });
  }
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<double> rates(const std::vector<SolveResult>& rs) {
  std::vector<double> out;
  for (const auto& r : rs) out.push_back(r.sum_rate);
  return out;
}

std::vector<SolveResult> solve_all(const SimConfig& config, int trials, Scheme scheme) {
  const SimSystem sys = build_system(config);
  return parallel_map<SolveResult>(trials, [&](int t) { return solve_trial(sys, t, scheme); });
}

constexpr int kTrials = 20;

void gradient_criteria() {
  const auto t0 = Clock::now();
  double worst = 0.0, worst_sum = 0.0;
  int sampled = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = testing::make_instance(4, 3, 2, 1000 + seed);
    const auto p = PowerAllocation::uniform(2, inst.system.config.transmit_power_mw());
    const Eigen::MatrixXd g = sum_rate_gradient(inst.phases, inst.system.stack, inst.channels, p);
    const SumRateObjective R(inst.system.stack, inst.channels, p);
    const int L = inst.phases.L(), N = inst.phases.N();
    std::vector<double> x(inst.phases.theta().data(), inst.phases.theta().data() + L * N);
    auto f = [&](const std::vector<double>& v) {
      return R(PhaseState(Eigen::Map<const Eigen::MatrixXd>(v.data(), L, N)));
    };
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
    for (int s = 0; s < 24; ++s, ++sampled) {
      const std::size_t i = pick(rng);
      const double fd = oracle::central_difference(f, x, i, 1e-6);
      worst = std::max(worst, std::abs(fd - g.data()[i]) / std::max(std::abs(g.data()[i]), 1e-3 * g.norm()));
    }
    for (int l = 0; l < L; ++l) worst_sum = std::max(worst_sum, std::abs(g.row(l).sum()) / g.norm());
  }
  const double secs = seconds_since(t0);
  report(1, "gradient vs central differences", worst <= 1e-5 && secs < 30.0,
         fmt("%d partials on 10 instances, max rel err %.2e, %.2f s", sampled, worst, secs));
  report(2, "per-layer gradient sum vanishes", worst_sum <= 1e-8,
         fmt("max |sum_n g|/|g| = %.2e over 10 instances", worst_sum));
}

void water_filling_criterion() {
  double worst = 0.0, damped_gap = 0.0, budget_err = 0.0;
  Rng rng(42);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int c = 0; c < 50; ++c) {
    const double g0 = u(rng), g1 = u(rng), s0 = u(rng), s1 = u(rng), P = 4.0 * u(rng);
    EffectiveGains q{Eigen::MatrixXcd::Zero(2, 2)};
    q.q(0, 0) = g0;
    q.q(1, 1) = g1;
    const Eigen::VectorXd s2 = Eigen::Vector2d(s0, s1);
    const auto ref = oracle::kkt_water_fill({s0 / (g0 * g0), s1 / (g1 * g1)}, P, 1e-8);
    const auto p = water_fill_update(q, PowerAllocation::uniform(2, P), s2, P);
    worst = std::max({worst, std::abs(p.p(0) - ref[0]), std::abs(p.p(1) - ref[1])});
    // The damped iteration stops at |dp|_1 / P_T < ao_tolerance, so it is only reported.
    const auto d = damped_power_iteration(q, s2, P, OptimizerParams{}).power;
    damped_gap = std::max({damped_gap, std::abs(d.p(0) - ref[0]), std::abs(d.p(1) - ref[1])});
    budget_err = std::max(budget_err, std::abs(d.total() - P));
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = testing::make_instance(7, 3, 4, seed);
    const double P = inst.system.config.transmit_power_mw();
    const auto q = effective_gains(inst.channels, inst.phases, inst.system.stack);
    const auto r = damped_power_iteration(q, inst.channels.sigma2, P, OptimizerParams{});
    budget_err = std::max(budget_err, std::abs(r.power.total() - P));
  }
  report(3, "water-filling vs KKT oracle", worst <= 1e-6 && budget_err <= 1e-9,
         fmt("max |p - p_kkt| = %.2e on 50 instances (damped iteration %.2e), max |sum p - P_T| = %.2e", worst,
             damped_gap, budget_err));
}

void channel_statistics_criterion() {
  SimConfig c = testing::small_config(4, 1, 1);
  const SimSystem sys = build_system(c);
  const double scale = db_to_linear(c.gain_bs + c.gain_ue) * sys.beta(0);
  const int draws = 10000;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(16, 16), P = S;
  for (int t = 0; t < draws; ++t) {
    const auto ch = sample_channels(derive_seed(77, {static_cast<std::uint64_t>(t)}), sys.covariance.F, sys.beta,
                                    {c.gain_bs, c.gain_ue}, 1.0);
    const Eigen::VectorXcd h = ch.H.col(0);
    S += h * h.adjoint();
    P += h * h.transpose();
  }
  S /= draws;
  P /= draws;
  const Eigen::MatrixXd target = scale * sys.covariance.R;
  const double cov_err = (S - target.cast<cd>()).norm() / target.norm();
  const double pseudo = P.norm() / S.norm();
  report(10, "channel second-order statistics", cov_err <= 0.05 && pseudo <= 0.05,
         fmt("cov rel Frobenius err %.3f, pseudo/cov %.3f over 1e4 draws", cov_err, pseudo));
}

void single_user_criterion() {
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = testing::make_instance(7, 1, 1, 500 + seed);
    const double P = inst.system.config.transmit_power_mw();
    const auto r = alternating_optimize(inst.system.stack, inst.channels, P, OptimizerParams{}, inst.phases);
    const double amp = inst.channels.H.col(0).cwiseAbs().dot(inst.system.stack.W1().col(0).cwiseAbs());
    const double bound = std::log2(1.0 + amp * amp * P / inst.channels.sigma2(0));
    worst = std::max(worst, std::abs(r.sum_rate - bound) / bound);
  }
  report(11, "single-user phase-alignment optimum", worst <= 1e-4,
         fmt("max rel gap to bound %.2e over 10 seeds (N=49)", worst));
}

void paper_trend_criteria() {
  const auto t0 = Clock::now();
  SimConfig base;  // N = 49, L = 7, K = 4, 10 dBm
  const auto ao10 = solve_all(base, kTrials, Scheme::kAo);

  double drop = 0.0;
  for (const auto& r : ao10)
    for (std::size_t t = 1; t < r.trace.rates.size(); ++t) drop = std::max(drop, r.trace.rates[t - 1] - r.trace.rates[t]);
  report(4, "monotone AO trace", drop <= 1e-9, fmt("max per-step drop %.2e over %d runs", drop, kTrials));

  SimConfig one = base;
  one.L = 1;
  const double r7 = mean(rates(ao10));
  const double r1 = mean(rates(solve_all(one, kTrials, Scheme::kAo)));
  const double trend_secs = seconds_since(t0);
  report(5, "layer gain L=7 vs L=1", r7 >= 1.2 * r1 && trend_secs <= 600.0,
         fmt("mean R L=7 %.3f vs L=1 %.3f (+%.1f%%), %.0f s", r7, r1, 100.0 * (r7 / r1 - 1.0), trend_secs));

  const double cb10 = mean(rates(solve_all(base, kTrials, Scheme::kCodebook)));
  report(6, "AO vs codebook at 10 dBm", r7 >= 1.5 * cb10,
         fmt("mean AO %.3f vs codebook %.3f (ratio %.2f)", r7, cb10, r7 / cb10));

  const double un10 = mean(rates(solve_all(base, kTrials, Scheme::kUniform)));
  const double gap = r7 - un10;
  report(7, "AO vs uniform power at 10 dBm", gap >= 1.0 && gap <= 3.0,
         fmt("mean AO %.3f vs uniform %.3f (gap %.3f, window [1, 3])", r7, un10, gap));

  SimConfig hi = base;
  hi.P_T = 20.0;
  const double ao20 = mean(rates(solve_all(hi, kTrials, Scheme::kAo)));
  const double cb20 = mean(rates(solve_all(hi, kTrials, Scheme::kCodebook)));
  report(8, "AO vs codebook at 20 dBm", ao20 - cb20 >= 3.5,
         fmt("mean AO %.3f vs codebook %.3f (gap %.3f)", ao20, cb20, ao20 - cb20));
}

void convergence_criterion() {
  auto rounds = [](int n_side) {
    SimConfig c;
    c.N_x = c.N_y = n_side;
    std::vector<int> outer, steps;
    for (const auto& r : solve_all(c, 5, Scheme::kAo)) {
      outer.push_back(r.outer_iterations);
      steps.push_back(r.total_gradient_steps);
    }
    return std::pair{outer, steps};
  };
  const auto [o49, s49] = rounds(7);
  const auto [o100, s100] = rounds(10);
  const double m49 = median(o49), m100 = median(o100);
  report(9, "convergence speed", m49 <= 60.0 && m100 > m49,
         fmt("median outer rounds N=49 %.0f, N=100 %.0f (median gradient steps %.0f, %.0f)", m49, m100,
             median(s49), median(s100)));
}

void determinism_criterion() {
  SimConfig c;
  c.L = 3;
  c.optimizer.codebook_size = 50;
  SweepSpec spec{SweepAxis::kPower, {0.0, 10.0}, {Scheme::kAo, Scheme::kUniform, Scheme::kCodebook}, 3, 1};
  auto text = [&](int j) {
    spec.jobs = j;
    std::string s;
    for (auto row : compute_sweep(c, spec).rows) {
      row.wall_ms = 0.0;
      s += format_row(row) + "\n";
    }
    return s;
  };
  const std::string a = text(1), b = text(1), p = text(std::max(2, jobs()));
  report(12, "sweep determinism", a == b && a == p,
         fmt("%zu bytes of rows, serial rerun %s, parallel %s", a.size(), a == b ? "identical" : "differs",
             a == p ? "identical" : "differs"));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  gradient_criteria();
  water_filling_criterion();
  paper_trend_criteria();
  convergence_criterion();
  channel_statistics_criterion();
  single_user_criterion();
  determinism_criterion();
  std::printf("%d of 12 criteria failed (%.0f s)\n", g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
