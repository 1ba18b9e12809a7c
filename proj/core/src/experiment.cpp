// SPDX-License-Identifier: Apache-2.0
#include "simbeam/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "simbeam/errors.hpp"
#include "simbeam/rng.hpp"

namespace simbeam {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kAo: return "ao";
    case Scheme::kUniform: return "uniform";
    case Scheme::kCodebook: return "codebook";
  }
  return "unknown";
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kLayers: return "L";
    case SweepAxis::kUsers: return "K";
    case SweepAxis::kPower: return "PT";
    case SweepAxis::kAtoms: return "N";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "ao") return Scheme::kAo;
  if (text == "uniform") return Scheme::kUniform;
  if (text == "codebook") return Scheme::kCodebook;
  throw ConfigError("sweep.schemes", "unknown scheme '" + std::string(text) + "'");
}

SweepAxis parse_axis(std::string_view text) {
  if (text == "L") return SweepAxis::kLayers;
  if (text == "K") return SweepAxis::kUsers;
  if (text == "PT") return SweepAxis::kPower;
  if (text == "N") return SweepAxis::kAtoms;
  throw ConfigError("sweep.axis", "unknown axis '" + std::string(text) + "' (expected L, K, PT or N)");
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep.values", "must not be empty");
  if (spec.schemes.empty()) throw ConfigError("sweep.schemes", "must not be empty");
  if (spec.trials < 1) throw ConfigError("sweep.trials", "must be at least 1");
  if (spec.jobs < 1) throw ConfigError("sweep.jobs", "must be at least 1");
}

namespace {

int integral_value(double value, const char* field) {
  if (!std::isfinite(value) || value != std::round(value) || value < 1.0 || value > 1e6)
    throw ConfigError(field, fmt::format("sweep value {} is not a positive integer", value));
  return static_cast<int>(value);
}

}  // namespace

SimConfig apply_axis(const SimConfig& config, SweepAxis axis, double value) {
  SimConfig c = config;
  switch (axis) {
    case SweepAxis::kLayers:
      c.L = integral_value(value, "system.L");
      break;
    case SweepAxis::kUsers:
      c.K = c.M = integral_value(value, "system.K");
      break;
    case SweepAxis::kPower:
      c.P_T = value;
      break;
    case SweepAxis::kAtoms: {
      const int n = integral_value(value, "geometry.N");
      const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
      if (side * side != n) throw ConfigError("geometry.N", fmt::format("{} is not a perfect square", n));
      c.N_x = c.N_y = side;
      break;
    }
  }
  validate(c);
  return c;
}

SimSystem build_system(const SimConfig& config) {
  SimGeometry geometry = build_geometry(config);
  PropagationStack stack = build_propagation_stack(geometry);
  SpatialCovariance covariance = build_covariance(geometry.layer_positions.back(), geometry.wavelength);
  Eigen::VectorXd beta = user_path_losses(geometry, config);
  return SimSystem{config, std::move(geometry), std::move(stack), std::move(covariance), std::move(beta)};
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial_index) {
  return derive_seed(base_seed, Stream::kTrial, static_cast<std::uint64_t>(trial_index));
}

ChannelSet trial_channels(const SimSystem& system, int trial_index) {
  const auto& c = system.config;
  return sample_channels(trial_seed(c.base_seed, trial_index), system.covariance.F, system.beta,
                         {c.gain_bs, c.gain_ue}, c.noise_power_mw());
}

SolveResult solve_trial(const SimSystem& system, int trial_index, Scheme scheme) {
  const auto& c = system.config;
  const std::uint64_t seed = trial_seed(c.base_seed, trial_index);
  const ChannelSet channels = trial_channels(system, trial_index);
  const double budget = c.transmit_power_mw();

  switch (scheme) {
    case Scheme::kAo:
    case Scheme::kUniform: {
      const PhaseState init = random_phases(c.L, c.N(), derive_seed(seed, Stream::kPhaseInit));
      return scheme == Scheme::kAo
                 ? alternating_optimize(system.stack, channels, budget, c.optimizer, init)
                 : uniform_power_scheme(system.stack, channels, budget, c.optimizer, init);
    }
    case Scheme::kCodebook: {
      const CodebookSpec spec{c.codebook_size(), derive_seed(seed, Stream::kCodebook)};
      return codebook_scheme(system.stack, channels, budget, c.optimizer, spec).best;
    }
  }
  throw ContractError("solve_trial: unknown scheme");
}

std::vector<ResultRow> run_trial(const SimSystem& system, int trial_index,
                                 std::span<const Scheme> schemes, SweepAxis axis, double value) {
  std::vector<ResultRow> rows;
  const std::uint64_t seed = trial_seed(system.config.base_seed, trial_index);
  for (Scheme s : schemes) {
    const SolveResult r = solve_trial(system, trial_index, s);
    rows.push_back({std::string(to_string(axis)), value, s, trial_index, seed, r.sum_rate,
                    r.outer_iterations, r.total_gradient_steps, r.status, r.wall_ms});
  }
  return rows;
}

std::vector<ResultRow> run_trial(const SimConfig& config, int trial_index,
                                 std::span<const Scheme> schemes) {
  return run_trial(build_system(config), trial_index, schemes, SweepAxis::kLayers, config.L);
}

std::string format_row(const ResultRow& r) {
  return fmt::format("{},{},{},{},{},{:.17g},{},{},{},{:.3f}", r.axis, r.value, to_string(r.scheme),
                     r.trial, r.seed, r.sum_rate, r.outer_iters, r.grad_steps, to_string(r.status),
                     r.wall_ms);
}

std::string format_summary_row(const SummaryRow& r) {
  return fmt::format("{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g}", r.axis, r.value,
                     to_string(r.scheme), r.trials, r.mean_sum_rate, r.stderr_sum_rate,
                     r.mean_outer_iters, r.mean_grad_steps);
}

std::vector<SummaryRow> summarize(std::span<const ResultRow> rows) {
  // Group in a canonical order so the sums do not depend on row order.
  std::map<std::tuple<std::string, double, Scheme>, std::vector<const ResultRow*>> groups;
  for (const auto& r : rows) groups[{r.axis, r.value, r.scheme}].push_back(&r);

  std::vector<SummaryRow> out;
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const ResultRow* a, const ResultRow* b) { return a->trial < b->trial; });
    SummaryRow s{std::get<0>(key), std::get<1>(key), std::get<2>(key), static_cast<int>(members.size())};
    double outer = 0.0;
    double grad = 0.0;
    for (const auto* m : members) {
      s.mean_sum_rate += m->sum_rate;
      outer += m->outer_iters;
      grad += m->grad_steps;
    }
    const double n = static_cast<double>(members.size());
    s.mean_sum_rate /= n;
    s.mean_outer_iters = outer / n;
    s.mean_grad_steps = grad / n;
    if (members.size() > 1) {
      double ss = 0.0;
      for (const auto* m : members) ss += (m->sum_rate - s.mean_sum_rate) * (m->sum_rate - s.mean_sum_rate);
      s.stderr_sum_rate = std::sqrt(ss / (n - 1.0) / n);
    }
    out.push_back(s);
  }
  return out;
}

SweepOutput compute_sweep(const SimConfig& config, const SweepSpec& spec) {
  validate(spec);

  // Systems are built up front, one per axis value, and shared read-only by the workers.
  std::vector<SimSystem> systems;
  systems.reserve(spec.values.size());
  for (double v : spec.values) {
    SimConfig c = apply_axis(config, spec.axis, v);
    c.trial_count = spec.trials;
    systems.push_back(build_system(c));
  }

  const std::size_t tasks = spec.values.size() * static_cast<std::size_t>(spec.trials);
  std::vector<std::vector<ResultRow>> results(tasks);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const std::size_t vi = t / static_cast<std::size_t>(spec.trials);
      const int trial = static_cast<int>(t % static_cast<std::size_t>(spec.trials));
      try {
        results[t] = run_trial(systems[vi], trial, spec.schemes, spec.axis, spec.values[vi]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  const int width = std::min<int>(spec.jobs, static_cast<int>(tasks));
  if (width <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < width; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  SweepOutput out;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(out.rows));
  std::stable_sort(out.rows.begin(), out.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.value, a.trial, a.scheme) < std::tie(b.value, b.trial, b.scheme);
  });
  out.summary = summarize(out.rows);
  return out;
}

std::filesystem::path summary_path_for(const std::filesystem::path& output_path) {
  std::filesystem::path p = output_path;
  const auto ext = output_path.extension();
  p.replace_filename(output_path.stem().string() + ".summary" + (ext.empty() ? ".csv" : ext.string()));
  return p;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

SweepOutput run_sweep(const SimConfig& config, const SweepSpec& spec,
                      const std::filesystem::path& output_path) {
  validate(spec);
  std::ofstream rows_file = open_for_write(output_path);
  std::ofstream summary_file = open_for_write(summary_path_for(output_path));

  SweepOutput out = compute_sweep(config, spec);

  rows_file << kResultsHeader << '\n';
  for (const auto& r : out.rows) rows_file << format_row(r) << '\n';
  summary_file << kSummaryHeader << '\n';
  for (const auto& s : out.summary) summary_file << format_summary_row(s) << '\n';
  if (!rows_file || !summary_file) throw IoError("write failed for " + output_path.string());
  return out;
}

std::string format_trace(const SolveResult& result) {
  std::string s = "iter,sum_rate_bpshz\n";
  for (std::size_t i = 0; i < result.trace.rates.size(); ++i)
    s += fmt::format("{},{:.17g}\n", i, result.trace.rates[i]);
  return s;
}

void emit_trace(const SolveResult& result, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << format_trace(result);
  if (!out) throw IoError("write failed for " + path.string());
}

SweepSpec parse_sweep_section(std::string_view config_text) {
  SweepSpec spec;
  nlohmann::json root;
  try {
    if (config_text.find_first_not_of(" \t\r\n") == std::string_view::npos) return spec;
    root = nlohmann::json::parse(config_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("sweep")) return spec;
  const auto& sw = root["sweep"];
  try {
    if (sw.contains("axis")) spec.axis = parse_axis(sw["axis"].get<std::string>());
    if (sw.contains("values")) spec.values = sw["values"].get<std::vector<double>>();
    if (sw.contains("schemes")) {
      spec.schemes.clear();
      for (const auto& s : sw["schemes"]) spec.schemes.push_back(parse_scheme(s.get<std::string>()));
    }
    if (sw.contains("trial_count")) spec.trials = sw["trial_count"].get<int>();
    if (sw.contains("jobs")) spec.jobs = sw["jobs"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("sweep", e.what());
  }
  return spec;
}

std::vector<double> parse_value_list(std::string_view text) {
  std::vector<double> out;
  auto number = [](std::string_view tok) {
    std::string s(tok);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("sweep.values", "cannot parse '" + s + "'");
    return v;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    if (item.empty()) throw ConfigError("sweep.values", "empty entry in value list");
    const std::size_t c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(number(item));
    } else {
      const std::size_t c2 = item.find(':', c1 + 1);
      const double first = number(item.substr(0, c1));
      const double last = number(item.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos : c2 - c1 - 1));
      const double step = c2 == std::string_view::npos ? 1.0 : number(item.substr(c2 + 1));
      if (!(step > 0.0)) throw ConfigError("sweep.values", "range step must be positive");
      const auto count = static_cast<long>(std::floor((last - first) / step + 1e-9)) + 1;
      for (long i = 0; i < count; ++i) out.push_back(first + static_cast<double>(i) * step);
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace simbeam
