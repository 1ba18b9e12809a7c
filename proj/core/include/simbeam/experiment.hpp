// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simbeam/baselines.hpp"
#include "simbeam/channel.hpp"
#include "simbeam/config.hpp"
#include "simbeam/geometry.hpp"
#include "simbeam/propagation.hpp"

namespace simbeam {

enum class Scheme { kAo, kUniform, kCodebook };
enum class SweepAxis { kLayers, kUsers, kPower, kAtoms };

std::string_view to_string(Scheme scheme);
std::string_view to_string(SweepAxis axis);
Scheme parse_scheme(std::string_view text);   // "ao" | "uniform" | "codebook"
SweepAxis parse_axis(std::string_view text);  // "L" | "K" | "PT" | "N"

struct SweepSpec {
  SweepAxis axis = SweepAxis::kLayers;
  std::vector<double> values;
  std::vector<Scheme> schemes{Scheme::kAo, Scheme::kUniform, Scheme::kCodebook};
  int trials = 100;
  int jobs = 1;
};

void validate(const SweepSpec& spec);

/// `config` with the swept parameter set to `value`. K also sets M; N must be a perfect square.
SimConfig apply_axis(const SimConfig& config, SweepAxis axis, double value);

/// Everything that is fixed across trials for one configuration. Immutable once built, so
/// trials may share it across threads.
struct SimSystem {
  SimConfig config;
  SimGeometry geometry;
  PropagationStack stack;
  SpatialCovariance covariance;
  Eigen::VectorXd beta;
};

SimSystem build_system(const SimConfig& config);

std::uint64_t trial_seed(std::uint64_t base_seed, int trial_index);
ChannelSet trial_channels(const SimSystem& system, int trial_index);

/// Solves one scheme on the channels of `trial_index`. AO and uniform-power start from the
/// same random phases, so AO can only match or beat the uniform scheme.
SolveResult solve_trial(const SimSystem& system, int trial_index, Scheme scheme);

struct ResultRow {
  std::string axis;
  double value = 0.0;
  Scheme scheme = Scheme::kAo;
  int trial = 0;
  std::uint64_t seed = 0;
  double sum_rate = 0.0;  // bits/s/Hz
  int outer_iters = 0;
  int grad_steps = 0;
  SolveStatus status = SolveStatus::kConverged;
  double wall_ms = 0.0;
};

std::vector<ResultRow> run_trial(const SimSystem& system, int trial_index,
                                 std::span<const Scheme> schemes, SweepAxis axis, double value);
std::vector<ResultRow> run_trial(const SimConfig& config, int trial_index,
                                 std::span<const Scheme> schemes);

struct SummaryRow {
  std::string axis;
  double value = 0.0;
  Scheme scheme = Scheme::kAo;
  int trials = 0;
  double mean_sum_rate = 0.0;
  double stderr_sum_rate = 0.0;
  double mean_outer_iters = 0.0;
  double mean_grad_steps = 0.0;
};

struct SweepOutput {
  std::vector<ResultRow> rows;  // sorted by (axis value, trial, scheme)
  std::vector<SummaryRow> summary;
};

/// Runs every (value, trial) pair on `spec.jobs` worker threads and writes the rows to
/// `output_path` plus per-value means to summary_path_for(output_path). Both files are opened
/// before any computation so an unwritable path fails fast with IoError.
SweepOutput run_sweep(const SimConfig& config, const SweepSpec& spec,
                      const std::filesystem::path& output_path);

/// Same computation without touching the filesystem.
SweepOutput compute_sweep(const SimConfig& config, const SweepSpec& spec);

std::filesystem::path summary_path_for(const std::filesystem::path& output_path);

inline constexpr std::string_view kResultsHeader =
    "axis,value,scheme,trial,seed,sum_rate_bpshz,outer_iters,grad_steps,status,wall_ms";
inline constexpr std::string_view kSummaryHeader =
    "axis,value,scheme,trials,mean_sum_rate_bpshz,stderr_sum_rate_bpshz,mean_outer_iters,mean_grad_steps";

std::string format_row(const ResultRow& row);
std::string format_summary_row(const SummaryRow& row);
std::vector<SummaryRow> summarize(std::span<const ResultRow> rows);

/// `iter,sum_rate_bpshz`, one line per entry of result.trace.rates.
void emit_trace(const SolveResult& result, const std::filesystem::path& path);
std::string format_trace(const SolveResult& result);

}  // namespace simbeam

namespace simbeam {

/// Reads the optional `sweep.axis`, `sweep.values`, `sweep.schemes` and `sweep.jobs` keys of a
/// config file; `sweep.trial_count` becomes `trials`. Missing keys keep SweepSpec defaults.
SweepSpec parse_sweep_section(std::string_view config_text);

/// "1,2,5:8" -> {1, 2, 5, 6, 7, 8}; "a:b:s" steps by s.
std::vector<double> parse_value_list(std::string_view text);

}  // namespace simbeam
