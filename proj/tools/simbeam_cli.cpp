// SPDX-License-Identifier: Apache-2.0
// simbeam: sweep / trace / validate front end.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "simbeam/config_io.hpp"
#include "simbeam/errors.hpp"
#include "simbeam/experiment.hpp"
#include "simbeam/validation.hpp"

namespace {

std::string read_file(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw simbeam::IoError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) out.push_back(tok);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-domain multiuser beamforming with stacked metasurfaces"};
  app.require_subcommand(1);

  // sweep
  std::string sweep_config;
  std::string axis;
  std::string values;
  std::string schemes;
  int trials = 0;
  long long seed = -1;
  std::string out_path;
  int jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over one parameter, written as CSV");
  sweep->add_option("--config", sweep_config, "JSON config file (paper defaults when omitted)");
  sweep->add_option("--axis", axis, "Swept parameter")->check(CLI::IsMember({"L", "K", "PT", "N"}));
  sweep->add_option("--values", values, "Comma list; a:b or a:b:step ranges allowed");
  sweep->add_option("--schemes", schemes, "Subset of ao,uniform,codebook");
  sweep->add_option("--trials", trials, "Channel realizations per value")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "Base seed")->check(CLI::NonNegativeNumber);
  sweep->add_option("--out", out_path, "Result CSV path (summary goes next to it)")->required();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  // trace
  std::string trace_config;
  std::string trace_out;
  std::string trace_scheme = "ao";
  int trace_trial = 0;
  long long trace_seed = -1;
  auto* trace = app.add_subcommand("trace", "Single solve; writes the iteration-indexed sum rate");
  trace->add_option("--config", trace_config, "JSON config file");
  trace->add_option("--trial", trace_trial, "Trial index")->check(CLI::NonNegativeNumber);
  trace->add_option("--seed", trace_seed, "Base seed")->check(CLI::NonNegativeNumber);
  trace->add_option("--scheme", trace_scheme, "ao or uniform")->check(CLI::IsMember({"ao", "uniform"}));
  trace->add_option("--out", trace_out, "Trace CSV path")->required();

  // validate
  long long validate_seed = 1;
  int instances = 5;
  auto* validate = app.add_subcommand("validate", "Check model and solver invariants on small instances");
  validate->add_option("--seed", validate_seed, "Seed")->check(CLI::NonNegativeNumber);
  validate->add_option("--instances", instances, "Random instances")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      const std::string text = read_file(sweep_config);
      simbeam::SimConfig config = simbeam::parse_config(text);
      simbeam::SweepSpec spec = simbeam::parse_sweep_section(text);
      spec.trials = config.trial_count;
      if (!axis.empty()) spec.axis = simbeam::parse_axis(axis);
      if (!values.empty()) spec.values = simbeam::parse_value_list(values);
      if (!schemes.empty()) {
        spec.schemes.clear();
        for (const auto& s : split(schemes)) spec.schemes.push_back(simbeam::parse_scheme(s));
      }
      if (trials > 0) spec.trials = trials;
      if (seed >= 0) config.base_seed = static_cast<std::uint64_t>(seed);
      if (jobs > 0) spec.jobs = jobs;

      const auto result = simbeam::run_sweep(config, spec, out_path);
      fmt::print("{}\n", simbeam::kSummaryHeader);
      for (const auto& s : result.summary) fmt::print("{}\n", simbeam::format_summary_row(s));
      fmt::print("wrote {} rows to {} and {}\n", result.rows.size(), out_path,
                 simbeam::summary_path_for(out_path).string());
      return 0;
    }

    if (*trace) {
      simbeam::SimConfig config = simbeam::parse_config(read_file(trace_config));
      if (trace_seed >= 0) config.base_seed = static_cast<std::uint64_t>(trace_seed);
      const auto system = simbeam::build_system(config);
      const auto result = simbeam::solve_trial(system, trace_trial, simbeam::parse_scheme(trace_scheme));
      simbeam::emit_trace(result, trace_out);
      fmt::print("sum rate {:.6f} bits/s/Hz after {} outer rounds, {} gradient steps ({}); trace: {}\n",
                 result.sum_rate, result.outer_iterations, result.total_gradient_steps,
                 simbeam::to_string(result.status), trace_out);
      return 0;
    }

    if (*validate) {
      bool ok = true;
      for (const auto& c : simbeam::run_property_suite(static_cast<std::uint64_t>(validate_seed), instances)) {
        fmt::print("[{}] {} ({})\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
        ok = ok && c.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const simbeam::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
