// SPDX-License-Identifier: Apache-2.0
#include "simbeam/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "simbeam/errors.hpp"

namespace simbeam {

using nlohmann::json;

namespace {

// Sweep keys that belong to SweepSpec rather than SimConfig; accepted here so a single file can
// describe a whole experiment.
const std::set<std::string> kSweepOnlyKeys = {"axis", "values", "schemes", "jobs"};

class Section {
 public:
  Section(const json& root, std::string name) : name_(std::move(name)) {
    if (!root.contains(name_)) return;
    node_ = &root.at(name_);
    if (!node_->is_object()) throw ConfigError(name_, "section must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (node_ == nullptr || !node_->contains(key)) return;
    const json& v = node_->at(key);
    if (v.is_null()) return;
    try {
      if constexpr (std::is_same_v<T, int>) {
        if (!v.is_number_integer()) throw ConfigError(path(key), "expected an integer");
      } else if constexpr (std::is_same_v<T, std::uint64_t>) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
          throw ConfigError(path(key), "expected a nonnegative integer");
      } else {
        if (!v.is_number()) throw ConfigError(path(key), "expected a number");
      }
      out = v.get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path(key), e.what());
    }
  }

  void read(const char* key, std::optional<double>& out) {
    const bool present = node_ != nullptr && node_->contains(key) && !node_->at(key).is_null();
    double v = 0.0;
    read(key, v);
    if (present) out = v;
  }

  void read(const char* key, StepRule& out) {
    seen_.insert(key);
    if (node_ == nullptr || !node_->contains(key) || node_->at(key).is_null()) return;
    const json& v = node_->at(key);
    if (v == "fixed") out = StepRule::kFixed;
    else if (v == "barzilai_borwein") out = StepRule::kBarzilaiBorwein;
    else throw ConfigError(path(key), "expected \"fixed\" or \"barzilai_borwein\"");
  }

  void reject_unknown(const std::set<std::string>& extra = {}) const {
    if (node_ == nullptr) return;
    for (const auto& [key, value] : node_->items())
      if (!seen_.contains(key) && !extra.contains(key)) throw ConfigError(path(key.c_str()), "unknown key");
  }

 private:
  std::string path(const char* key) const { return name_ + "." + key; }

  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> seen_;
};

}  // namespace

SimConfig parse_config(std::string_view text) {
  json root;
  try {
    root = text.find_first_not_of(" \t\r\n") == std::string_view::npos ? json::object()
                                                                        : json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("<file>", "top level must be an object");
  for (const auto& [key, value] : root.items())
    if (key != "system" && key != "geometry" && key != "channel" && key != "optimizer" && key != "sweep")
      throw ConfigError(key, "unknown section");

  SimConfig c;
  Section system(root, "system");
  system.read("M", c.M);
  system.read("K", c.K);
  system.read("L", c.L);
  system.read("carrier_freq", c.carrier_freq);
  system.read("P_T", c.P_T);
  system.read("noise_power", c.noise_power);
  system.reject_unknown();
  // M tracks K unless given explicitly.
  if (!root.contains("system") || !root["system"].contains("M")) c.M = c.K;

  Section geometry(root, "geometry");
  geometry.read("N_x", c.N_x);
  geometry.read("N_y", c.N_y);
  geometry.read("H_BS", c.H_BS);
  geometry.read("T_SIM", c.T_SIM);
  geometry.read("d_UE", c.d_UE);
  geometry.read("element_spacing", c.element_spacing);
  geometry.read("d_x", c.d_x);
  geometry.read("d_y", c.d_y);
  geometry.reject_unknown();

  Section channel(root, "channel");
  channel.read("C0", c.C0);
  channel.read("alpha", c.alpha);
  channel.read("gain_bs", c.gain_bs);
  channel.read("gain_ue", c.gain_ue);
  channel.reject_unknown();

  Section opt(root, "optimizer");
  opt.read("damping", c.optimizer.damping);
  opt.read("armijo_init", c.optimizer.armijo_init);
  opt.read("armijo_shrink", c.optimizer.armijo_shrink);
  opt.read("armijo_slope", c.optimizer.armijo_slope);
  opt.read("step_rule", c.optimizer.step_rule);
  opt.read("ao_tolerance", c.optimizer.ao_tolerance);
  opt.read("inner_max", c.optimizer.inner_max);
  opt.read("outer_max", c.optimizer.outer_max);
  opt.read("codebook_size", c.optimizer.codebook_size);
  opt.reject_unknown();

  Section sweep(root, "sweep");
  sweep.read("base_seed", c.base_seed);
  sweep.read("trial_count", c.trial_count);
  sweep.reject_unknown(kSweepOnlyKeys);

  validate(c);
  return c;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const SimConfig& c) {
  json root;
  root["system"] = {{"M", c.M}, {"K", c.K}, {"L", c.L}, {"carrier_freq", c.carrier_freq},
                    {"P_T", c.P_T}, {"noise_power", c.noise_power}};
  root["geometry"] = {{"N_x", c.N_x}, {"N_y", c.N_y}, {"H_BS", c.H_BS}, {"T_SIM", c.T_SIM},
                      {"d_UE", c.d_UE}, {"element_spacing", c.element_spacing},
                      {"d_x", c.d_x ? json(*c.d_x) : json(nullptr)},
                      {"d_y", c.d_y ? json(*c.d_y) : json(nullptr)}};
  root["channel"] = {{"C0", c.C0}, {"alpha", c.alpha}, {"gain_bs", c.gain_bs}, {"gain_ue", c.gain_ue}};
  const auto& o = c.optimizer;
  root["optimizer"] = {{"damping", o.damping}, {"armijo_init", o.armijo_init},
                       {"armijo_shrink", o.armijo_shrink}, {"armijo_slope", o.armijo_slope},
                       {"step_rule", o.step_rule == StepRule::kFixed ? "fixed" : "barzilai_borwein"},
                       {"ao_tolerance", o.ao_tolerance}, {"inner_max", o.inner_max},
                       {"outer_max", o.outer_max}, {"codebook_size", o.codebook_size}};
  root["sweep"] = {{"base_seed", c.base_seed}, {"trial_count", c.trial_count}};
  return root.dump(2) + "\n";
}

}  // namespace simbeam
