// SPDX-License-Identifier: Apache-2.0
#include "simbeam/config.hpp"

#include <cmath>

#include "simbeam/errors.hpp"
#include "simbeam/units.hpp"

namespace simbeam {

double SimConfig::wavelength() const { return wavelength_for(carrier_freq); }

double SimConfig::meta_atom_dx() const { return d_x.value_or(element_spacing * wavelength()); }

double SimConfig::meta_atom_dy() const { return d_y.value_or(element_spacing * wavelength()); }

double SimConfig::transmit_power_mw() const { return dbm_to_mw(P_T); }

double SimConfig::noise_power_mw() const { return dbm_to_mw(noise_power); }

int SimConfig::codebook_size() const {
  return optimizer.codebook_size > 0 ? optimizer.codebook_size : 10 * L * N();
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(field, what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const SimConfig& c) {
  require(c.K >= 1, "system.K", "must be at least 1");
  require(c.M == c.K, "system.M", "must equal K (one antenna per data stream)");
  require(c.L >= 1, "system.L", "must be at least 1");
  require(finite_positive(c.carrier_freq), "system.carrier_freq", "must be finite and positive");
  require(std::isfinite(c.P_T), "system.P_T", "must be finite");
  require(std::isfinite(c.noise_power), "system.noise_power", "must be finite");

  require(c.N_x >= 1, "geometry.N_x", "must be at least 1");
  require(c.N_y == c.N_x, "geometry.N_y", "metasurface must be square (N_y == N_x)");
  require(std::isfinite(c.H_BS) && c.H_BS >= 0.0, "geometry.H_BS", "must be finite and nonnegative");
  require(finite_positive(c.T_SIM), "geometry.T_SIM", "must be finite and positive");
  require(std::isfinite(c.d_UE) && c.d_UE >= 0.0, "geometry.d_UE", "must be finite and nonnegative");
  require(finite_positive(c.element_spacing), "geometry.element_spacing", "must be finite and positive");
  require(!c.d_x || finite_positive(*c.d_x), "geometry.d_x", "must be finite and positive");
  require(!c.d_y || finite_positive(*c.d_y), "geometry.d_y", "must be finite and positive");

  require(std::isfinite(c.C0), "channel.C0", "must be finite");
  require(finite_positive(c.alpha), "channel.alpha", "must be finite and positive");
  require(std::isfinite(c.gain_bs), "channel.gain_bs", "must be finite");
  require(std::isfinite(c.gain_ue), "channel.gain_ue", "must be finite");
  // Users sit at transverse offset k * d_UE below a mast of height H_BS; both zero would put
  // user 1 inside the array.
  require(c.H_BS > 0.0 || c.d_UE > 0.0, "geometry.H_BS", "H_BS and d_UE cannot both be zero");

  const auto& o = c.optimizer;
  require(o.damping > 0.0 && o.damping <= 1.0, "optimizer.damping", "must lie in (0, 1]");
  require(finite_positive(o.armijo_init), "optimizer.armijo_init", "must be finite and positive");
  require(o.armijo_shrink > 0.0 && o.armijo_shrink < 1.0, "optimizer.armijo_shrink", "must lie in (0, 1)");
  require(finite_positive(o.armijo_slope), "optimizer.armijo_slope", "must be finite and positive");
  require(finite_positive(o.ao_tolerance), "optimizer.ao_tolerance", "must be finite and positive");
  require(o.inner_max >= 1, "optimizer.inner_max", "must be at least 1");
  require(o.outer_max >= 1, "optimizer.outer_max", "must be at least 1");
  require(o.codebook_size >= 0, "optimizer.codebook_size", "must be nonnegative (0 = default)");

  require(c.trial_count >= 1, "sweep.trial_count", "must be at least 1");
}

}  // namespace simbeam
