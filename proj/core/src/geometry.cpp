// SPDX-License-Identifier: Apache-2.0
#include "simbeam/geometry.hpp"

#include "simbeam/errors.hpp"

namespace simbeam {

double SimGeometry::user_distance(int k) const {
  return (user_positions.at(static_cast<std::size_t>(k)) - sim_centroid).norm();
}

SimGeometry build_geometry(const SimConfig& config) {
  validate(config);

  SimGeometry g;
  g.wavelength = config.wavelength();
  g.d_layer = config.T_SIM * g.wavelength / config.L;
  g.element_spacing = config.element_spacing * g.wavelength;
  g.d_x = config.meta_atom_dx();
  g.d_y = config.meta_atom_dy();
  g.N_x = config.N_x;
  g.N_y = config.N_y;

  const double s = g.element_spacing;
  const double cx = 0.5 * (g.N_x - 1);
  const double cy = 0.5 * (g.N_y - 1);

  g.antenna_positions.reserve(static_cast<std::size_t>(config.M));
  const double cm = 0.5 * (config.M - 1);
  for (int m = 0; m < config.M; ++m) g.antenna_positions.emplace_back((m - cm) * s, 0.0, 0.0);

  g.layer_positions.resize(static_cast<std::size_t>(config.L));
  for (int l = 0; l < config.L; ++l) {
    auto& layer = g.layer_positions[static_cast<std::size_t>(l)];
    layer.reserve(static_cast<std::size_t>(g.N()));
    const double z = (l + 1) * g.d_layer;
    for (int iy = 0; iy < g.N_y; ++iy)
      for (int ix = 0; ix < g.N_x; ++ix) layer.emplace_back((ix - cx) * s, (iy - cy) * s, z);
  }

  // Midway between the first and last layer.
  g.sim_centroid = Point3(0.0, 0.0, 0.5 * (1 + config.L) * g.d_layer);

  g.user_positions.reserve(static_cast<std::size_t>(config.K));
  for (int k = 1; k <= config.K; ++k)
    g.user_positions.emplace_back(k * config.d_UE, -config.H_BS, g.sim_centroid.z());

  return g;
}

}  // namespace simbeam
