// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Core>

#include "simbeam/config.hpp"

namespace simbeam {

using Point3 = Eigen::Vector3d;

/// Physical layout of the transmitter and the users.
///
/// Frame: z is the stacking (boresight) axis and is horizontal. The antenna line sits in the
/// plane z = 0 along x; metasurface layer l (1-based) occupies the plane z = l * d_layer, so the
/// antenna-to-layer-1 gap equals the inter-layer gap. y is vertical and the array is centered
/// on y = 0 at mast height H_BS, which puts the ground at y = -H_BS. User k (1-based) stands on
/// the ground at x = k * d_UE, level in z with the SIM centroid.
struct SimGeometry {
  double wavelength = 0.0;
  double d_layer = 0.0;
  double element_spacing = 0.0;  // meters
  double d_x = 0.0;              // meta-atom size, meters
  double d_y = 0.0;
  int N_x = 0;
  int N_y = 0;

  std::vector<Point3> antenna_positions;               // M entries
  std::vector<std::vector<Point3>> layer_positions;    // L layers of N atoms, index n = iy * N_x + ix
  std::vector<Point3> user_positions;                  // K entries
  Point3 sim_centroid = Point3::Zero();

  int M() const { return static_cast<int>(antenna_positions.size()); }
  int N() const { return N_x * N_y; }
  int L() const { return static_cast<int>(layer_positions.size()); }
  int K() const { return static_cast<int>(user_positions.size()); }

  /// Distance from the SIM centroid to user k (0-based).
  double user_distance(int k) const;
};

SimGeometry build_geometry(const SimConfig& config);

}  // namespace simbeam
