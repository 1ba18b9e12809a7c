// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "simbeam/geometry.hpp"
#include "simbeam/units.hpp"

namespace simbeam {

using cd = std::complex<double>;

/// Rayleigh-Sommerfeld transmission coefficient between two points on parallel planes
/// separated by `normal_gap`:
///
///   w = (d_x d_y cos(chi) / d) * (1 / (2 pi d) - j / lambda) * exp(j 2 pi d / lambda)
///
/// with d = |dst - src| and cos(chi) = normal_gap / d. Throws DomainError for d == 0 or a
/// nonpositive gap.
cd diffraction_coefficient(const Point3& src, const Point3& dst, double normal_gap, double d_x,
                           double d_y, double wavelength);

/// Fixed transmission matrices of the stack. `W1` is N x M (antenna m -> layer-1 atom n);
/// `inter_layer[i]` is the N x N matrix from layer i+1 to layer i+2 (the paper-style W^{i+2}).
class PropagationStack {
 public:
  PropagationStack(Eigen::MatrixXcd w1, std::vector<Eigen::MatrixXcd> inter_layer);

  const Eigen::MatrixXcd& W1() const { return w1_; }
  /// Transmission into layer `l` (1-based, 2 <= l <= L).
  const Eigen::MatrixXcd& W(int l) const;

  int L() const { return static_cast<int>(inter_layer_.size()) + 1; }
  int N() const { return static_cast<int>(w1_.rows()); }
  int M() const { return static_cast<int>(w1_.cols()); }

 private:
  Eigen::MatrixXcd w1_;
  std::vector<Eigen::MatrixXcd> inter_layer_;
};

PropagationStack build_propagation_stack(const SimGeometry& geometry);

}  // namespace simbeam
