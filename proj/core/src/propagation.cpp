// SPDX-License-Identifier: Apache-2.0
#include "simbeam/propagation.hpp"

#include <cmath>

#include "simbeam/errors.hpp"
#include "simbeam/units.hpp"

namespace simbeam {

cd diffraction_coefficient(const Point3& src, const Point3& dst, double normal_gap, double d_x,
                           double d_y, double wavelength) {
  const double d = (dst - src).norm();
  if (!(d > 0.0)) throw DomainError("diffraction_coefficient: source and destination coincide");
  if (!(normal_gap > 0.0)) throw DomainError("diffraction_coefficient: normal gap must be positive");

  const double cos_chi = normal_gap / d;
  const double amplitude = d_x * d_y * cos_chi / d;
  const cd kernel(1.0 / (kTwoPi * d), -1.0 / wavelength);
  return amplitude * kernel * std::polar(1.0, kTwoPi * d / wavelength);
}

PropagationStack::PropagationStack(Eigen::MatrixXcd w1, std::vector<Eigen::MatrixXcd> inter_layer)
    : w1_(std::move(w1)), inter_layer_(std::move(inter_layer)) {
  for (const auto& w : inter_layer_)
    if (w.rows() != w1_.rows() || w.cols() != w1_.rows())
      throw ContractError("PropagationStack: inter-layer matrices must be N x N");
}

const Eigen::MatrixXcd& PropagationStack::W(int l) const {
  if (l < 2 || l > L()) throw ContractError("PropagationStack::W: layer index out of range");
  return inter_layer_[static_cast<std::size_t>(l - 2)];
}

PropagationStack build_propagation_stack(const SimGeometry& g) {
  const int N = g.N();
  const int M = g.M();
  if (g.L() < 1 || N < 1 || M < 1) throw ConfigError("geometry", "empty geometry");

  const auto& first = g.layer_positions.front();
  Eigen::MatrixXcd w1(N, M);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < M; ++m)
      w1(n, m) = diffraction_coefficient(g.antenna_positions[static_cast<std::size_t>(m)],
                                         first[static_cast<std::size_t>(n)], g.d_layer, g.d_x,
                                         g.d_y, g.wavelength);

  std::vector<Eigen::MatrixXcd> inter;
  inter.reserve(static_cast<std::size_t>(g.L() - 1));
  for (int l = 1; l < g.L(); ++l) {
    const auto& src = g.layer_positions[static_cast<std::size_t>(l - 1)];
    const auto& dst = g.layer_positions[static_cast<std::size_t>(l)];
    Eigen::MatrixXcd w(N, N);
    for (int n = 0; n < N; ++n)
      for (int np = 0; np < N; ++np)
        w(n, np) = diffraction_coefficient(src[static_cast<std::size_t>(np)],
                                           dst[static_cast<std::size_t>(n)], g.d_layer, g.d_x,
                                           g.d_y, g.wavelength);
    inter.push_back(std::move(w));
  }
  return PropagationStack(std::move(w1), std::move(inter));
}

}  // namespace simbeam
