// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "simbeam/geometry.hpp"
#include "simbeam/units.hpp"

namespace simbeam {

/// Isotropic-scattering spatial correlation across the last layer, R[n, n'] = sinc(2 d / lambda),
/// together with a square-root factor F (F F^H = R).
struct SpatialCovariance {
  Eigen::MatrixXd R;
  Eigen::MatrixXcd F;
};

SpatialCovariance build_covariance(std::span<const Point3> layer, double wavelength);

/// Eigendecomposition factor F = Q sqrt(max(Lambda, 0)). The sinc covariance on a
/// half-wavelength grid is rank deficient, so a Cholesky factor is not an option.
/// Throws ModelError if an eigenvalue falls below -1e-8 or R is not symmetric.
Eigen::MatrixXcd covariance_factor(const Eigen::MatrixXd& R);

/// beta = 10^(C0/10) * d^-alpha. Throws DomainError for d <= 0.
double path_loss(double distance, double C0_db, double alpha);

struct AntennaGains {
  double bs_dbi = 0.0;
  double ue_dbi = 0.0;
};

/// Per-trial channel draw. Column k of `H` is h_k, so user k sees h_k^H G.
struct ChannelSet {
  Eigen::MatrixXcd H;      // N x K
  Eigen::VectorXd beta;    // linear path loss (antenna gains not included)
  Eigen::VectorXd sigma2;  // noise power, mW
  std::uint64_t seed = 0;

  int K() const { return static_cast<int>(H.cols()); }
  int N() const { return static_cast<int>(H.rows()); }
};

/// h_k = sqrt(g beta_k) F z_k with z_k ~ CN(0, I) and g the combined antenna gain. User k
/// draws from its own stream derived from (seed, k), so the result does not depend on K.
ChannelSet sample_channels(std::uint64_t seed, const Eigen::MatrixXcd& F,
                           const Eigen::VectorXd& betas, AntennaGains gains, double noise_mw);

/// Path losses for every user of `geometry`, measured from the SIM centroid.
Eigen::VectorXd user_path_losses(const SimGeometry& geometry, const SimConfig& config);

}  // namespace simbeam
