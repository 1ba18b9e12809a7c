// SPDX-License-Identifier: Apache-2.0
#include "simbeam/channel.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "simbeam/errors.hpp"
#include "simbeam/rng.hpp"
#include "simbeam/units.hpp"

namespace simbeam {

namespace {
constexpr double kEigenFloor = -1e-8;
}

SpatialCovariance build_covariance(std::span<const Point3> layer, double wavelength) {
  const auto n = static_cast<Eigen::Index>(layer.size());
  Eigen::MatrixXd R(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    R(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (layer[static_cast<std::size_t>(i)] - layer[static_cast<std::size_t>(j)]).norm();
      R(i, j) = R(j, i) = sinc(2.0 * d / wavelength);
    }
  }
  SpatialCovariance cov;
  cov.F = covariance_factor(R);
  cov.R = std::move(R);
  return cov;
}

Eigen::MatrixXcd covariance_factor(const Eigen::MatrixXd& R) {
  if (R.rows() != R.cols()) throw ContractError("covariance_factor: R must be square");
  if (!R.isApprox(R.transpose(), 1e-12) && R.size() > 0)
    throw ModelError("covariance_factor: R is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(R);
  if (eig.info() != Eigen::Success) throw ModelError("covariance_factor: eigendecomposition failed");

  Eigen::VectorXd lambda = eig.eigenvalues();
  if (lambda.size() > 0 && lambda.minCoeff() < kEigenFloor)
    throw ModelError("covariance_factor: eigenvalue " + std::to_string(lambda.minCoeff()) +
                     " is below the tolerance; covariance is not PSD");
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  return (eig.eigenvectors() * lambda.asDiagonal()).cast<cd>();
}

double path_loss(double distance, double C0_db, double alpha) {
  if (!(distance > 0.0)) throw DomainError("path_loss: distance must be positive");
  return db_to_linear(C0_db) * std::pow(distance, -alpha);
}

ChannelSet sample_channels(std::uint64_t seed, const Eigen::MatrixXcd& F,
                           const Eigen::VectorXd& betas, AntennaGains gains, double noise_mw) {
  const auto N = F.rows();
  const auto K = betas.size();
  const double g = db_to_linear(gains.bs_dbi + gains.ue_dbi);

  ChannelSet out;
  out.seed = seed;
  out.beta = betas;
  out.sigma2 = Eigen::VectorXd::Constant(K, noise_mw);
  out.H.resize(N, K);

  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::VectorXcd z(F.cols());
  for (Eigen::Index k = 0; k < K; ++k) {
    Rng rng(derive_seed(seed, Stream::kChannel, static_cast<std::uint64_t>(k)));
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i) = cd(re, im);
    }
    out.H.col(k) = std::sqrt(g * betas(k)) * (F * z);
  }
  return out;
}

Eigen::VectorXd user_path_losses(const SimGeometry& geometry, const SimConfig& config) {
  Eigen::VectorXd beta(geometry.K());
  for (int k = 0; k < geometry.K(); ++k)
    beta(k) = path_loss(geometry.user_distance(k), config.C0, config.alpha);
  return beta;
}

}  // namespace simbeam
