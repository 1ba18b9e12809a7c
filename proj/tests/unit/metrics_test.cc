// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "simbeam/errors.hpp"
#include "simbeam/metrics.hpp"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace simbeam {
namespace {

Eigen::MatrixXcd random_complex(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = {n(rng), n(rng)};
  return m;
}

TEST(EffectiveGains, IdentityBeamformerReducesToDirectProducts) {
  ChannelSet ch{random_complex(4, 2, 1), Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2)};
  const Eigen::MatrixXcd W1 = random_complex(4, 2, 2);
  const auto q = effective_gains(ch, BeamformerMatrix{Eigen::MatrixXcd::Identity(4, 4)}, W1);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(q.q(k, j) - ch.H.col(k).dot(W1.col(j))), 0.0, 1e-14);
}

TEST(EffectiveGains, ConjugatedChannelsConjugateRows) {
  ChannelSet ch{random_complex(4, 2, 3), Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2)};
  const BeamformerMatrix G{Eigen::MatrixXcd::Identity(4, 4)};
  const Eigen::MatrixXcd W1 = random_complex(4, 2, 4).real().cast<cd>();
  ChannelSet conj = ch;
  conj.H = ch.H.conjugate();
  const auto a = effective_gains(ch, G, W1);
  const auto b = effective_gains(conj, G, W1);
  EXPECT_LT((b.q - a.q.conjugate()).norm(), 1e-14);
}

TEST(EffectiveGains, MatchesScalarTripleProduct) {
  ChannelSet ch{random_complex(4, 2, 5), Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2)};
  const Eigen::MatrixXcd G = random_complex(4, 4, 6);
  const Eigen::MatrixXcd W1 = random_complex(4, 2, 7);
  const auto q = effective_gains(ch, BeamformerMatrix{G}, W1);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) {
      cd acc = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) acc += std::conj(ch.H(a, k)) * G(a, b) * W1(b, j);
      EXPECT_NEAR(std::abs(q.q(k, j) - acc), 0.0, 1e-13);
    }
}

TEST(EffectiveGains, DimensionMismatchIsContractError) {
  ChannelSet ch{random_complex(4, 2, 5), Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2)};
  EXPECT_THROW(effective_gains(ch, BeamformerMatrix{Eigen::MatrixXcd::Identity(3, 3)}, random_complex(3, 2, 1)),
               ContractError);
}

TEST(EffectiveGains, StackOverloadMatchesDenseComposition) {
  const auto inst = testing::make_instance(4, 3, 2, 9);
  const auto dense = effective_gains(inst.channels, compose_beamformer(inst.phases, inst.system.stack),
                                     inst.system.stack.W1());
  const auto fast = effective_gains(inst.channels, inst.phases, inst.system.stack);
  EXPECT_LT((dense.q - fast.q).norm() / dense.q.norm(), 1e-12);
}

TEST(Sinr, SingleUserHasNoInterference) {
  EffectiveGains q{Eigen::MatrixXcd::Constant(1, 1, cd(0.3, -0.4))};
  const auto g = sinr(q, PowerAllocation{Eigen::VectorXd::Constant(1, 10.0)}, Eigen::VectorXd::Constant(1, 0.5));
  EXPECT_DOUBLE_EQ(g(0), 0.25 * 10.0 / 0.5);
}

TEST(Sinr, DiagonalGainsGiveSnr) {
  EffectiveGains q{Eigen::MatrixXcd::Zero(3, 3)};
  q.q.diagonal() << cd(1, 0), cd(0, 2), cd(1, 1);
  const Eigen::VectorXd p = Eigen::Vector3d(1.0, 2.0, 3.0);
  const Eigen::VectorXd s2 = Eigen::Vector3d(0.5, 1.0, 2.0);
  const auto g = sinr(q, PowerAllocation{p}, s2);
  EXPECT_DOUBLE_EQ(g(0), 2.0);
  EXPECT_DOUBLE_EQ(g(1), 8.0);
  EXPECT_DOUBLE_EQ(g(2), 3.0);
}

TEST(Sinr, RandomInstanceMatchesDirectFormula) {
  const Eigen::MatrixXcd q = random_complex(3, 3, 21);
  const std::vector<double> p{0.7, 1.9, 0.4}, s2{0.1, 0.3, 0.2};
  std::vector<std::vector<oracle::cplx>> rows(3, std::vector<oracle::cplx>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rows[i][j] = q(i, j);
  const auto g = sinr(EffectiveGains{q}, PowerAllocation{Eigen::Map<const Eigen::VectorXd>(p.data(), 3)},
                      Eigen::Map<const Eigen::VectorXd>(s2.data(), 3));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(g(k), oracle::sinr_direct(rows, p, s2, k), 1e-13 * g(k));
}

TEST(Sinr, JointScalingOfPowerAndNoiseIsInvariant) {
  const EffectiveGains q{random_complex(4, 4, 22)};
  const Eigen::VectorXd p = Eigen::Vector4d(0.1, 0.2, 0.3, 0.4);
  const Eigen::VectorXd s2 = Eigen::Vector4d(1e-3, 2e-3, 1e-3, 5e-4);
  const auto a = sinr(q, PowerAllocation{p}, s2);
  for (double c : {1e-9, 0.37, 42.0, 1e8}) {
    const auto b = sinr(q, PowerAllocation{c * p}, c * s2);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(b(k), a(k), 1e-12 * a(k));
  }
}

TEST(Sinr, RaisingOnePowerHelpsItselfAndHurtsOthers) {
  const EffectiveGains q{random_complex(3, 3, 23)};
  const Eigen::VectorXd s2 = Eigen::Vector3d::Constant(0.1);
  Eigen::VectorXd p = Eigen::Vector3d(0.5, 0.5, 0.5);
  const auto before = sinr(q, PowerAllocation{p}, s2);
  p(1) *= 1.5;
  const auto after = sinr(q, PowerAllocation{p}, s2);
  EXPECT_GT(after(1), before(1));
  EXPECT_LT(after(0), before(0));
  EXPECT_LT(after(2), before(2));
}

TEST(SumRate, ZeroAndUnitSinr) {
  EXPECT_EQ(sum_rate(Eigen::VectorXd::Zero(4)), 0.0);
  EXPECT_DOUBLE_EQ(sum_rate(Eigen::VectorXd::Ones(4)), 4.0);
}

TEST(SumRate, MatchesTermwiseSum) {
  std::mt19937_64 rng(5);
  std::exponential_distribution<double> e(0.1);
  Eigen::VectorXd g(6);
  double expected = 0.0;
  for (int k = 0; k < 6; ++k) {
    g(k) = e(rng);
    expected += std::log(1.0 + g(k)) / std::log(2.0);
  }
  EXPECT_NEAR(sum_rate(g), expected, 1e-13 * expected);
}

TEST(SumRate, NegativeSinrIsContractError) {
  EXPECT_THROW(sum_rate(Eigen::Vector2d(1.0, -1e-3)), ContractError);
  EXPECT_THROW(sum_rate(Eigen::Vector2d(1.0, std::nan(""))), ContractError);
}

TEST(SumRate, ZeroPowerGivesZeroRate) {
  const EffectiveGains q{random_complex(3, 3, 24)};
  const auto rep = rate_report(q, PowerAllocation{Eigen::VectorXd::Zero(3)}, Eigen::VectorXd::Ones(3));
  EXPECT_EQ(rep.sum_rate, 0.0);
  const auto some = rate_report(q, PowerAllocation::uniform(3, 1.0), Eigen::VectorXd::Ones(3));
  EXPECT_GT(some.sum_rate, 0.0);
  EXPECT_NEAR(some.rate_per_user.sum(), some.sum_rate, 1e-14);
}

}  // namespace
}  // namespace simbeam
