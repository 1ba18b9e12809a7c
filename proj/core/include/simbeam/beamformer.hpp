// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include <Eigen/Core>

#include "simbeam/propagation.hpp"

namespace simbeam {

/// Tunable phases, one row per layer and one column per meta-atom, radians.
class PhaseState {
 public:
  PhaseState() = default;
  PhaseState(int layers, int atoms) : theta_(Eigen::MatrixXd::Zero(layers, atoms)) {}
  explicit PhaseState(Eigen::MatrixXd theta) : theta_(std::move(theta)) { canonicalize(); }

  /// Wraps every entry into [0, 2pi).
  void canonicalize();

  const Eigen::MatrixXd& theta() const { return theta_; }
  int L() const { return static_cast<int>(theta_.rows()); }
  int N() const { return static_cast<int>(theta_.cols()); }

  /// Diagonal of Phi^l as a vector of unit-modulus factors; `l` is 1-based.
  Eigen::VectorXcd phasors(int l) const;

  /// theta + step * direction, canonicalized.
  PhaseState advanced(const Eigen::MatrixXd& direction, double step) const;

  bool operator==(const PhaseState& o) const { return theta_ == o.theta_; }

 private:
  Eigen::MatrixXd theta_;
};

/// G = Phi^L W^L ... Phi^2 W^2 Phi^1.
struct BeamformerMatrix {
  Eigen::MatrixXcd G;
};

BeamformerMatrix compose_beamformer(const PhaseState& phases, const PropagationStack& stack);

struct PartialProducts {
  Eigen::MatrixXcd U;  // everything before Phi^l (identity for l = 1)
  Eigen::MatrixXcd V;  // everything after Phi^l (identity for l = L)
};

/// U^l and V^l such that G = V^l Phi^l U^l. `l` is 1-based.
PartialProducts partial_products(const PhaseState& phases, const PropagationStack& stack, int l);

/// Throws ContractError unless the phase matrix matches the stack.
void check_dimensions(const PhaseState& phases, const PropagationStack& stack);

/// G * X without forming G: each column of `X` (N rows) is pushed through the stack.
Eigen::MatrixXcd propagate(const PhaseState& phases, const PropagationStack& stack,
                           const Eigen::MatrixXcd& X);

}  // namespace simbeam
