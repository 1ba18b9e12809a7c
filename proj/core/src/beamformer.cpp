// SPDX-License-Identifier: Apache-2.0
#include "simbeam/beamformer.hpp"

#include "simbeam/errors.hpp"
#include "simbeam/units.hpp"

namespace simbeam {

void PhaseState::canonicalize() { theta_ = theta_.unaryExpr([](double t) { return wrap_phase(t); }); }

Eigen::VectorXcd PhaseState::phasors(int l) const {
  if (l < 1 || l > L()) throw ContractError("PhaseState::phasors: layer index out of range");
  const auto row = theta_.row(l - 1);
  Eigen::VectorXcd out(row.size());
  for (Eigen::Index n = 0; n < row.size(); ++n) out(n) = std::polar(1.0, row(n));
  return out;
}

PhaseState PhaseState::advanced(const Eigen::MatrixXd& direction, double step) const {
  if (direction.rows() != theta_.rows() || direction.cols() != theta_.cols())
    throw ContractError("PhaseState::advanced: direction shape mismatch");
  return PhaseState(Eigen::MatrixXd(theta_ + step * direction));
}

void check_dimensions(const PhaseState& phases, const PropagationStack& stack) {
  if (phases.L() != stack.L() || phases.N() != stack.N())
    throw ContractError("phase state is " + std::to_string(phases.L()) + "x" +
                        std::to_string(phases.N()) + " but the stack is " +
                        std::to_string(stack.L()) + "x" + std::to_string(stack.N()));
}

BeamformerMatrix compose_beamformer(const PhaseState& phases, const PropagationStack& stack) {
  check_dimensions(phases, stack);
  Eigen::MatrixXcd G = phases.phasors(1).asDiagonal();
  for (int l = 2; l <= stack.L(); ++l) G = phases.phasors(l).asDiagonal() * (stack.W(l) * G);
  return {std::move(G)};
}

PartialProducts partial_products(const PhaseState& phases, const PropagationStack& stack, int l) {
  check_dimensions(phases, stack);
  if (l < 1 || l > stack.L()) throw ContractError("partial_products: layer index out of range");
  const int N = stack.N();

  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(N, N);
  if (l > 1) {
    U = phases.phasors(1).asDiagonal();
    for (int i = 2; i < l; ++i) U = phases.phasors(i).asDiagonal() * (stack.W(i) * U);
    U = stack.W(l) * U;
  }

  Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(N, N);
  for (int i = l + 1; i <= stack.L(); ++i) V = phases.phasors(i).asDiagonal() * (stack.W(i) * V);

  return {std::move(U), std::move(V)};
}

Eigen::MatrixXcd propagate(const PhaseState& phases, const PropagationStack& stack,
                           const Eigen::MatrixXcd& X) {
  check_dimensions(phases, stack);
  if (X.rows() != stack.N()) throw ContractError("propagate: input must have N rows");
  Eigen::MatrixXcd Y = phases.phasors(1).asDiagonal() * X;
  for (int l = 2; l <= stack.L(); ++l) Y = phases.phasors(l).asDiagonal() * (stack.W(l) * Y);
  return Y;
}

}  // namespace simbeam
