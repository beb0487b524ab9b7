/*
 Copyright 2026 The mpftc authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "mpftc/costs.hpp"

#include <Eigen/Eigenvalues>

namespace mpftc {

CostSpec::CostSpec(MatrixXd W, MatrixXd P, double w)
    : W_(std::move(W)), P_(std::move(P)), w_(w) {
  if (W_.rows() != W_.cols() || P_.rows() != P_.cols() ||
      P_.rows() > W_.rows()) {
    throw std::invalid_argument("CostSpec: bad weight dimensions");
  }
  if (!W_.isApprox(W_.transpose(), 1e-12) ||
      !P_.isApprox(P_.transpose(), 1e-12)) {
    throw std::invalid_argument("CostSpec: weights must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> ew(W_), ep(P_);
  if (ew.eigenvalues().minCoeff() <= 0.0 ||
      ep.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("CostSpec: W and P must be positive definite");
  }
  if (w_ < 0.0) throw std::invalid_argument("CostSpec: w must be >= 0");
}

double CostSpec::min_state_weight_eigenvalue() const {
  const int n = nx();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(W_.topLeftCorner(n, n));
  return es.eigenvalues().minCoeff();
}

double eval_stage_cost(const AugmentedState& state, const AugmentedInput& input,
                       const ReferenceTrajectory& ref, const CostSpec& cost) {
  if (state.x.size() != cost.nx() || input.u.size() != cost.nu() ||
      ref.nx() != cost.nx() || ref.nu() != cost.nu()) {
    throw std::invalid_argument("eval_stage_cost: dimension mismatch");
  }
  VectorXd z(cost.nx() + cost.nu());
  z << state.x - ref.state(state.tau), input.u - ref.input(state.tau);
  return z.dot(cost.W() * z) + cost.w() * input.v * input.v;
}

double eval_terminal_cost(const AugmentedState& state,
                          const ReferenceTrajectory& ref,
                          const CostSpec& cost) {
  if (state.x.size() != cost.nx() || ref.nx() != cost.nx()) {
    throw std::invalid_argument("eval_terminal_cost: dimension mismatch");
  }
  const VectorXd dx = state.x - ref.state(state.tau);
  return dx.dot(cost.P() * dx);
}

}  // namespace mpftc
