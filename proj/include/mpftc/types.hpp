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

#ifndef MPFTC_TYPES_HPP_
#define MPFTC_TYPES_HPP_

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>

namespace mpftc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Plant state augmented with the fictitious reference time tau.
struct AugmentedState {
  VectorXd x;
  double tau = 0.0;
  long k = 0;
};

/// Plant input augmented with the fictitious-time rate perturbation v.
struct AugmentedInput {
  VectorXd u;
  double v = 0.0;
};

/// Quadratic tracking cost: [dx; du]' W [dx; du] + w v^2 running,
/// dx' P dx terminal. W and P must be symmetric positive definite.
class CostSpec {
 public:
  CostSpec(MatrixXd W, MatrixXd P, double w);

  const MatrixXd& W() const { return W_; }
  const MatrixXd& P() const { return P_; }
  double w() const { return w_; }
  int nx() const { return static_cast<int>(P_.rows()); }
  int nu() const { return static_cast<int>(W_.rows() - P_.rows()); }

  /// Smallest eigenvalue of the state block of W (lower bound on the
  /// stage cost in terms of the squared state tracking error).
  double min_state_weight_eigenvalue() const;

 private:
  MatrixXd W_;
  MatrixXd P_;
  double w_ = 0.0;
};

/// A-priori known constraints h(x, u, n) <= 0 with first derivatives.
struct KnownConstraintSet {
  int nh = 0;
  std::function<VectorXd(const VectorXd& x, const VectorXd& u, long n)> h;
  std::function<void(const VectorXd& x, const VectorXd& u, long n,
                     MatrixXd& dh_dx, MatrixXd& dh_du)>
      jacobians;
};

}  // namespace mpftc

#endif  // MPFTC_TYPES_HPP_
