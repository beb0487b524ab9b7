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

#ifndef MPFTC_SPROC_HPP_
#define MPFTC_SPROC_HPP_

#include <Eigen/Dense>

#include <vector>

namespace mpftc {

using Eigen::MatrixXd;

/// One quadratic container constraint for the S-procedure:
/// eta' P eta <= gamma must imply eta' M eta <= d^2 (M >= 0).
struct SprocConstraint {
  MatrixXd M;
  double d = 0.0;
};

/// Largest gamma such that, for every constraint, some lambda >= 0 makes
/// blkdiag(P - lambda M, lambda d^2 - gamma) >= 0. Solved by bisection on
/// gamma with per-candidate minimum-eigenvalue feasibility checks.
/// Throws std::runtime_error when no positive gamma is feasible.
double sproc_level(const MatrixXd& P, const std::vector<SprocConstraint>& cons,
                   double rel_tol = 1e-9);

/// The two container constraints used by the robot terminal set:
/// ||eta||_2 <= d1 and ||eta_2||_2 <= d2 (velocity-error block).
double sproc_level(const MatrixXd& P_eta, const MatrixXd& K_eta, double d1,
                   double d2);

}  // namespace mpftc

#endif  // MPFTC_SPROC_HPP_
