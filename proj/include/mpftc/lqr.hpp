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

#ifndef MPFTC_LQR_HPP_
#define MPFTC_LQR_HPP_

#include <Eigen/Dense>

namespace mpftc {

using Eigen::MatrixXd;

/// Continuous-time algebraic Riccati solution P and gain K = R^-1 B' P.
/// Throws std::runtime_error when the stable subspace cannot be extracted.
MatrixXd care(const MatrixXd& A, const MatrixXd& B, const MatrixXd& Q,
              const MatrixXd& R);
MatrixXd lqr_gain(const MatrixXd& A, const MatrixXd& B, const MatrixXd& Q,
                  const MatrixXd& R);

/// Discrete-time Riccati solution (structure-preserving doubling) and gain
/// K = (R + B' P B)^-1 B' P A.
MatrixXd dare(const MatrixXd& A, const MatrixXd& B, const MatrixXd& Q,
              const MatrixXd& R);
MatrixXd lqr_gain_discrete(const MatrixXd& A, const MatrixXd& B,
                           const MatrixXd& Q, const MatrixXd& R);

/// Solves P = Acl' P Acl + Q for the (small, dense) discrete Lyapunov
/// equation via Kronecker elimination. Requires rho(Acl) < 1.
MatrixXd solve_discrete_lyapunov(const MatrixXd& Acl, const MatrixXd& Q);

/// Terminal weight from the Lyapunov equation
///   P = Acl' P Acl + (Q + K' R K).
/// Throws std::runtime_error if Acl is not Schur stable.
MatrixXd terminal_cost_lyapunov(const MatrixXd& Acl, const MatrixXd& Q,
                                const MatrixXd& R, const MatrixXd& K);

/// Exact zero-order-hold discretization of (A, B) over one sample.
void zoh_discretize(const MatrixXd& A, const MatrixXd& B, double ts,
                    MatrixXd& Ad, MatrixXd& Bd);

/// Dense matrix exponential (scaling and squaring with Pade(6)).
MatrixXd expm(const MatrixXd& A);

}  // namespace mpftc

#endif  // MPFTC_LQR_HPP_
