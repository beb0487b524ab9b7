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

#ifndef MPFTC_QP_HPP_
#define MPFTC_QP_HPP_

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace mpftc {

using Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

/// Convex quadratic program
///   min 1/2 x' H x + g' x   s.t.  Aeq x = beq,  Ain x <= bin.
struct QpProblem {
  SpMat H;
  VectorXd g;
  SpMat Aeq;
  VectorXd beq;
  SpMat Ain;
  VectorXd bin;
};

struct QpOptions {
  int max_iter = 60;
  double tol = 1e-9;
};

struct QpResult {
  bool optimal = false;
  VectorXd x;
  VectorXd lam_eq;  // equality multipliers
  VectorXd mu_in;   // inequality multipliers (>= 0)
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
};

/// Primal-dual interior-point solver with a predictor-corrector step and a
/// quasidefinite 3x3-block KKT factorization. The symbolic analysis is
/// cached, so repeated solves with an identical sparsity pattern reuse it.
class QpSolver {
 public:
  QpResult solve(const QpProblem& qp, const QpOptions& opts = {});

 private:
  Eigen::SimplicialLDLT<SpMat, Eigen::Upper> ldlt_;
  bool analyzed_ = false;
  Eigen::Index pattern_nnz_ = -1;
  Eigen::Index pattern_dim_ = -1;
};

}  // namespace mpftc

#endif  // MPFTC_QP_HPP_
