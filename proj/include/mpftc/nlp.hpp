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

#ifndef MPFTC_NLP_HPP_
#define MPFTC_NLP_HPP_

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <string>

namespace mpftc {

using Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

/// Smooth constrained program
///   min f(x)  s.t.  ceq(x) = 0,  cin(x) <= 0,  lb <= x <= ub.
struct NlpProblem {
  int n = 0;
  int m_eq = 0;
  int m_in = 0;
  VectorXd x0;
  VectorXd lb, ub;  // empty means unbounded

  std::function<double(const VectorXd&)> objective;
  std::function<VectorXd(const VectorXd&)> gradient;
  std::function<void(const VectorXd&, VectorXd& ceq, VectorXd& cin)>
      constraints;
  std::function<void(const VectorXd&, SpMat& Jeq, SpMat& Jin)> jacobians;
  /// Optional positive-semidefinite objective Hessian model (Gauss-Newton
  /// for tracking objectives). When absent a damped BFGS model is used.
  std::function<SpMat(const VectorXd&)> hessian;
};

enum class SolveStatus { kOptimal, kMaxIter, kInfeasible, kNumericalFailure };

struct SolveReport {
  SolveStatus status = SolveStatus::kMaxIter;
  int iterations = 0;
  double objective = 0.0;
  double stationarity = 0.0;     // scaled dual residual
  double feasibility = 0.0;      // max constraint violation (unscaled)
  double complementarity = 0.0;
  int qp_failures = 0;
};

std::string to_string(SolveStatus s);

struct KktResiduals {
  double stationarity = 0.0;
  double feasibility = 0.0;
  double complementarity = 0.0;
};

struct Multipliers {
  VectorXd eq;      // equality
  VectorXd in;      // inequality (>= 0)
  VectorXd bound_lo, bound_up;  // bound multipliers (>= 0)
};

/// Raw KKT residual evaluation at (x, multipliers); used by tests and by the
/// closed-loop feasibility certificates.
KktResiduals check_kkt(const NlpProblem& p, const VectorXd& x,
                       const Multipliers& mult);

/// Max violation of all constraints and bounds at x (unscaled, >= 0).
double constraint_violation(const NlpProblem& p, const VectorXd& x);

}  // namespace mpftc

#endif  // MPFTC_NLP_HPP_
