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

#ifndef MPFTC_SQP_HPP_
#define MPFTC_SQP_HPP_

#include <utility>

#include "mpftc/nlp.hpp"
#include "mpftc/qp.hpp"

namespace mpftc {

struct SolverOptions {
  int max_iter = 100;
  double feas_tol = 1e-6;
  double opt_tol = 1e-6;
  int qp_max_iter = 60;
  double elastic_penalty = 1e6;
  int line_search_max = 25;
};

struct SolveOutput {
  VectorXd x;
  SolveReport report;
  Multipliers multipliers;
};

/// Line-search SQP with convex QP subproblems (interior point), an l1 merit
/// function, and an elastic-mode retry for inconsistent linearizations.
/// Deterministic: identical inputs and options yield identical output.
class Solver {
 public:
  explicit Solver(SolverOptions opts = {}) : opts_(opts) {}

  SolveOutput solve(const NlpProblem& p);
  SolveOutput solve(const NlpProblem& p, const VectorXd& x_start);

  const SolverOptions& options() const { return opts_; }
  void set_options(const SolverOptions& o) { opts_ = o; }

 private:
  SolverOptions opts_;
  QpSolver qp_;
  QpSolver qp_elastic_;
};

/// One-shot convenience wrapper around a fresh Solver.
inline std::pair<VectorXd, SolveReport> solve(const NlpProblem& p,
                                              const SolverOptions& opts = {}) {
  Solver s(opts);
  SolveOutput out = s.solve(p);
  return {out.x, out.report};
}

}  // namespace mpftc

#endif  // MPFTC_SQP_HPP_
