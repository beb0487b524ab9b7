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

#ifndef MPFTC_CLOSED_LOOP_HPP_
#define MPFTC_CLOSED_LOOP_HPP_

#include <vector>

#include "mpftc/scenario.hpp"

namespace mpftc {

struct StepRecord {
  long k = 0;
  double t = 0.0;
  VectorXd x;
  double tau = 0.0;
  VectorXd u;
  double v = 0.0;
  double value = 0.0;       // V(x_k, tau_k)
  double stage_cost = 0.0;  // q_r at the applied pair
  SolveStatus status = SolveStatus::kMaxIter;
  double solver_violation = 0.0;
  bool certificate_ok = false;   // shifted guess feasible (safe modes)
  double cert_violation = 0.0;
  bool used_certificate = false;  // fallback applied instead of the solution
  bool obstacle_active = false;
  double h_violation = 0.0;  // known box constraints at (x_k, u_k)
  double g_value = 0.0;      // true unknown constraint at x_k (if active)
  double wall_ms = 0.0;
};

struct OpenLoopSample {
  long k = 0;
  MatrixXd X;
  VectorXd Tau;
  MatrixXd U;
  VectorXd V;
};

struct ClosedLoopLog {
  std::string name;
  std::string mode;
  double ts = 0.0;
  unsigned long seed = 0;
  std::vector<StepRecord> steps;
  VectorXd final_x;
  double final_tau = 0.0;
  std::vector<OpenLoopSample> open_loops;     // thinned, every 10th step
  std::vector<Eigen::Vector2d> obstacle_track;  // true uncertainty state
  long fallback_count = 0;
  long uncertified_count = 0;  // safe-mode steps with no feasibility witness
};

/// Receding-horizon run: rebuild constraints from the measurements, solve
/// warm-started, apply the first input (or the shifted safe certificate on
/// solver failure), and march the plant with the same discrete dynamics.
ClosedLoopLog run_closed_loop(const BuiltScenario& built);

}  // namespace mpftc

#endif  // MPFTC_CLOSED_LOOP_HPP_
