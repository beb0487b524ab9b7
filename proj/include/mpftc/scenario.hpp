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

#ifndef MPFTC_SCENARIO_HPP_
#define MPFTC_SCENARIO_HPP_

#include <optional>
#include <string>

#include "mpftc/ocp.hpp"
#include "mpftc/synthesis.hpp"

namespace mpftc {

struct ObstacleSpec {
  enum class Kind { kNone, kStatic, kDriftingDisc };
  Kind kind = Kind::kNone;
  // Static halfplane x[pos_index] <= position inside [window_begin,
  // window_end).
  double position = 0.0;
  int pos_index = 0;
  double window_begin = 0.0;
  double window_end = std::numeric_limits<double>::infinity();
  // Drifting disc in the position plane.
  Eigen::Vector2d w0 = Eigen::Vector2d::Zero();
  double speed = 0.3;
  double heading = EIGEN_PI / 4.0;
  double xi_bound = 0.03;
  double r0 = 0.03;
  double radius_step = 0.03;
};

enum class TerminalKind {
  kPointReference,     // x_N = rx(tau_N), P = Q
  kLqrCost,            // terminal cost only (baselines)
  kSafeLqrTail,        // slab stabilizing set + rest at node M
  kSafeEllipsoidTail,  // ellipsoid stabilizing set + rest at node M
};

struct Scenario {
  std::string name;
  std::string model;  // car | double_integrator | robot_arm
  ControllerMode mode = ControllerMode::kMpftc;
  double ts = 0.02;
  int N = 1, M = 1;
  double duration = 1.0;
  unsigned long seed = 1;
  VectorXd x0;
  std::optional<double> tau0;  // absent: project the initial position
  VectorXd q_diag, r_diag;
  double w = 1.0;
  TerminalKind terminal = TerminalKind::kLqrCost;
  std::string synthesis_artifact;  // robot terminal data (optional)
  ObstacleSpec obstacle;
  double v_ref = 4.0;  // cruise reference speed (double integrator)
  double feas_tol = 1e-6;
  double opt_tol = 1e-6;
  int max_iter = 150;
  double penalty_sigma = 1e6;
  double v_bound = -1.0;
  int schema_version = 1;
};

/// Scenario with its instantiated model, reference, cost, and transcription
/// spec. The synthesis result is loaded from the artifact (or recomputed
/// when no path is set).
struct BuiltScenario {
  Scenario scenario;
  std::shared_ptr<const PlantModel> model;
  std::shared_ptr<const ReferenceTrajectory> ref;
  std::shared_ptr<const CostSpec> cost;
  OcpSpec ocp;
  std::vector<int> pos_indices;  // projection / keep-out components
  UncertaintyModel tube_model;   // drifting-disc scenarios
  double tau0 = 0.0;
};

BuiltScenario build_scenario(const Scenario& sc,
                             const TerminalSynthesisResult* synth = nullptr);

/// Published tunings of the three studies.
Scenario car_scenario();
Scenario double_integrator_scenario(ControllerMode mode);
Scenario robot_scenario();

}  // namespace mpftc

#endif  // MPFTC_SCENARIO_HPP_
