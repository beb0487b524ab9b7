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

#include "mpftc/scenario.hpp"

#include <stdexcept>

namespace mpftc {

namespace {

MatrixXd blkdiag_cost(const VectorXd& q, const VectorXd& r) {
  MatrixXd W = MatrixXd::Zero(q.size() + r.size(), q.size() + r.size());
  W.topLeftCorner(q.size(), q.size()) = q.asDiagonal();
  W.bottomRightCorner(r.size(), r.size()) = r.asDiagonal();
  return W;
}

}  // namespace

BuiltScenario build_scenario(const Scenario& sc,
                             const TerminalSynthesisResult* synth) {
  BuiltScenario b;
  b.scenario = sc;
  b.model = make_model(sc.model);
  const int nx = b.model->nx();
  const int nu = b.model->nu();
  if (sc.x0.size() != nx) {
    throw std::invalid_argument("scenario " + sc.name +
                                ": x0 dimension mismatch");
  }
  if (sc.q_diag.size() != nx || sc.r_diag.size() != nu) {
    throw std::invalid_argument("scenario " + sc.name +
                                ": cost dimension mismatch");
  }
  if (sc.duration <= 0.0 || sc.ts <= 0.0) {
    throw std::invalid_argument("scenario " + sc.name + ": bad timing");
  }
  {
    const double steps = sc.duration / sc.ts;
    if (std::abs(steps - std::round(steps)) > 1e-9) {
      throw std::invalid_argument("scenario " + sc.name +
                                  ": duration must be a multiple of ts");
    }
  }

  if (sc.model == "car") {
    b.ref = std::make_shared<ReferenceTrajectory>(build_car_reference());
    b.pos_indices = {0, 1};
  } else if (sc.model == "double_integrator") {
    const double horizon = 2.5 * sc.duration + 2.0 * sc.M * sc.ts + 5.0;
    b.ref = std::make_shared<ReferenceTrajectory>(
        build_double_integrator_reference(sc.v_ref, horizon));
    b.pos_indices = {0};
  } else if (sc.model == "robot_arm") {
    b.ref = std::make_shared<ReferenceTrajectory>(build_robot_reference({}));
    b.pos_indices = {0, 1};
  } else {
    throw std::invalid_argument("scenario: unknown model " + sc.model);
  }

  const MatrixXd W = blkdiag_cost(sc.q_diag, sc.r_diag);
  MatrixXd P;
  TerminalSpec term;
  TerminalSynthesisResult synth_local;
  switch (sc.terminal) {
    case TerminalKind::kPointReference:
      P = MatrixXd(sc.q_diag.asDiagonal());
      term.kind = TerminalSpec::Kind::kPoint;
      break;
    case TerminalKind::kLqrCost:
    case TerminalKind::kSafeLqrTail: {
      const DoubleIntegratorSynthesis lqr =
          synthesize_double_integrator_lqr(sc.ts);
      P = lqr.P;
      if (sc.terminal == TerminalKind::kLqrCost) {
        term.kind = TerminalSpec::Kind::kCostOnly;
      } else {
        term.kind = TerminalSpec::Kind::kSafeTail;
        term.stabilizer = TerminalSpec::Stabilizer::kInputSlab;
        term.K = lqr.K;
        term.slab_lo = b.model->input_lower();
        term.slab_hi = b.model->input_upper();
        term.rest_indices = {1};
      }
      break;
    }
    case TerminalKind::kSafeEllipsoidTail: {
      if (synth != nullptr) {
        synth_local = *synth;
      } else if (!sc.synthesis_artifact.empty()) {
        synth_local = load_synthesis(sc.synthesis_artifact);
      } else {
        synth_local = synthesize_robot_terminal();
      }
      P = synth_local.P_eta;
      term.kind = TerminalSpec::Kind::kSafeTail;
      term.stabilizer = TerminalSpec::Stabilizer::kEllipsoid;
      term.P_eta = synth_local.P_eta;
      term.gamma_star = synth_local.gamma_star;
      term.rest_indices = {2, 3};
      break;
    }
  }
  b.cost = std::make_shared<CostSpec>(W, P, sc.w);

  OcpSpec& ocp = b.ocp;
  ocp.model = b.model;
  ocp.ref = b.ref;
  ocp.cost = b.cost;
  ocp.ts = sc.ts;
  ocp.N = sc.N;
  ocp.M = sc.M;
  ocp.mode = sc.mode;
  ocp.terminal = term;
  ocp.penalty_sigma = sc.penalty_sigma;
  ocp.v_bound = sc.v_bound;

  switch (sc.obstacle.kind) {
    case ObstacleSpec::Kind::kNone:
      ocp.unknown.kind = UnknownConstraintSpec::Kind::kNone;
      break;
    case ObstacleSpec::Kind::kStatic:
      ocp.unknown.kind = UnknownConstraintSpec::Kind::kHalfplane;
      ocp.unknown.pos_index = sc.obstacle.pos_index;
      ocp.unknown.bound = sc.obstacle.position;
      break;
    case ObstacleSpec::Kind::kDriftingDisc:
      ocp.unknown.kind = UnknownConstraintSpec::Kind::kKeepoutDisc;
      ocp.unknown.pos_xy = {b.pos_indices[0], b.pos_indices[1]};
      b.tube_model = UncertaintyModel::drifting_disc(
          sc.ts, sc.obstacle.speed, sc.obstacle.heading, sc.obstacle.xi_bound,
          sc.obstacle.r0, sc.obstacle.radius_step);
      break;
  }
  // Baselines relax the unknown constraint with the exact penalty.
  ocp.relax_unknown = (sc.mode != ControllerMode::kMpftcSafe) &&
                      ocp.unknown.kind != UnknownConstraintSpec::Kind::kNone;

  if (sc.model == "double_integrator") {
    ocp.safe_input = [nu](const VectorXd&) { return VectorXd::Zero(nu); };
  } else if (sc.model == "robot_arm") {
    auto robot = std::static_pointer_cast<const RobotArmModel>(b.model);
    ocp.safe_input = [robot](const VectorXd& x) {
      return VectorXd(robot->gravity(x.head<2>()));
    };
  }

  b.tau0 = sc.tau0 ? *sc.tau0
                   : initial_tau_projection(sc.x0, *b.ref, b.pos_indices);
  return b;
}

Scenario car_scenario() {
  Scenario sc;
  sc.name = "car_mpftc";
  sc.model = "car";
  sc.mode = ControllerMode::kMpftc;
  sc.ts = 0.05;
  sc.N = 20;
  sc.M = 20;
  sc.duration = 30.0;
  sc.x0 = VectorXd(3);
  sc.x0 << -30.0, -1.0, EIGEN_PI / 8.0;
  sc.q_diag = VectorXd::Ones(3);
  sc.r_diag = VectorXd::Ones(2);
  sc.w = 10.0;
  sc.terminal = TerminalKind::kPointReference;
  return sc;
}

Scenario double_integrator_scenario(ControllerMode mode) {
  Scenario sc;
  sc.model = "double_integrator";
  sc.mode = mode;
  sc.ts = 0.02;
  sc.duration = 20.0;
  sc.x0 = VectorXd::Zero(2);
  sc.q_diag = VectorXd(2);
  sc.q_diag << 10.0, 10.0;
  sc.r_diag = VectorXd::Ones(1);
  sc.w = 1.0;
  sc.v_ref = 4.0;
  sc.obstacle.kind = ObstacleSpec::Kind::kStatic;
  sc.obstacle.position = 20.0;
  sc.obstacle.pos_index = 0;
  sc.obstacle.window_begin = 0.0;
  sc.obstacle.window_end = 15.0;
  if (mode == ControllerMode::kMpftcSafe) {
    sc.name = "di_mpftc_safe";
    sc.N = 50;
    sc.M = 100;
    sc.terminal = TerminalKind::kSafeLqrTail;
  } else {
    sc.name = mode == ControllerMode::kMpcFixedV ? "di_mpc" : "di_mpftc";
    sc.N = 100;
    sc.M = 100;
    sc.terminal = TerminalKind::kLqrCost;
  }
  return sc;
}

Scenario robot_scenario() {
  Scenario sc;
  sc.name = "robot_mpftc_safe";
  sc.model = "robot_arm";
  sc.mode = ControllerMode::kMpftcSafe;
  sc.ts = 0.03;
  sc.N = 25;
  sc.M = 50;
  sc.duration = 15.0;
  sc.x0 = VectorXd(4);
  sc.x0 << -5.86, 2.43, 0.0, 0.0;
  sc.q_diag = VectorXd(4);
  sc.q_diag << 1e5, 1e5, 10.0, 10.0;
  sc.r_diag = VectorXd::Constant(2, 1e-3);
  sc.w = 10.0;
  sc.terminal = TerminalKind::kSafeEllipsoidTail;
  sc.obstacle.kind = ObstacleSpec::Kind::kDriftingDisc;
  sc.obstacle.w0 << -6.0, -2.0;
  return sc;
}

}  // namespace mpftc
