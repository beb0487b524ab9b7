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

#ifndef MPFTC_SYNTHESIS_HPP_
#define MPFTC_SYNTHESIS_HPP_

#include <Eigen/Dense>

#include <string>

#include "mpftc/models.hpp"

namespace mpftc {

/// Operating-region bounds feeding the tightened terminal-input budget.
struct BoundLedger {
  double B_bar = 266.4;       // max ||inertia||_2
  double C_bar = 269.6;       // max ||coriolis||_2 over the speed box
  double g_bar = 1058.9;      // max ||gravity||_2
  double pdot_bar = 1.0;      // max reference speed
  double pddot_bar = 0.823;   // max reference acceleration
  double u_bar = 4000.0;      // torque bound
  double qdot_bar = 1.5 * EIGEN_PI;  // joint-speed bound
};

/// How the error dynamics are discretized before the Lyapunov solve.
enum class LyapunovDiscretization {
  kClosedLoopExact,  // expm((A - B K) ts); reproduces the published weights
  kZohThenFeedback,  // zoh(A, B, ts), then Ad - Bd K
};

struct TerminalSynthesisResult {
  Eigen::MatrixXd K_eta;   // 2x4 error feedback
  Eigen::MatrixXd P_eta;   // 4x4 terminal weight
  double gamma_star = 0.0;           // level used (row-sum gain bound)
  double gamma_star_spectral = 0.0;  // level under the spectral gain bound
  double d1 = 0.0;           // ||eta|| budget, row-sum gain norm
  double d1_spectral = 0.0;  // ||eta|| budget, spectral gain norm
  double d2 = 0.0;           // ||eta_2|| budget
  BoundLedger bounds;
  LyapunovDiscretization discretization =
      LyapunovDiscretization::kClosedLoopExact;
  double ts = 0.03;
};

/// Full terminal-set pipeline for the planar robot: per-joint continuous
/// LQR gain, discrete Lyapunov terminal weight with the tracking weights,
/// input/speed tightening, and the S-procedure level. Checks that the
/// continuous closed loop is Hurwitz.
TerminalSynthesisResult synthesize_robot_terminal(
    const RobotParams& params = {}, double ts = 0.03,
    LyapunovDiscretization disc = LyapunovDiscretization::kClosedLoopExact);

/// Discrete LQR gain and cost-to-go used by the double-integrator scenarios.
struct DoubleIntegratorSynthesis {
  Eigen::MatrixXd K;  // 1x2
  Eigen::MatrixXd P;  // 2x2
  double ts = 0.02;
};
DoubleIntegratorSynthesis synthesize_double_integrator_lqr(double ts = 0.02);

/// JSON artifact round trip (schema_version field included).
std::string synthesis_to_json(const TerminalSynthesisResult& r);
TerminalSynthesisResult synthesis_from_json(const std::string& text);
void save_synthesis(const TerminalSynthesisResult& r, const std::string& path);
TerminalSynthesisResult load_synthesis(const std::string& path);

std::string synthesis_to_json(const DoubleIntegratorSynthesis& r);

}  // namespace mpftc

#endif  // MPFTC_SYNTHESIS_HPP_
