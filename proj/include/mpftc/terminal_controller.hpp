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

#ifndef MPFTC_TERMINAL_CONTROLLER_HPP_
#define MPFTC_TERMINAL_CONTROLLER_HPP_

#include "mpftc/ocp.hpp"

namespace mpftc {

struct TerminalControlResult {
  VectorXd u;
  double v = 0.0;
  bool feasible = false;
  double violation = 0.0;
  OcpSolution tail;  // witness trajectory into the safe set
};

/// Terminal control law: stay closest to the stabilizing law kappa_s while
/// keeping the successor inside the implicit terminal set (a feasible tail
/// into the safe set). Solved as a small program over the tail trajectory
/// with objective ||u - kappa_s||^2 + v^2.
///
/// `base` must describe a safe-tail transcription (terminal kind kSafeTail);
/// tail_steps is M - N. Infeasibility is reported, not thrown, so property
/// tests can assert on it.
TerminalControlResult terminal_controller(
    const OcpSpec& base, int tail_steps, const VectorXd& x_N, double tau_N,
    const VectorXd& kappa_s, Solver& solver,
    const std::vector<UncertaintySet>* tube = nullptr,
    bool unknown_active = false);

}  // namespace mpftc

#endif  // MPFTC_TERMINAL_CONTROLLER_HPP_
