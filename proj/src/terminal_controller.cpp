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

#include "mpftc/terminal_controller.hpp"

namespace mpftc {

TerminalControlResult terminal_controller(
    const OcpSpec& base, int tail_steps, const VectorXd& x_N, double tau_N,
    const VectorXd& kappa_s, Solver& solver,
    const std::vector<UncertaintySet>* tube, bool unknown_active) {
  OcpSpec spec = base;
  spec.N = 0;
  spec.M = tail_steps + 1;  // one step under (u, v), then the tail proper
  spec.track_first_input = true;
  spec.first_input_target = kappa_s;
  spec.first_input_weight = 1.0;

  Transcription tr(spec);
  tr.set_initial(x_N, tau_N);
  tr.set_unknown_active(unknown_active);
  if (tube != nullptr) {
    // Re-slice the tube so index n of this short program lines up.
    std::vector<UncertaintySet> cut(tube->begin(),
                                    tube->begin() + std::min<size_t>(
                                                        tube->size(),
                                                        spec.M + 1));
    tr.set_tube(std::move(cut));
  }

  const VectorXd guess =
      spec.safe_input ? tr.hold_guess() : tr.reference_guess();
  OcpSolution sol = tr.solve(solver, guess);

  TerminalControlResult out;
  out.u = sol.U.col(0);
  out.v = sol.V(0);
  out.violation = sol.max_violation;
  out.feasible = (sol.status == SolveStatus::kOptimal ||
                  sol.status == SolveStatus::kMaxIter) &&
                 sol.max_violation <= solver.options().feas_tol * 10.0;
  out.tail = std::move(sol);
  return out;
}

}  // namespace mpftc
