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

#ifndef MPFTC_MONITORS_HPP_
#define MPFTC_MONITORS_HPP_

#include <string>

#include "mpftc/closed_loop.hpp"

namespace mpftc {

/// Value-function descent on nominal (obstacle-inactive) segments plus the
/// asymptotic clock behavior over the final tenth of the run.
struct LyapunovReport {
  long checked = 0;
  long violations = 0;
  double worst_violation = 0.0;       // max of V_{k+1} - V_k + q_k - slack
  double descent_fraction = 1.0;
  double max_abs_v_tail = 0.0;        // |v_k| over the final 10%
  double max_clock_error_tail = 0.0;  // |tau_{k+1} - tau_k - ts|
  std::string summary;
};

LyapunovReport monitor_lyapunov(const ClosedLoopLog& log, double slack);

/// Safety in the applied-trajectory sense: known and true unknown
/// constraints at every applied pair, and (safe modes) a feasibility
/// witness at every step.
struct SafetyReport {
  double max_h_violation = 0.0;
  double max_g_violation = 0.0;  // over obstacle-active steps, signed
  long active_steps = 0;
  double first_violation_time = -1.0;
  long certificate_fallbacks = 0;
  long steps_without_certificate = 0;
  double min_clearance = std::numeric_limits<double>::infinity();
  std::string summary;

  bool safe(double tol) const {
    return max_h_violation <= tol && max_g_violation <= tol &&
           steps_without_certificate == 0;
  }
};

SafetyReport monitor_safety(const ClosedLoopLog& log, double feas_tol);

/// Longest run of consecutive steps with u(index) within tol of `level`.
long longest_saturation_run(const ClosedLoopLog& log, int input_index,
                            double level, double tol, double t_from = 0.0);

}  // namespace mpftc

#endif  // MPFTC_MONITORS_HPP_
