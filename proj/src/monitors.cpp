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

#include "mpftc/monitors.hpp"

#include <cmath>
#include <sstream>

namespace mpftc {

LyapunovReport monitor_lyapunov(const ClosedLoopLog& log, double slack) {
  LyapunovReport rep;
  const long n = static_cast<long>(log.steps.size());
  for (long k = 0; k + 1 < n; ++k) {
    const StepRecord& a = log.steps[k];
    const StepRecord& b = log.steps[k + 1];
    const bool nominal = !a.obstacle_active && !b.obstacle_active;
    const bool solved = !a.used_certificate && !b.used_certificate &&
                        a.solver_violation <= 1e-5 &&
                        b.solver_violation <= 1e-5;
    if (!nominal || !solved) continue;
    ++rep.checked;
    const double gap = b.value - (a.value - a.stage_cost);
    if (gap > slack) {
      ++rep.violations;
      rep.worst_violation = std::max(rep.worst_violation, gap - slack);
    }
  }
  rep.descent_fraction =
      rep.checked == 0
          ? 1.0
          : 1.0 - static_cast<double>(rep.violations) / rep.checked;

  const long tail_begin = n - std::max<long>(1, n / 10);
  for (long k = tail_begin; k < n; ++k) {
    rep.max_abs_v_tail = std::max(rep.max_abs_v_tail,
                                  std::abs(log.steps[k].v));
    if (k + 1 < n) {
      const double dtau = log.steps[k + 1].tau - log.steps[k].tau - log.ts;
      rep.max_clock_error_tail =
          std::max(rep.max_clock_error_tail, std::abs(dtau));
    }
  }
  std::ostringstream os;
  os << "descent " << rep.checked - rep.violations << "/" << rep.checked
     << ", tail |v| " << rep.max_abs_v_tail;
  rep.summary = os.str();
  return rep;
}

SafetyReport monitor_safety(const ClosedLoopLog& log, double feas_tol) {
  SafetyReport rep;
  rep.certificate_fallbacks = log.fallback_count;
  rep.steps_without_certificate = log.uncertified_count;
  rep.max_g_violation = -std::numeric_limits<double>::infinity();
  for (const StepRecord& s : log.steps) {
    rep.max_h_violation = std::max(rep.max_h_violation, s.h_violation);
    if (s.obstacle_active) {
      ++rep.active_steps;
      rep.max_g_violation = std::max(rep.max_g_violation, s.g_value);
      if (s.g_value > feas_tol && rep.first_violation_time < 0.0) {
        rep.first_violation_time = s.t;
      }
      // Clearance against the disc keep-out: g = r0^2 - d^2.
      if (s.g_value <= 0.0) {
        rep.min_clearance = std::min(rep.min_clearance, -s.g_value);
      } else {
        rep.min_clearance = std::min(rep.min_clearance, 0.0);
      }
    }
  }
  if (rep.active_steps == 0) {
    rep.max_g_violation = 0.0;
  }
  std::ostringstream os;
  os << "h " << rep.max_h_violation << ", g " << rep.max_g_violation
     << ", fallbacks " << rep.certificate_fallbacks << ", uncertified "
     << rep.steps_without_certificate;
  rep.summary = os.str();
  return rep;
}

long longest_saturation_run(const ClosedLoopLog& log, int input_index,
                            double level, double tol, double t_from) {
  long best = 0, run = 0;
  for (const StepRecord& s : log.steps) {
    if (s.t < t_from) continue;
    if (std::abs(s.u(input_index) - level) <= tol) {
      ++run;
      best = std::max(best, run);
    } else {
      run = 0;
    }
  }
  return best;
}

}  // namespace mpftc
