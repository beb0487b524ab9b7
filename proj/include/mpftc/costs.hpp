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

#ifndef MPFTC_COSTS_HPP_
#define MPFTC_COSTS_HPP_

#include "mpftc/reference.hpp"
#include "mpftc/types.hpp"

namespace mpftc {

/// tau_next = tau + ts + v; v = 0 recovers the natural reference clock.
inline double advance_fictitious_time(double tau, double v, double ts) {
  return tau + ts + v;
}

/// Running tracking cost [dx; du]' W [dx; du] + w v^2.
double eval_stage_cost(const AugmentedState& state, const AugmentedInput& input,
                       const ReferenceTrajectory& ref, const CostSpec& cost);

/// Terminal tracking cost dx' P dx.
double eval_terminal_cost(const AugmentedState& state,
                          const ReferenceTrajectory& ref, const CostSpec& cost);

}  // namespace mpftc

#endif  // MPFTC_COSTS_HPP_
