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

#ifndef MPFTC_SLICE_HPP_
#define MPFTC_SLICE_HPP_

#include <cstdint>

#include "mpftc/ocp.hpp"

namespace mpftc {

/// Grid classification of the implicit terminal set of the double
/// integrator at a fixed reference time tau_N: a cell is a member when the
/// tail problem (reach rest before the obstacle while staying in the
/// stabilizing slab) is feasible from it.
struct SliceResult {
  double tau_N = 0.0;
  VectorXd p_grid;  // absolute positions
  VectorXd v_grid;  // speeds
  Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic> member;  // v x p
  long member_count = 0;
  long lp_solves = 0;  // cells that needed a feasibility solve
};

/// Single-point membership test, exact fast paths first (necessary
/// conditions and a max-braking certificate), then a feasibility solve.
bool tail_feasible(const OcpSpec& base, int tail_steps, const VectorXd& x,
                   double tau_N, Solver& solver, bool obstacle_active,
                   long* used_lp = nullptr);

SliceResult explicit_terminal_slice(const OcpSpec& base, int tail_steps,
                                    double tau_N, Solver& solver,
                                    bool obstacle_active = true,
                                    double p_half_width = 10.0,
                                    double v_max = 5.0, int resolution = 201);

/// Classifies the given slice's grid points against another tau value;
/// used for nesting checks on a common absolute grid.
Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic> classify_on_grid(
    const OcpSpec& base, int tail_steps, const SliceResult& grid,
    double tau_N, Solver& solver, bool obstacle_active = true);

}  // namespace mpftc

#endif  // MPFTC_SLICE_HPP_
