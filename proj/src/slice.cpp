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

#include "mpftc/slice.hpp"

#include <cmath>

namespace mpftc {

namespace {

struct SlabCheck {
  const TerminalSpec& term;
  const ReferenceTrajectory& ref;
  bool contains(const VectorXd& x, double tau) const {
    const VectorXd s = -(term.K * (x - ref.state(tau)));
    for (int i = 0; i < s.size(); ++i) {
      if (s(i) > term.slab_hi(i) + 1e-12 || s(i) < term.slab_lo(i) - 1e-12) {
        return false;
      }
    }
    return true;
  }
};

// Max-braking rollout with a frozen reference clock; an exact feasibility
// certificate when it satisfies every constraint, and an exact rejection
// when even it violates the wall or misses the rest deadline.
enum class BrakeVerdict { kFeasible, kInfeasible, kUndecided };

BrakeVerdict max_braking_check(const OcpSpec& base, int tail_steps,
                               const VectorXd& x0, double tau_N,
                               bool obstacle_active) {
  const SlabCheck slab{base.terminal, *base.ref};
  const double ts = base.ts;
  const double a_min = base.model->input_lower()(0);
  double p = x0(0), v = x0(1);
  bool certificate = slab.contains(x0, tau_N);
  if (obstacle_active && p > base.unknown.bound) return BrakeVerdict::kInfeasible;
  for (int n = 0; n < tail_steps; ++n) {
    const double a = std::max(a_min, -v / ts);
    p += ts * v + 0.5 * ts * ts * a;
    v = std::max(0.0, v + ts * a);
    if (obstacle_active && p > base.unknown.bound) {
      return BrakeVerdict::kInfeasible;  // even max braking hits the wall
    }
    VectorXd xn(2);
    xn << p, v;
    if (!slab.contains(xn, tau_N)) certificate = false;
  }
  if (v > 0.0) return BrakeVerdict::kInfeasible;  // cannot rest in time
  return certificate ? BrakeVerdict::kFeasible : BrakeVerdict::kUndecided;
}

}  // namespace

bool tail_feasible(const OcpSpec& base, int tail_steps, const VectorXd& x,
                   double tau_N, Solver& solver, bool obstacle_active,
                   long* used_lp) {
  const SlabCheck slab{base.terminal, *base.ref};
  if (!slab.contains(x, tau_N)) return false;
  if (x(1) < 0.0) return false;

  const BrakeVerdict verdict =
      max_braking_check(base, tail_steps, x, tau_N, obstacle_active);
  if (verdict == BrakeVerdict::kFeasible) return true;
  if (verdict == BrakeVerdict::kInfeasible) return false;

  if (used_lp) ++(*used_lp);
  OcpSpec spec = base;
  spec.N = 0;
  spec.M = tail_steps;
  spec.track_first_input = false;
  Transcription tr(spec);
  tr.set_initial(x, tau_N);
  tr.set_unknown_active(obstacle_active);
  OcpSolution sol = tr.solve(solver, tr.hold_guess());
  return sol.max_violation <= 1e-7;
}

SliceResult explicit_terminal_slice(const OcpSpec& base, int tail_steps,
                                    double tau_N, Solver& solver,
                                    bool obstacle_active, double p_half_width,
                                    double v_max, int resolution) {
  SliceResult out;
  out.tau_N = tau_N;
  const double p_ref = base.ref->state(tau_N)(0);
  out.p_grid = VectorXd::LinSpaced(resolution, p_ref - p_half_width,
                                   p_ref + p_half_width);
  out.v_grid = VectorXd::LinSpaced(resolution, 0.0, v_max);
  out.member.resize(resolution, resolution);
  VectorXd x(2);
  for (int iv = 0; iv < resolution; ++iv) {
    for (int ip = 0; ip < resolution; ++ip) {
      x << out.p_grid(ip), out.v_grid(iv);
      const bool ok = tail_feasible(base, tail_steps, x, tau_N, solver,
                                    obstacle_active, &out.lp_solves);
      out.member(iv, ip) = ok ? 1 : 0;
      if (ok) ++out.member_count;
    }
  }
  return out;
}

Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic> classify_on_grid(
    const OcpSpec& base, int tail_steps, const SliceResult& grid, double tau_N,
    Solver& solver, bool obstacle_active) {
  const int nv = static_cast<int>(grid.v_grid.size());
  const int np = static_cast<int>(grid.p_grid.size());
  Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic> member(nv, np);
  long lp = 0;
  VectorXd x(2);
  for (int iv = 0; iv < nv; ++iv) {
    for (int ip = 0; ip < np; ++ip) {
      x << grid.p_grid(ip), grid.v_grid(iv);
      member(iv, ip) = tail_feasible(base, tail_steps, x, tau_N, solver,
                                     obstacle_active, &lp)
                           ? 1
                           : 0;
    }
  }
  return member;
}

}  // namespace mpftc
