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

#include "mpftc/closed_loop.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "mpftc/costs.hpp"

namespace mpftc {

namespace {

double box_violation(const VectorXd& v, const VectorXd& lo,
                     const VectorXd& hi) {
  double worst = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    if (std::isfinite(lo(i))) worst = std::max(worst, lo(i) - v(i));
    if (std::isfinite(hi(i))) worst = std::max(worst, v(i) - hi(i));
  }
  return worst;
}

Eigen::Vector2d sample_disc(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double r = radius * std::sqrt(uni(rng));
  const double phi = 2.0 * EIGEN_PI * uni(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace

ClosedLoopLog run_closed_loop(const BuiltScenario& built) {
  const Scenario& sc = built.scenario;
  ClosedLoopLog log;
  log.name = sc.name;
  log.mode = to_string(sc.mode);
  log.ts = sc.ts;
  log.seed = sc.seed;

  Transcription tr(built.ocp);
  SolverOptions sopts;
  sopts.feas_tol = sc.feas_tol;
  sopts.opt_tol = sc.opt_tol;
  sopts.max_iter = sc.max_iter;
  sopts.elastic_penalty = sc.penalty_sigma;
  Solver solver(sopts);

  const long steps = std::lround(sc.duration / sc.ts);
  VectorXd x = sc.x0;
  double tau = built.tau0;
  Eigen::Vector2d w_true = sc.obstacle.w0;
  std::mt19937_64 rng(sc.seed);

  const bool safe_mode = sc.mode == ControllerMode::kMpftcSafe;
  const bool drifting = sc.obstacle.kind == ObstacleSpec::Kind::kDriftingDisc;
  const bool is_static = sc.obstacle.kind == ObstacleSpec::Kind::kStatic;

  bool have_prev = false;
  OcpSolution prev;

  for (long k = 0; k < steps; ++k) {
    const auto t_start = std::chrono::steady_clock::now();
    const double t = static_cast<double>(k) * sc.ts;
    bool active = false;
    if (is_static) {
      active = t >= sc.obstacle.window_begin && t < sc.obstacle.window_end;
      tr.set_unknown_active(active);
    } else if (drifting) {
      active = t >= sc.obstacle.window_begin && t < sc.obstacle.window_end;
      if (active) {
        tr.set_tube(propagate_tube(built.tube_model, w_true, sc.M));
      } else {
        tr.set_tube({});
      }
    }
    tr.set_initial(x, tau);

    const VectorXd guess =
        have_prev ? tr.shift_guess(prev) : tr.reference_guess();
    StepRecord rec;
    rec.k = k;
    rec.t = t;
    rec.x = x;
    rec.tau = tau;
    rec.obstacle_active = active;
    if (safe_mode && have_prev) {
      rec.cert_violation = tr.guess_violation(guess);
      rec.certificate_ok = rec.cert_violation <= sc.feas_tol;
    }

    OcpSolution sol = tr.solve(solver, guess);
    rec.status = sol.status;
    rec.solver_violation = sol.max_violation;

    const bool solution_usable = sol.max_violation <= sc.feas_tol;
    OcpSolution applied;
    if (safe_mode && !solution_usable && rec.certificate_ok) {
      applied = tr.unpack(guess);
      applied.objective = tr.nlp().objective(guess);
      applied.status = sol.status;
      applied.max_violation = rec.cert_violation;
      rec.used_certificate = true;
      ++log.fallback_count;
    } else {
      applied = std::move(sol);
      if (safe_mode && !solution_usable && !rec.certificate_ok) {
        ++log.uncertified_count;
      }
    }

    rec.u = applied.U.col(0);
    rec.v = applied.V(0);
    rec.value = applied.objective;
    {
      AugmentedState as{x, tau, k};
      AugmentedInput ai{rec.u, 0.0};  // v-penalty tracked separately
      rec.stage_cost = eval_stage_cost(as, ai, *built.ref, *built.cost);
    }
    rec.h_violation = std::max(
        box_violation(x, built.model->state_lower(), built.model->state_upper()),
        box_violation(rec.u, built.model->input_lower(),
                      built.model->input_upper()));
    if (is_static && active) {
      rec.g_value = x(sc.obstacle.pos_index) - sc.obstacle.position;
    } else if (drifting && active) {
      const Eigen::Vector2d pos(x(built.pos_indices[0]),
                                x(built.pos_indices[1]));
      rec.g_value =
          sc.obstacle.r0 * sc.obstacle.r0 - (pos - w_true).squaredNorm();
    }

    if (k % 10 == 0) {
      OpenLoopSample ol;
      ol.k = k;
      ol.X = applied.X;
      ol.Tau = applied.Tau;
      ol.U = applied.U;
      ol.V = applied.V;
      log.open_loops.push_back(std::move(ol));
    }
    if (drifting) log.obstacle_track.push_back(w_true);

    // March the plant and the reference clock.
    x = built.model->step(x, rec.u, sc.ts);
    tau = advance_fictitious_time(tau, rec.v, sc.ts);
    if (drifting) {
      w_true += built.tube_model.drift + sample_disc(rng, sc.obstacle.xi_bound);
    }

    prev = applied;
    have_prev = true;
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
    log.steps.push_back(std::move(rec));
  }
  log.final_x = x;
  log.final_tau = tau;
  return log;
}

}  // namespace mpftc
