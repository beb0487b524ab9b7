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

#ifndef MPFTC_OCP_HPP_
#define MPFTC_OCP_HPP_

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "mpftc/costs.hpp"
#include "mpftc/models.hpp"
#include "mpftc/reference.hpp"
#include "mpftc/sqp.hpp"
#include "mpftc/tube.hpp"

namespace mpftc {

enum class ControllerMode { kMpcFixedV, kMpftc, kMpftcSafe };

std::string to_string(ControllerMode m);

/// Terminal conditions of the two-stage program: plain terminal cost, a
/// point constraint x_N = rx(tau_N), or a safe tail (stabilizing-set
/// membership on nodes N..M plus rest conditions at node M).
struct TerminalSpec {
  enum class Kind { kCostOnly, kPoint, kSafeTail };
  enum class Stabilizer { kInputSlab, kEllipsoid };

  Kind kind = Kind::kCostOnly;
  Stabilizer stabilizer = Stabilizer::kInputSlab;
  // Input slab: slab_lo <= -K (x - rx(tau)) <= slab_hi, row-wise.
  MatrixXd K;
  VectorXd slab_lo, slab_hi;
  // Ellipsoid: (x - rx(tau))' P_eta (x - rx(tau)) <= gamma_star.
  MatrixXd P_eta;
  double gamma_star = 0.0;
  // Safe set at node M: listed state components equal zero.
  std::vector<int> rest_indices;
};

/// A-priori unknown constraint instance attached to the transcription.
struct UnknownConstraintSpec {
  enum class Kind { kNone, kHalfplane, kKeepoutDisc };
  Kind kind = Kind::kNone;
  int pos_index = 0;    // halfplane: x[pos_index] <= bound
  double bound = 0.0;
  std::array<int, 2> pos_xy{{0, 1}};  // keep-out position components
};

struct OcpSpec {
  std::shared_ptr<const PlantModel> model;
  std::shared_ptr<const ReferenceTrajectory> ref;
  std::shared_ptr<const CostSpec> cost;
  double ts = 0.0;
  int N = 0;  // costed horizon
  int M = 0;  // shooting horizon (M >= N; M == N without a safe tail)
  ControllerMode mode = ControllerMode::kMpftc;
  TerminalSpec terminal;
  UnknownConstraintSpec unknown;
  bool relax_unknown = false;   // move g into the objective (exact penalty)
  double penalty_sigma = 1e6;
  double v_bound = -1.0;        // |v| bound; < 0 means ts
  double tail_cost_scale = 1e-6;
  // Safe-policy input used to extend shifted guesses (rest hold).
  std::function<VectorXd(const VectorXd& x)> safe_input;
  // Terminal-controller objective: ||u_0 - target||^2 + v_0^2 instead of
  // the tracking stage cost (used with N = 0).
  bool track_first_input = false;
  VectorXd first_input_target;
  double first_input_weight = 1.0;
};

struct OcpSolution {
  MatrixXd X;    // nx x (M+1), node 0 = initial state
  VectorXd Tau;  // M+1
  MatrixXd U;    // nu x M
  VectorXd V;    // M (zero in fixed-v mode)
  double objective = 0.0;
  SolveStatus status = SolveStatus::kMaxIter;
  double max_violation = 0.0;  // unscaled, over all constraints and bounds
  double kkt_stationarity = 0.0;
  int iterations = 0;
};

/// Direct multiple-shooting transcription of the flexible-tracking program.
/// Holds the per-step data (initial state, constraint activation, tube);
/// the NlpProblem view binds to this object.
class Transcription {
 public:
  explicit Transcription(OcpSpec spec);

  const OcpSpec& spec() const { return spec_; }
  int num_vars() const { return n_vars_; }
  int num_eq() const { return m_eq_; }
  int num_in() const { return m_in_; }

  void set_initial(const VectorXd& x0, double tau0);
  void set_unknown_active(bool active);
  void set_tube(std::vector<UncertaintySet> tube);

  const VectorXd& x0() const { return x0_; }
  double tau0() const { return tau0_; }

  /// NLP view over scaled decision variables. Valid while this object lives.
  NlpProblem nlp() const;

  VectorXd pack(const MatrixXd& X, const VectorXd& Tau, const MatrixXd& U,
                const VectorXd& V) const;
  OcpSolution unpack(const VectorXd& z) const;

  /// Reference-based cold start x_n = rx(tau0 + n ts).
  VectorXd reference_guess() const;
  /// Rollout under the safe input with a frozen reference clock.
  VectorXd hold_guess() const;
  /// One-step shift of a previous solution, extended with the terminal
  /// policy (reference input, or the safe rest-hold with a frozen clock).
  VectorXd shift_guess(const OcpSolution& prev) const;
  /// Unscaled max constraint/bound violation of a candidate (certificates).
  double guess_violation(const VectorXd& z) const;

  OcpSolution solve(Solver& solver, const VectorXd& guess) const;

 private:
  friend class TranscriptionTestPeer;
  struct NodeVars {
    int x = -1, tau = -1, u = -1, v = -1;
  };
  int u_idx(int n) const;
  int v_idx(int n) const;
  int x_idx(int n) const;  // nodes 1..M
  int tau_idx(int n) const;
  int slack_idx(int j) const;
  bool has_v() const { return spec_.mode != ControllerMode::kMpcFixedV; }

  VectorXd unscale(const VectorXd& zs) const;
  void eval_constraints_raw(const VectorXd& z, VectorXd& ceq,
                            VectorXd& cin) const;
  void node_state(const VectorXd& z, int n, VectorXd& x, double& tau) const;

  double objective_raw(const VectorXd& z) const;
  VectorXd gradient_raw(const VectorXd& z) const;
  void jacobians_raw(const VectorXd& z, SpMat& Jeq, SpMat& Jin) const;
  SpMat hessian_raw(const VectorXd& z) const;

  OcpSpec spec_;
  int nx_ = 0, nu_ = 0, stride_ = 0;
  int n_vars_ = 0, m_eq_ = 0, m_in_ = 0, n_slacks_ = 0;
  int g_row0_ = 0, stab_row0_ = 0;
  VectorXd scale_;       // per decision variable
  VectorXd lb_, ub_;     // scaled variable bounds
  VectorXd x0_;
  double tau0_ = 0.0;
  bool unknown_active_ = false;
  std::vector<UncertaintySet> tube_;
};

/// Projection of the initial position onto the reference path: dense grid
/// argmin of the position distance followed by a local golden-section
/// refinement; ties break toward the smaller tau.
double initial_tau_projection(const VectorXd& x0,
                              const ReferenceTrajectory& ref,
                              const std::vector<int>& pos_indices);

}  // namespace mpftc

#endif  // MPFTC_OCP_HPP_
