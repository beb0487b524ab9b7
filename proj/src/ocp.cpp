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

#include "mpftc/ocp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpftc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(ControllerMode m) {
  switch (m) {
    case ControllerMode::kMpcFixedV:
      return "mpc";
    case ControllerMode::kMpftc:
      return "mpftc";
    case ControllerMode::kMpftcSafe:
      return "mpftc_safe";
  }
  return "unknown";
}

Transcription::Transcription(OcpSpec spec) : spec_(std::move(spec)) {
  if (!spec_.model || !spec_.ref || !spec_.cost) {
    throw std::invalid_argument("Transcription: missing model/ref/cost");
  }
  nx_ = spec_.model->nx();
  nu_ = spec_.model->nu();
  if (spec_.cost->nx() != nx_ || spec_.cost->nu() != nu_ ||
      spec_.ref->nx() != nx_ || spec_.ref->nu() != nu_) {
    throw std::invalid_argument("Transcription: dimension mismatch");
  }
  if (spec_.ts <= 0.0 || spec_.M < 1 || spec_.N < 0 || spec_.N > spec_.M) {
    throw std::invalid_argument("Transcription: need ts > 0, 0 <= N <= M");
  }
  if (spec_.terminal.kind == TerminalSpec::Kind::kSafeTail &&
      spec_.M < spec_.N) {
    throw std::invalid_argument("Transcription: safe tail needs M >= N");
  }
  if (spec_.terminal.kind == TerminalSpec::Kind::kPoint &&
      (spec_.N < 1 || spec_.M != spec_.N)) {
    throw std::invalid_argument("Transcription: point terminal needs M == N >= 1");
  }
  if (spec_.v_bound < 0.0) spec_.v_bound = spec_.ts;

  stride_ = nu_ + (has_v() ? 1 : 0) + nx_ + 1;
  n_slacks_ = (spec_.unknown.kind != UnknownConstraintSpec::Kind::kNone &&
               spec_.relax_unknown)
                  ? spec_.M
                  : 0;
  n_vars_ = spec_.M * stride_ + n_slacks_;

  int term_eq = 0;
  if (spec_.terminal.kind == TerminalSpec::Kind::kPoint) term_eq = nx_;
  if (spec_.terminal.kind == TerminalSpec::Kind::kSafeTail) {
    term_eq = static_cast<int>(spec_.terminal.rest_indices.size());
  }
  m_eq_ = spec_.M * (nx_ + 1) + term_eq;

  const int g_rows =
      spec_.unknown.kind == UnknownConstraintSpec::Kind::kNone ? 0 : spec_.M;
  int stab_rows = 0;
  if (spec_.terminal.kind == TerminalSpec::Kind::kSafeTail) {
    const int nodes = spec_.M - spec_.N + 1;
    stab_rows = spec_.terminal.stabilizer == TerminalSpec::Stabilizer::kInputSlab
                    ? 2 * static_cast<int>(spec_.terminal.K.rows()) * nodes
                    : nodes;
  }
  g_row0_ = 0;
  stab_row0_ = g_rows;
  m_in_ = g_rows + stab_rows;

  // Per-variable scaling from typical reference magnitudes.
  VectorXd x_scale = VectorXd::Ones(nx_);
  VectorXd u_scale = VectorXd::Ones(nu_);
  const double t_end = std::max(spec_.ref->domain_end(), spec_.ts);
  for (int i = 0; i <= 200; ++i) {
    const double tau = t_end * i / 200.0;
    x_scale = x_scale.cwiseMax(spec_.ref->state(tau).cwiseAbs());
    u_scale = u_scale.cwiseMax(spec_.ref->input(tau).cwiseAbs());
  }
  scale_.resize(n_vars_);
  lb_ = VectorXd::Constant(n_vars_, -kInf);
  ub_ = VectorXd::Constant(n_vars_, kInf);
  const VectorXd xlo = spec_.model->state_lower();
  const VectorXd xhi = spec_.model->state_upper();
  const VectorXd ulo = spec_.model->input_lower();
  const VectorXd uhi = spec_.model->input_upper();
  for (int n = 0; n < spec_.M; ++n) {
    for (int i = 0; i < nu_; ++i) {
      scale_(u_idx(n) + i) = u_scale(i);
      lb_(u_idx(n) + i) = ulo(i) / u_scale(i);
      ub_(u_idx(n) + i) = uhi(i) / u_scale(i);
    }
    if (has_v()) {
      scale_(v_idx(n)) = spec_.ts;
      lb_(v_idx(n)) = -spec_.v_bound / spec_.ts;
      ub_(v_idx(n)) = spec_.v_bound / spec_.ts;
    }
    const int node = n + 1;
    for (int i = 0; i < nx_; ++i) {
      scale_(x_idx(node) + i) = x_scale(i);
      lb_(x_idx(node) + i) = xlo(i) / x_scale(i);
      ub_(x_idx(node) + i) = xhi(i) / x_scale(i);
    }
    scale_(tau_idx(node)) = 1.0;
  }
  for (int j = 0; j < n_slacks_; ++j) {
    scale_(slack_idx(j)) = 1.0;
    lb_(slack_idx(j)) = 0.0;
  }

  x0_ = VectorXd::Zero(nx_);
}

int Transcription::u_idx(int n) const { return n * stride_; }
int Transcription::v_idx(int n) const { return n * stride_ + nu_; }
int Transcription::x_idx(int n) const {
  return (n - 1) * stride_ + nu_ + (has_v() ? 1 : 0);
}
int Transcription::tau_idx(int n) const { return x_idx(n) + nx_; }
int Transcription::slack_idx(int j) const { return spec_.M * stride_ + j; }

void Transcription::set_initial(const VectorXd& x0, double tau0) {
  if (x0.size() != nx_) {
    throw std::invalid_argument("set_initial: state dimension mismatch");
  }
  x0_ = x0;
  tau0_ = tau0;
}

void Transcription::set_unknown_active(bool active) {
  unknown_active_ = active;
}

void Transcription::set_tube(std::vector<UncertaintySet> tube) {
  if (!tube.empty() && static_cast<int>(tube.size()) < spec_.M + 1) {
    throw std::invalid_argument("set_tube: tube shorter than horizon");
  }
  tube_ = std::move(tube);
  unknown_active_ = !tube_.empty();
}

VectorXd Transcription::unscale(const VectorXd& zs) const {
  return zs.cwiseProduct(scale_);
}

void Transcription::node_state(const VectorXd& z, int n, VectorXd& x,
                               double& tau) const {
  if (n == 0) {
    x = x0_;
    tau = tau0_;
  } else {
    x = z.segment(x_idx(n), nx_);
    tau = z(tau_idx(n));
  }
}

namespace {

// Worst-case keep-out value against the stored disc at node n.
double keepout_value(const UncertaintySet& s, const VectorXd& x,
                     const std::array<int, 2>& pos) {
  const Eigen::Vector2d d(x(pos[0]) - s.center(0), x(pos[1]) - s.center(1));
  return s.radius * s.radius - d.squaredNorm();
}

}  // namespace

double Transcription::objective_raw(const VectorXd& z) const {
  const auto& sp = spec_;
  const MatrixXd& W = sp.cost->W();
  double total = 0.0;
  VectorXd x(nx_), zvec(nx_ + nu_);
  double tau;
  for (int n = 0; n < sp.M; ++n) {
    const double wgt = n < sp.N ? 1.0 : sp.tail_cost_scale;
    if (wgt == 0.0) continue;
    node_state(z, n, x, tau);
    const VectorXd u = z.segment(u_idx(n), nu_);
    zvec.head(nx_) = x - sp.ref->state(tau);
    zvec.tail(nu_) = u - sp.ref->input(tau);
    total += wgt * zvec.dot(W * zvec);
    if (has_v()) {
      const double v = z(v_idx(n));
      total += wgt * sp.cost->w() * v * v;
    }
  }
  if (sp.N >= 1) {
    node_state(z, sp.N, x, tau);
    const VectorXd dx = x - sp.ref->state(tau);
    total += dx.dot(sp.cost->P() * dx);
  }
  if (sp.track_first_input) {
    const VectorXd du = z.segment(u_idx(0), nu_) - sp.first_input_target;
    total += sp.first_input_weight * du.squaredNorm();
    if (has_v()) {
      total += sp.first_input_weight * z(v_idx(0)) * z(v_idx(0));
    }
  }
  for (int j = 0; j < n_slacks_; ++j) {
    total += sp.penalty_sigma * z(slack_idx(j));
  }
  return total;
}

VectorXd Transcription::gradient_raw(const VectorXd& z) const {
  const auto& sp = spec_;
  const MatrixXd& W = sp.cost->W();
  VectorXd grad = VectorXd::Zero(n_vars_);
  VectorXd x(nx_), zvec(nx_ + nu_), rprime(nx_ + nu_);
  double tau;
  for (int n = 0; n < sp.M; ++n) {
    const double wgt = n < sp.N ? 1.0 : sp.tail_cost_scale;
    if (wgt == 0.0) continue;
    node_state(z, n, x, tau);
    const VectorXd u = z.segment(u_idx(n), nu_);
    zvec.head(nx_) = x - sp.ref->state(tau);
    zvec.tail(nu_) = u - sp.ref->input(tau);
    const VectorXd Wz = 2.0 * wgt * (W * zvec);
    if (n >= 1) {
      grad.segment(x_idx(n), nx_) += Wz.head(nx_);
      rprime.head(nx_) = sp.ref->state_derivative(tau);
      rprime.tail(nu_) = sp.ref->input_derivative(tau);
      grad(tau_idx(n)) -= Wz.dot(rprime);
    }
    grad.segment(u_idx(n), nu_) += Wz.tail(nu_);
    if (has_v()) {
      grad(v_idx(n)) += 2.0 * wgt * sp.cost->w() * z(v_idx(n));
    }
  }
  if (sp.N >= 1) {
    node_state(z, sp.N, x, tau);
    const VectorXd dx = x - sp.ref->state(tau);
    const VectorXd Pdx = 2.0 * (sp.cost->P() * dx);
    grad.segment(x_idx(sp.N), nx_) += Pdx;
    grad(tau_idx(sp.N)) -= Pdx.dot(sp.ref->state_derivative(tau));
  }
  if (sp.track_first_input) {
    grad.segment(u_idx(0), nu_) +=
        2.0 * sp.first_input_weight *
        (z.segment(u_idx(0), nu_) - sp.first_input_target);
    if (has_v()) {
      grad(v_idx(0)) += 2.0 * sp.first_input_weight * z(v_idx(0));
    }
  }
  for (int j = 0; j < n_slacks_; ++j) {
    grad(slack_idx(j)) += sp.penalty_sigma;
  }
  return grad;
}

void Transcription::eval_constraints_raw(const VectorXd& z, VectorXd& ceq,
                                         VectorXd& cin) const {
  const auto& sp = spec_;
  ceq.resize(m_eq_);
  cin.resize(m_in_);
  VectorXd x(nx_), xn(nx_);
  double tau, taun;
  for (int n = 0; n < sp.M; ++n) {
    node_state(z, n, x, tau);
    node_state(z, n + 1, xn, taun);
    const VectorXd u = z.segment(u_idx(n), nu_);
    const int row = n * (nx_ + 1);
    ceq.segment(row, nx_) = xn - sp.model->step(x, u, sp.ts);
    const double v = has_v() ? z(v_idx(n)) : 0.0;
    ceq(row + nx_) = taun - tau - sp.ts - v;
  }
  int row = sp.M * (nx_ + 1);
  if (sp.terminal.kind == TerminalSpec::Kind::kPoint) {
    node_state(z, sp.N, x, tau);
    ceq.segment(row, nx_) = x - sp.ref->state(tau);
  } else if (sp.terminal.kind == TerminalSpec::Kind::kSafeTail) {
    node_state(z, sp.M, x, tau);
    for (int i : sp.terminal.rest_indices) ceq(row++) = x(i);
  }

  if (sp.unknown.kind != UnknownConstraintSpec::Kind::kNone) {
    for (int j = 0; j < sp.M; ++j) {
      const int n = j + 1;
      node_state(z, n, x, tau);
      double gval = -1.0;
      if (unknown_active_) {
        if (sp.unknown.kind == UnknownConstraintSpec::Kind::kHalfplane) {
          gval = x(sp.unknown.pos_index) - sp.unknown.bound;
        } else if (!tube_.empty()) {
          gval = keepout_value(tube_[n], x, sp.unknown.pos_xy);
        }
      }
      if (n_slacks_ > 0) gval -= z(slack_idx(j));
      cin(g_row0_ + j) = gval;
    }
  }

  if (sp.terminal.kind == TerminalSpec::Kind::kSafeTail) {
    int r = stab_row0_;
    for (int n = sp.N; n <= sp.M; ++n) {
      node_state(z, n, x, tau);
      const VectorXd dx = x - sp.ref->state(tau);
      if (sp.terminal.stabilizer == TerminalSpec::Stabilizer::kInputSlab) {
        const VectorXd s = -(sp.terminal.K * dx);
        for (int i = 0; i < s.size(); ++i) {
          cin(r++) = s(i) - sp.terminal.slab_hi(i);
          cin(r++) = sp.terminal.slab_lo(i) - s(i);
        }
      } else {
        cin(r++) = dx.dot(sp.terminal.P_eta * dx) / sp.terminal.gamma_star - 1.0;
      }
    }
  }
}

void Transcription::jacobians_raw(const VectorXd& z, SpMat& Jeq,
                                  SpMat& Jin) const {
  const auto& sp = spec_;
  std::vector<Eigen::Triplet<double>> te, ti;
  te.reserve(static_cast<size_t>(spec_.M) * (nx_ + 1) * (nx_ + nu_ + 2));
  auto put_eq = [&](int r, int c, double val) {
    te.emplace_back(r, c, val * scale_(c));
  };
  auto put_in = [&](int r, int c, double val) {
    ti.emplace_back(r, c, val * scale_(c));
  };

  VectorXd x(nx_);
  double tau;
  MatrixXd A(nx_, nx_), B(nx_, nu_);
  for (int n = 0; n < sp.M; ++n) {
    node_state(z, n, x, tau);
    const VectorXd u = z.segment(u_idx(n), nu_);
    sp.model->step_jacobians(x, u, sp.ts, A, B);
    const int row = n * (nx_ + 1);
    for (int i = 0; i < nx_; ++i) {
      put_eq(row + i, x_idx(n + 1) + i, 1.0);
      for (int c = 0; c < nu_; ++c) put_eq(row + i, u_idx(n) + c, -B(i, c));
      if (n >= 1) {
        for (int c = 0; c < nx_; ++c) put_eq(row + i, x_idx(n) + c, -A(i, c));
      }
    }
    put_eq(row + nx_, tau_idx(n + 1), 1.0);
    if (n >= 1) put_eq(row + nx_, tau_idx(n), -1.0);
    if (has_v()) put_eq(row + nx_, v_idx(n), -1.0);
  }
  int row = sp.M * (nx_ + 1);
  if (sp.terminal.kind == TerminalSpec::Kind::kPoint) {
    node_state(z, sp.N, x, tau);
    const VectorXd rp = sp.ref->state_derivative(tau);
    for (int i = 0; i < nx_; ++i) {
      if (sp.N >= 1) {
        put_eq(row + i, x_idx(sp.N) + i, 1.0);
        put_eq(row + i, tau_idx(sp.N), -rp(i));
      }
    }
  } else if (sp.terminal.kind == TerminalSpec::Kind::kSafeTail) {
    for (int i : sp.terminal.rest_indices) {
      put_eq(row++, x_idx(sp.M) + i, 1.0);
    }
  }

  if (sp.unknown.kind != UnknownConstraintSpec::Kind::kNone) {
    for (int j = 0; j < sp.M; ++j) {
      const int n = j + 1;
      node_state(z, n, x, tau);
      const int r = g_row0_ + j;
      if (sp.unknown.kind == UnknownConstraintSpec::Kind::kHalfplane) {
        put_in(r, x_idx(n) + sp.unknown.pos_index, unknown_active_ ? 1.0 : 0.0);
      } else {
        double gx = 0.0, gy = 0.0;
        if (unknown_active_ && !tube_.empty()) {
          const auto& s = tube_[n];
          gx = -2.0 * (x(sp.unknown.pos_xy[0]) - s.center(0));
          gy = -2.0 * (x(sp.unknown.pos_xy[1]) - s.center(1));
        }
        put_in(r, x_idx(n) + sp.unknown.pos_xy[0], gx);
        put_in(r, x_idx(n) + sp.unknown.pos_xy[1], gy);
      }
      if (n_slacks_ > 0) put_in(r, slack_idx(j), -1.0);
    }
  }

  if (sp.terminal.kind == TerminalSpec::Kind::kSafeTail) {
    int r = stab_row0_;
    for (int n = sp.N; n <= sp.M; ++n) {
      node_state(z, n, x, tau);
      const VectorXd rp = sp.ref->state_derivative(tau);
      const VectorXd dx = x - sp.ref->state(tau);
      if (sp.terminal.stabilizer == TerminalSpec::Stabilizer::kInputSlab) {
        for (int i = 0; i < sp.terminal.K.rows(); ++i) {
          const VectorXd k = sp.terminal.K.row(i);
          const double ktau = k.dot(rp);
          if (n >= 1) {
            for (int c = 0; c < nx_; ++c) {
              put_in(r, x_idx(n) + c, -k(c));
              put_in(r + 1, x_idx(n) + c, k(c));
            }
            put_in(r, tau_idx(n), ktau);
            put_in(r + 1, tau_idx(n), -ktau);
          }
          r += 2;
        }
      } else {
        const VectorXd Pdx = 2.0 * (sp.terminal.P_eta * dx) / sp.terminal.gamma_star;
        if (n >= 1) {
          for (int c = 0; c < nx_; ++c) put_in(r, x_idx(n) + c, Pdx(c));
          put_in(r, tau_idx(n), -Pdx.dot(rp));
        }
        r += 1;
      }
    }
  }

  Jeq.resize(m_eq_, n_vars_);
  Jeq.setFromTriplets(te.begin(), te.end());
  Jin.resize(m_in_, n_vars_);
  Jin.setFromTriplets(ti.begin(), ti.end());
}

SpMat Transcription::hessian_raw(const VectorXd& z) const {
  const auto& sp = spec_;
  const MatrixXd& W = sp.cost->W();
  std::vector<Eigen::Triplet<double>> th;
  auto put = [&](int r, int c, double val) {
    const double v = val * scale_(r) * scale_(c);
    th.emplace_back(r, c, v);
    if (r != c) th.emplace_back(c, r, v);
  };

  VectorXd x(nx_);
  double tau;
  VectorXd rprime(nx_ + nu_);
  for (int n = 0; n < sp.M; ++n) {
    const double wgt = n < sp.N ? 1.0 : sp.tail_cost_scale;
    if (wgt == 0.0) continue;
    node_state(z, n, x, tau);
    rprime.head(nx_) = sp.ref->state_derivative(tau);
    rprime.tail(nu_) = sp.ref->input_derivative(tau);
    // Gauss-Newton of [dx; du]' W [dx; du] in (x, u, tau).
    for (int i = 0; i < nu_; ++i) {
      for (int j = i; j < nu_; ++j) {
        put(u_idx(n) + i, u_idx(n) + j, 2.0 * wgt * W(nx_ + i, nx_ + j));
      }
    }
    if (has_v()) put(v_idx(n), v_idx(n), 2.0 * wgt * sp.cost->w());
    if (n >= 1) {
      for (int i = 0; i < nx_; ++i) {
        for (int j = i; j < nx_; ++j) {
          put(x_idx(n) + i, x_idx(n) + j, 2.0 * wgt * W(i, j));
        }
        for (int j = 0; j < nu_; ++j) {
          put(x_idx(n) + i, u_idx(n) + j, 2.0 * wgt * W(i, nx_ + j));
        }
      }
      const VectorXd Wr = W * rprime;
      for (int i = 0; i < nx_; ++i) {
        put(x_idx(n) + i, tau_idx(n), -2.0 * wgt * Wr(i));
      }
      for (int i = 0; i < nu_; ++i) {
        put(u_idx(n) + i, tau_idx(n), -2.0 * wgt * Wr(nx_ + i));
      }
      put(tau_idx(n), tau_idx(n), 2.0 * wgt * rprime.dot(Wr));
    }
  }
  if (sp.N >= 1) {
    node_state(z, sp.N, x, tau);
    const VectorXd rp = sp.ref->state_derivative(tau);
    const MatrixXd& P = sp.cost->P();
    for (int i = 0; i < nx_; ++i) {
      for (int j = i; j < nx_; ++j) {
        put(x_idx(sp.N) + i, x_idx(sp.N) + j, 2.0 * P(i, j));
      }
    }
    const VectorXd Pr = P * rp;
    for (int i = 0; i < nx_; ++i) {
      put(x_idx(sp.N) + i, tau_idx(sp.N), -2.0 * Pr(i));
    }
    put(tau_idx(sp.N), tau_idx(sp.N), 2.0 * rp.dot(Pr));
  }
  if (sp.track_first_input) {
    for (int i = 0; i < nu_; ++i) {
      put(u_idx(0) + i, u_idx(0) + i, 2.0 * sp.first_input_weight);
    }
    if (has_v()) put(v_idx(0), v_idx(0), 2.0 * sp.first_input_weight);
  }

  SpMat H(n_vars_, n_vars_);
  H.setFromTriplets(th.begin(), th.end());
  return H;
}

NlpProblem Transcription::nlp() const {
  NlpProblem p;
  p.n = n_vars_;
  p.m_eq = m_eq_;
  p.m_in = m_in_;
  p.lb = lb_;
  p.ub = ub_;
  p.x0 = reference_guess();
  p.objective = [this](const VectorXd& zs) {
    return objective_raw(unscale(zs));
  };
  p.gradient = [this](const VectorXd& zs) {
    return VectorXd(gradient_raw(unscale(zs)).cwiseProduct(scale_));
  };
  p.constraints = [this](const VectorXd& zs, VectorXd& ceq, VectorXd& cin) {
    eval_constraints_raw(unscale(zs), ceq, cin);
  };
  p.jacobians = [this](const VectorXd& zs, SpMat& Jeq, SpMat& Jin) {
    jacobians_raw(unscale(zs), Jeq, Jin);
  };
  p.hessian = [this](const VectorXd& zs) { return hessian_raw(unscale(zs)); };
  return p;
}

VectorXd Transcription::pack(const MatrixXd& X, const VectorXd& Tau,
                             const MatrixXd& U, const VectorXd& V) const {
  VectorXd z = VectorXd::Zero(n_vars_);
  for (int n = 0; n < spec_.M; ++n) {
    z.segment(u_idx(n), nu_) = U.col(n);
    if (has_v()) z(v_idx(n)) = V(n);
    z.segment(x_idx(n + 1), nx_) = X.col(n + 1);
    z(tau_idx(n + 1)) = Tau(n + 1);
  }
  // Feasible slack fill for penalty mode.
  if (n_slacks_ > 0) {
    for (int j = 0; j < spec_.M; ++j) {
      const int n = j + 1;
      double gval = -1.0;
      if (unknown_active_) {
        if (spec_.unknown.kind == UnknownConstraintSpec::Kind::kHalfplane) {
          gval = X(spec_.unknown.pos_index, n) - spec_.unknown.bound;
        } else if (!tube_.empty()) {
          gval = keepout_value(tube_[n], X.col(n), spec_.unknown.pos_xy);
        }
      }
      z(slack_idx(j)) = std::max(0.0, gval);
    }
  }
  return z.cwiseQuotient(scale_);
}

OcpSolution Transcription::unpack(const VectorXd& zs) const {
  const VectorXd z = unscale(zs);
  OcpSolution sol;
  sol.X.resize(nx_, spec_.M + 1);
  sol.Tau.resize(spec_.M + 1);
  sol.U.resize(nu_, spec_.M);
  sol.V = VectorXd::Zero(spec_.M);
  sol.X.col(0) = x0_;
  sol.Tau(0) = tau0_;
  for (int n = 0; n < spec_.M; ++n) {
    sol.U.col(n) = z.segment(u_idx(n), nu_);
    if (has_v()) sol.V(n) = z(v_idx(n));
    sol.X.col(n + 1) = z.segment(x_idx(n + 1), nx_);
    sol.Tau(n + 1) = z(tau_idx(n + 1));
  }
  return sol;
}

VectorXd Transcription::reference_guess() const {
  MatrixXd X(nx_, spec_.M + 1), U(nu_, spec_.M);
  VectorXd Tau(spec_.M + 1), V = VectorXd::Zero(spec_.M);
  for (int n = 0; n <= spec_.M; ++n) {
    const double tau = tau0_ + n * spec_.ts;
    X.col(n) = spec_.ref->state(tau);
    Tau(n) = tau;
    if (n < spec_.M) U.col(n) = spec_.ref->input(tau);
  }
  X.col(0) = x0_;
  Tau(0) = tau0_;
  return pack(X, Tau, U, V);
}

VectorXd Transcription::hold_guess() const {
  MatrixXd X(nx_, spec_.M + 1), U(nu_, spec_.M);
  VectorXd Tau(spec_.M + 1), V(spec_.M);
  X.col(0) = x0_;
  Tau(0) = tau0_;
  const double v = has_v() ? -spec_.ts : 0.0;
  for (int n = 0; n < spec_.M; ++n) {
    U.col(n) = spec_.safe_input ? spec_.safe_input(X.col(n))
                                : VectorXd::Zero(nu_);
    V(n) = v;
    X.col(n + 1) = spec_.model->step(X.col(n), U.col(n), spec_.ts);
    Tau(n + 1) = Tau(n) + spec_.ts + v;
  }
  return pack(X, Tau, U, V);
}

VectorXd Transcription::shift_guess(const OcpSolution& prev) const {
  const int M = spec_.M;
  MatrixXd X(nx_, M + 1), U(nu_, M);
  VectorXd Tau(M + 1), V = VectorXd::Zero(M);
  for (int n = 0; n + 1 <= M; ++n) {
    if (n < M - 1) {
      U.col(n) = prev.U.col(n + 1);
      V(n) = prev.V(n + 1);
    }
    X.col(n) = prev.X.col(n + 1);
    Tau(n) = prev.Tau(n + 1);
  }
  X.col(0) = x0_;
  Tau(0) = tau0_;

  // Extend with the terminal policy.
  VectorXd u_last;
  double v_last = 0.0;
  const VectorXd x_prev_end = prev.X.col(M);
  const double tau_prev_end = prev.Tau(M);
  switch (spec_.terminal.kind) {
    case TerminalSpec::Kind::kSafeTail:
      u_last = spec_.safe_input ? spec_.safe_input(x_prev_end)
                                : VectorXd::Zero(nu_);
      v_last = has_v() ? -spec_.ts : 0.0;
      break;
    case TerminalSpec::Kind::kPoint:
      u_last = spec_.ref->input(tau_prev_end);
      break;
    case TerminalSpec::Kind::kCostOnly:
      u_last = prev.U.col(M - 1);
      break;
  }
  U.col(M - 1) = u_last;
  V(M - 1) = v_last;
  X.col(M) = spec_.model->step(x_prev_end, u_last, spec_.ts);
  Tau(M) = tau_prev_end + spec_.ts + v_last;
  return pack(X, Tau, U, V);
}

double Transcription::guess_violation(const VectorXd& zs) const {
  const VectorXd z = unscale(zs);
  VectorXd ceq, cin;
  eval_constraints_raw(z, ceq, cin);
  double v = 0.0;
  for (int i = 0; i < ceq.size(); ++i) v = std::max(v, std::abs(ceq(i)));
  for (int i = 0; i < cin.size(); ++i) v = std::max(v, cin(i));
  const VectorXd lbr = lb_.cwiseProduct(scale_);
  const VectorXd ubr = ub_.cwiseProduct(scale_);
  for (int i = 0; i < n_vars_; ++i) {
    if (std::isfinite(lbr(i))) v = std::max(v, lbr(i) - z(i));
    if (std::isfinite(ubr(i))) v = std::max(v, z(i) - ubr(i));
  }
  return v;
}

OcpSolution Transcription::solve(Solver& solver, const VectorXd& guess) const {
  const NlpProblem p = nlp();
  SolveOutput out = solver.solve(p, guess);
  OcpSolution sol = unpack(out.x);
  sol.objective = out.report.objective;
  sol.status = out.report.status;
  sol.max_violation = guess_violation(out.x);
  sol.kkt_stationarity = out.report.stationarity;
  sol.iterations = out.report.iterations;
  // A max-iter exit that is feasible and nearly stationary is still usable;
  // keep the raw status for the caller to decide.
  return sol;
}

double initial_tau_projection(const VectorXd& x0,
                              const ReferenceTrajectory& ref,
                              const std::vector<int>& pos_indices) {
  const double t_end = ref.domain_end();
  if (t_end <= 0.0) throw std::invalid_argument("projection: empty domain");
  VectorXd pos(pos_indices.size());
  for (size_t i = 0; i < pos_indices.size(); ++i) pos(i) = x0(pos_indices[i]);

  auto dist = [&](double tau) {
    const VectorXd r = ref.state(tau);
    double d = 0.0;
    for (size_t i = 0; i < pos_indices.size(); ++i) {
      const double e = pos(static_cast<int>(i)) - r(pos_indices[i]);
      d += e * e;
    }
    return d;
  };

  const int n_scan = 4000;
  double best_tau = 0.0, best = dist(0.0);
  for (int i = 1; i <= n_scan; ++i) {
    const double tau = t_end * i / n_scan;
    const double d = dist(tau);
    if (d < best) {
      best = d;
      best_tau = tau;
    }
  }
  // Golden-section refinement around the scan minimum.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::max(0.0, best_tau - t_end / n_scan);
  double b = std::min(t_end, best_tau + t_end / n_scan);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = dist(c), fd = dist(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = dist(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = dist(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace mpftc
