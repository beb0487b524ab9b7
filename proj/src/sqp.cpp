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

#include "mpftc/sqp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mpftc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double l1_violation(const VectorXd& ceq, const VectorXd& cin) {
  double v = 0.0;
  for (int i = 0; i < ceq.size(); ++i) v += std::abs(ceq(i));
  for (int i = 0; i < cin.size(); ++i) v += std::max(0.0, cin(i));
  return v;
}

double max_violation(const VectorXd& ceq, const VectorXd& cin) {
  double v = 0.0;
  for (int i = 0; i < ceq.size(); ++i) v = std::max(v, std::abs(ceq(i)));
  for (int i = 0; i < cin.size(); ++i) v = std::max(v, cin(i));
  return v;
}

struct BoundRows {
  std::vector<int> up_idx, lo_idx;  // variable index per row
};

// Rows appended to Ain for the finite variable bounds of the step QP.
void append_bound_rows(const VectorXd& x, const VectorXd& lb,
                       const VectorXd& ub,
                       std::vector<Eigen::Triplet<double>>& trips,
                       std::vector<double>& rhs, int row0, BoundRows& map) {
  int row = row0;
  for (int i = 0; i < x.size(); ++i) {
    if (ub.size() && ub(i) < kInf) {
      trips.emplace_back(row, i, 1.0);
      rhs.push_back(ub(i) - x(i));
      map.up_idx.push_back(i);
      ++row;
    }
  }
  for (int i = 0; i < x.size(); ++i) {
    if (lb.size() && lb(i) > -kInf) {
      trips.emplace_back(row, i, -1.0);
      rhs.push_back(x(i) - lb(i));
      map.lo_idx.push_back(i);
      ++row;
    }
  }
}

}  // namespace

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kMaxIter:
      return "max-iter";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kNumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

double constraint_violation(const NlpProblem& p, const VectorXd& x) {
  VectorXd ceq(p.m_eq), cin(p.m_in);
  if (p.constraints) p.constraints(x, ceq, cin);
  double v = max_violation(ceq, cin);
  for (int i = 0; i < x.size(); ++i) {
    if (p.ub.size() && p.ub(i) < kInf) v = std::max(v, x(i) - p.ub(i));
    if (p.lb.size() && p.lb(i) > -kInf) v = std::max(v, p.lb(i) - x(i));
  }
  return v;
}

KktResiduals check_kkt(const NlpProblem& p, const VectorXd& x,
                       const Multipliers& mult) {
  KktResiduals r;
  VectorXd grad = p.gradient(x);
  VectorXd ceq(p.m_eq), cin(p.m_in);
  if (p.constraints) p.constraints(x, ceq, cin);
  SpMat Jeq, Jin;
  if (p.jacobians) p.jacobians(x, Jeq, Jin);

  VectorXd lag = grad;
  if (p.m_eq && mult.eq.size()) lag += Jeq.transpose() * mult.eq;
  if (p.m_in && mult.in.size()) lag += Jin.transpose() * mult.in;
  if (mult.bound_up.size() == x.size()) lag += mult.bound_up;
  if (mult.bound_lo.size() == x.size()) lag -= mult.bound_lo;
  r.stationarity = lag.cwiseAbs().maxCoeff();

  r.feasibility = constraint_violation(p, x);

  double comp = 0.0;
  for (int i = 0; i < p.m_in && i < mult.in.size(); ++i) {
    comp = std::max(comp, std::abs(mult.in(i) * cin(i)));
  }
  for (int i = 0; i < x.size() && mult.bound_up.size() == x.size(); ++i) {
    if (p.ub.size() && p.ub(i) < kInf) {
      comp = std::max(comp, std::abs(mult.bound_up(i) * (x(i) - p.ub(i))));
    }
  }
  for (int i = 0; i < x.size() && mult.bound_lo.size() == x.size(); ++i) {
    if (p.lb.size() && p.lb(i) > -kInf) {
      comp = std::max(comp, std::abs(mult.bound_lo(i) * (p.lb(i) - x(i))));
    }
  }
  r.complementarity = comp;
  return r;
}

SolveOutput Solver::solve(const NlpProblem& p) { return solve(p, p.x0); }

SolveOutput Solver::solve(const NlpProblem& p, const VectorXd& x_start) {
  const int n = p.n;
  SolveOutput out;
  out.x = x_start;
  // Clamp the start into the box.
  for (int i = 0; i < n; ++i) {
    if (p.ub.size() && out.x(i) > p.ub(i)) out.x(i) = p.ub(i);
    if (p.lb.size() && out.x(i) < p.lb(i)) out.x(i) = p.lb(i);
  }

  VectorXd x = out.x;
  double f = p.objective(x);
  VectorXd grad = p.gradient(x);
  VectorXd ceq(p.m_eq), cin(p.m_in);
  if (p.constraints) {
    p.constraints(x, ceq, cin);
  } else {
    ceq.resize(0);
    cin.resize(0);
  }
  if (!std::isfinite(f) || !grad.allFinite() || !ceq.allFinite() ||
      !cin.allFinite()) {
    out.report.status = SolveStatus::kNumericalFailure;
    return out;
  }

  // Dense BFGS state, used only when the problem supplies no Hessian model.
  Eigen::MatrixXd bfgs;
  if (!p.hessian) bfgs = Eigen::MatrixXd::Identity(n, n);

  double merit_mu = 1.0;
  double best_merit = kInf;
  VectorXd best_x = x;
  int stall = 0;

  Multipliers mult;
  mult.eq = VectorXd::Zero(p.m_eq);
  mult.in = VectorXd::Zero(p.m_in);
  mult.bound_lo = VectorXd::Zero(n);
  mult.bound_up = VectorXd::Zero(n);

  SolveReport& rep = out.report;
  rep.status = SolveStatus::kMaxIter;

  for (int iter = 0; iter < opts_.max_iter; ++iter) {
    rep.iterations = iter;
    SpMat Jeq(p.m_eq, n), Jin(p.m_in, n);
    if (p.jacobians) p.jacobians(x, Jeq, Jin);

    // Convergence test with the current multiplier estimate.
    {
      VectorXd lag = grad;
      if (p.m_eq) lag += Jeq.transpose() * mult.eq;
      if (p.m_in) lag += Jin.transpose() * mult.in;
      lag += mult.bound_up - mult.bound_lo;
      const double mult_sum = mult.eq.cwiseAbs().sum() +
                              mult.in.cwiseAbs().sum() +
                              mult.bound_up.sum() + mult.bound_lo.sum();
      const int m_total = p.m_eq + p.m_in + 2 * n;
      const double s_d =
          std::max(100.0, mult_sum / std::max(1, m_total)) / 100.0;
      rep.stationarity = lag.cwiseAbs().maxCoeff() / s_d;
      rep.feasibility = constraint_violation(p, x);
      double comp = 0.0;
      for (int i = 0; i < p.m_in; ++i) {
        comp = std::max(comp, std::abs(mult.in(i) * cin(i)));
      }
      rep.complementarity = comp / s_d;
      rep.objective = f;
      if (iter > 0 && rep.stationarity <= opts_.opt_tol &&
          rep.feasibility <= opts_.feas_tol &&
          rep.complementarity <= std::sqrt(opts_.opt_tol)) {
        rep.status = SolveStatus::kOptimal;
        out.x = x;
        out.multipliers = mult;
        return out;
      }
    }

    // ---- step QP ----
    SpMat H;
    if (p.hessian) {
      H = p.hessian(x);
    } else {
      H = bfgs.sparseView();
    }

    QpProblem qp;
    qp.H = H;
    qp.g = grad;
    qp.Aeq = Jeq;
    qp.beq = -ceq;
    BoundRows bmap;
    {
      std::vector<Eigen::Triplet<double>> trips;
      std::vector<double> rhs;
      for (int c = 0; c < Jin.outerSize(); ++c) {
        for (SpMat::InnerIterator it(Jin, c); it; ++it) {
          trips.emplace_back(it.row(), it.col(), it.value());
        }
      }
      for (int i = 0; i < p.m_in; ++i) rhs.push_back(-cin(i));
      append_bound_rows(x, p.lb, p.ub, trips, rhs, p.m_in, bmap);
      qp.Ain.resize(static_cast<int>(rhs.size()), n);
      qp.Ain.setFromTriplets(trips.begin(), trips.end());
      qp.bin = Eigen::Map<VectorXd>(rhs.data(), rhs.size());
    }

    QpResult qres = qp_.solve(qp, {opts_.qp_max_iter, 1e-10});
    VectorXd d;
    bool elastic_used = false;
    if (qres.optimal) {
      d = qres.x;
    } else {
      // Elastic retry: slacks on every general constraint keep the QP
      // feasible; the l1 penalty recovers the strict solution when one
      // exists.
      ++rep.qp_failures;
      elastic_used = true;
      const double rho = opts_.elastic_penalty;
      const int me = p.m_eq, mi = p.m_in;
      const int ne = n + 2 * me + mi;  // d, t+ , t-, t_in
      QpProblem eqp;
      {
        std::vector<Eigen::Triplet<double>> ht;
        for (int c = 0; c < H.outerSize(); ++c) {
          for (SpMat::InnerIterator it(H, c); it; ++it) {
            ht.emplace_back(it.row(), it.col(), it.value());
          }
        }
        for (int i = n; i < ne; ++i) ht.emplace_back(i, i, 1e-10);
        eqp.H.resize(ne, ne);
        eqp.H.setFromTriplets(ht.begin(), ht.end());
      }
      eqp.g.setConstant(ne, rho);
      eqp.g.head(n) = grad;
      {
        std::vector<Eigen::Triplet<double>> at;
        for (int c = 0; c < Jeq.outerSize(); ++c) {
          for (SpMat::InnerIterator it(Jeq, c); it; ++it) {
            at.emplace_back(it.row(), it.col(), it.value());
          }
        }
        for (int i = 0; i < me; ++i) {
          at.emplace_back(i, n + i, -1.0);
          at.emplace_back(i, n + me + i, 1.0);
        }
        eqp.Aeq.resize(me, ne);
        eqp.Aeq.setFromTriplets(at.begin(), at.end());
        eqp.beq = -ceq;
      }
      {
        std::vector<Eigen::Triplet<double>> trips;
        std::vector<double> rhs;
        for (int c = 0; c < Jin.outerSize(); ++c) {
          for (SpMat::InnerIterator it(Jin, c); it; ++it) {
            trips.emplace_back(it.row(), it.col(), it.value());
          }
        }
        for (int i = 0; i < mi; ++i) {
          trips.emplace_back(i, n + 2 * me + i, -1.0);
          rhs.push_back(-cin(i));
        }
        BoundRows dummy;
        append_bound_rows(x, p.lb, p.ub, trips, rhs, mi, dummy);
        int row = static_cast<int>(rhs.size());
        for (int i = n; i < ne; ++i) {  // slacks >= 0
          trips.emplace_back(row++, i, -1.0);
          rhs.push_back(0.0);
        }
        eqp.Ain.resize(row, ne);
        eqp.Ain.setFromTriplets(trips.begin(), trips.end());
        eqp.bin = Eigen::Map<VectorXd>(rhs.data(), rhs.size());
      }
      QpResult eres = qp_elastic_.solve(eqp, {opts_.qp_max_iter, 1e-10});
      if (!eres.optimal) {
        rep.status = rep.feasibility > opts_.feas_tol
                         ? SolveStatus::kInfeasible
                         : SolveStatus::kNumericalFailure;
        out.x = best_merit < kInf ? best_x : x;
        out.multipliers = mult;
        return out;
      }
      d = eres.x.head(n);
      qres = eres;  // multipliers: eq part aligned; ineq rows prefix aligned
    }

    // Multiplier update from the QP duals.
    if (p.m_eq) mult.eq = qres.lam_eq.head(p.m_eq);
    if (p.m_in) mult.in = qres.mu_in.head(p.m_in);
    mult.bound_up.setZero();
    mult.bound_lo.setZero();
    if (!elastic_used) {
      int r = p.m_in;
      for (size_t j = 0; j < bmap.up_idx.size(); ++j, ++r) {
        mult.bound_up(bmap.up_idx[j]) = qres.mu_in(r);
      }
      for (size_t j = 0; j < bmap.lo_idx.size(); ++j, ++r) {
        mult.bound_lo(bmap.lo_idx[j]) = qres.mu_in(r);
      }
    }

    // ---- l1 merit line search ----
    const double mult_inf =
        std::max({p.m_eq ? mult.eq.cwiseAbs().maxCoeff() : 0.0,
                  p.m_in ? mult.in.cwiseAbs().maxCoeff() : 0.0, 1.0});
    merit_mu = std::max(merit_mu, 1.1 * mult_inf);
    const double viol0 = l1_violation(ceq, cin);
    const double merit0 = f + merit_mu * viol0;
    double deriv = grad.dot(d) - merit_mu * viol0;
    int guard = 0;
    while (deriv > -1e-14 && viol0 > opts_.feas_tol && guard++ < 8) {
      merit_mu *= 10.0;
      deriv = grad.dot(d) - merit_mu * viol0;
    }

    double alpha = 1.0;
    double f_new = f;
    VectorXd x_new = x, ceq_new = ceq, cin_new = cin;
    bool accepted = false;
    for (int ls = 0; ls < opts_.line_search_max; ++ls) {
      x_new = x + alpha * d;
      f_new = p.objective(x_new);
      if (p.constraints) p.constraints(x_new, ceq_new, cin_new);
      if (std::isfinite(f_new) && ceq_new.allFinite() && cin_new.allFinite()) {
        const double merit_new =
            f_new + merit_mu * l1_violation(ceq_new, cin_new);
        if (merit_new <= merit0 + 1e-4 * alpha * std::min(deriv, 0.0) +
                             1e-14 * (1.0 + std::abs(merit0))) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // Fall back to the smallest step if it at least evaluates finite.
      if (!std::isfinite(f_new)) {
        rep.status = SolveStatus::kNumericalFailure;
        out.x = best_merit < kInf ? best_x : x;
        out.multipliers = mult;
        return out;
      }
      ++stall;
    } else if (alpha * d.cwiseAbs().maxCoeff() < 1e-14 * (1.0 + x.cwiseAbs().maxCoeff())) {
      ++stall;
    } else {
      stall = 0;
    }

    // BFGS update before moving (needs gradients at both points).
    if (!p.hessian && accepted) {
      VectorXd grad_new = p.gradient(x_new);
      SpMat Jeq2(p.m_eq, n), Jin2(p.m_in, n);
      if (p.jacobians) p.jacobians(x_new, Jeq2, Jin2);
      VectorXd lag_old = grad, lag_new = grad_new;
      if (p.m_eq) {
        lag_old += Jeq.transpose() * mult.eq;
        lag_new += Jeq2.transpose() * mult.eq;
      }
      if (p.m_in) {
        lag_old += Jin.transpose() * mult.in;
        lag_new += Jin2.transpose() * mult.in;
      }
      const VectorXd s = x_new - x;
      VectorXd yv = lag_new - lag_old;
      const double sBs = s.dot(bfgs * s);
      const double sy = s.dot(yv);
      if (sBs > 1e-16) {
        if (sy < 0.2 * sBs) {
          const double theta = 0.8 * sBs / (sBs - sy);
          yv = theta * yv + (1.0 - theta) * (bfgs * s);
        }
        const double sy2 = s.dot(yv);
        if (sy2 > 1e-16) {
          const VectorXd Bs = bfgs * s;
          bfgs -= (Bs * Bs.transpose()) / sBs;
          bfgs += (yv * yv.transpose()) / sy2;
        }
      }
    }

    x = x_new;
    f = f_new;
    ceq = ceq_new;
    cin = cin_new;
    grad = p.gradient(x);

    const double merit_now = f + merit_mu * l1_violation(ceq, cin);
    if (merit_now < best_merit) {
      best_merit = merit_now;
      best_x = x;
    }

    if (stall >= 3) {
      rep.feasibility = constraint_violation(p, x);
      rep.objective = f;
      rep.status = rep.feasibility > opts_.feas_tol ? SolveStatus::kInfeasible
                                                    : SolveStatus::kMaxIter;
      out.x = x;
      out.multipliers = mult;
      return out;
    }
  }

  rep.feasibility = constraint_violation(p, x);
  rep.objective = f;
  out.x = x;
  out.multipliers = mult;
  return out;
}

}  // namespace mpftc
