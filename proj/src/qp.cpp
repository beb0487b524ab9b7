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

#include "mpftc/qp.hpp"

#include <algorithm>
#include <vector>

namespace mpftc {

namespace {

// Upper-triangle triplets of the quasidefinite KKT matrix
//   [ H + dp I   Aeq'        Ain'            ]
//   [ Aeq        -dd I       0               ]
//   [ Ain        0           -(s/z + dd) I   ]
void assemble_kkt(const QpProblem& qp, const VectorXd& s, const VectorXd& z,
                  double dp, double dd, SpMat& K) {
  const int n = static_cast<int>(qp.g.size());
  const int p = static_cast<int>(qp.beq.size());
  const int m = static_cast<int>(qp.bin.size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(qp.H.nonZeros() + qp.Aeq.nonZeros() + qp.Ain.nonZeros() + n +
                p + m);
  for (int c = 0; c < qp.H.outerSize(); ++c) {
    for (SpMat::InnerIterator it(qp.H, c); it; ++it) {
      if (it.row() <= it.col()) trips.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int i = 0; i < n; ++i) trips.emplace_back(i, i, dp);
  for (int c = 0; c < qp.Aeq.outerSize(); ++c) {
    for (SpMat::InnerIterator it(qp.Aeq, c); it; ++it) {
      trips.emplace_back(it.col(), n + it.row(), it.value());  // Aeq' block
    }
  }
  for (int i = 0; i < p; ++i) trips.emplace_back(n + i, n + i, -dd);
  for (int c = 0; c < qp.Ain.outerSize(); ++c) {
    for (SpMat::InnerIterator it(qp.Ain, c); it; ++it) {
      trips.emplace_back(it.col(), n + p + it.row(), it.value());  // Ain'
    }
  }
  for (int i = 0; i < m; ++i) {
    trips.emplace_back(n + p + i, n + p + i, -(s(i) / z(i) + dd));
  }
  K.resize(n + p + m, n + p + m);
  K.setFromTriplets(trips.begin(), trips.end());
}

}  // namespace

QpResult QpSolver::solve(const QpProblem& qp, const QpOptions& opts) {
  const int n = static_cast<int>(qp.g.size());
  const int p = static_cast<int>(qp.beq.size());
  const int m = static_cast<int>(qp.bin.size());

  QpResult res;
  res.x = VectorXd::Zero(n);
  res.lam_eq = VectorXd::Zero(p);
  res.mu_in = VectorXd::Zero(m);
  if (m == 0 && p == 0) {
    // Unconstrained quadratic: one regularized solve.
    SpMat H = qp.H;
    SpMat I(n, n);
    I.setIdentity();
    H = H + 1e-12 * I;
    Eigen::SimplicialLDLT<SpMat> chol(H);
    if (chol.info() != Eigen::Success) return res;
    res.x = chol.solve(-qp.g);
    res.optimal = true;
    return res;
  }

  VectorXd x = VectorXd::Zero(n);
  VectorXd y = VectorXd::Zero(p);
  VectorXd s = VectorXd::Constant(m, 1.0);
  VectorXd z = VectorXd::Constant(m, 1.0);
  for (int i = 0; i < m; ++i) {
    s(i) = std::max(1.0, std::abs(qp.bin(i)));
  }

  const double data_scale =
      1.0 + std::max({qp.g.cwiseAbs().maxCoeff(),
                      p ? qp.beq.cwiseAbs().maxCoeff() : 0.0,
                      m ? qp.bin.cwiseAbs().maxCoeff() : 0.0});

  SpMat K;
  VectorXd rhs(n + p + m), step(n + p + m);

  for (int it = 0; it < opts.max_iter; ++it) {
    // H is stored as a full symmetric matrix.
    const VectorXd rd = qp.H * x + qp.g +
                        (p ? VectorXd(qp.Aeq.transpose() * y) : VectorXd::Zero(n)) +
                        (m ? VectorXd(qp.Ain.transpose() * z) : VectorXd::Zero(n));
    const VectorXd rp = p ? VectorXd(qp.Aeq * x - qp.beq) : VectorXd(0);
    const VectorXd ri = m ? VectorXd(qp.Ain * x + s - qp.bin) : VectorXd(0);
    const double mu = m ? s.dot(z) / m : 0.0;

    res.primal_residual = std::max(p ? rp.cwiseAbs().maxCoeff() : 0.0,
                                   m ? ri.cwiseAbs().maxCoeff() : 0.0);
    res.dual_residual = rd.cwiseAbs().maxCoeff();
    res.gap = mu;
    res.iterations = it;
    if (res.primal_residual <= opts.tol * data_scale &&
        res.dual_residual <= opts.tol * data_scale && mu <= opts.tol * data_scale) {
      res.optimal = true;
      break;
    }

    double dp = 1e-10, dd = 1e-10;
    bool factored = false;
    for (int attempt = 0; attempt < 6 && !factored; ++attempt) {
      assemble_kkt(qp, s, z, dp, dd, K);
      if (!analyzed_ || pattern_nnz_ != K.nonZeros() ||
          pattern_dim_ != K.rows()) {
        ldlt_.analyzePattern(K);
        analyzed_ = true;
        pattern_nnz_ = K.nonZeros();
        pattern_dim_ = K.rows();
      }
      ldlt_.factorize(K);
      if (ldlt_.info() == Eigen::Success) {
        factored = true;
      } else {
        dp *= 100.0;
        dd *= 100.0;
      }
    }
    if (!factored) break;

    auto solve_step = [&](const VectorXd& rc) -> VectorXd {
      rhs.head(n) = -rd;
      if (p) rhs.segment(n, p) = -rp;
      // Third block: -ri + rc ./ z  (rc is the complementarity target).
      for (int i = 0; i < m; ++i) rhs(n + p + i) = -ri(i) + rc(i) / z(i);
      return ldlt_.solve(rhs);
    };

    // Affine (predictor) direction: rc = s.*z.
    VectorXd rc_aff(m);
    for (int i = 0; i < m; ++i) rc_aff(i) = s(i) * z(i);
    step = solve_step(rc_aff);
    VectorXd dx = step.head(n);
    VectorXd dz = m ? VectorXd(step.tail(m)) : VectorXd(0);
    VectorXd ds(m);
    for (int i = 0; i < m; ++i) ds(i) = -(rc_aff(i) + s(i) * dz(i)) / z(i);

    auto max_step = [&](const VectorXd& v, const VectorXd& dv) {
      double a = 1.0;
      for (int i = 0; i < v.size(); ++i) {
        if (dv(i) < 0.0) a = std::min(a, -v(i) / dv(i));
      }
      return a;
    };
    const double a_aff = std::min(max_step(s, ds), max_step(z, dz));
    double sigma = 0.0;
    if (m > 0 && mu > 0.0) {
      const double mu_aff = (s + a_aff * ds).dot(z + a_aff * dz) / m;
      sigma = std::pow(mu_aff / mu, 3);
      sigma = std::clamp(sigma, 1e-8, 0.9999);
    }

    // Corrector: rc = s.*z + ds.*dz - sigma mu.
    VectorXd rc(m);
    for (int i = 0; i < m; ++i) {
      rc(i) = s(i) * z(i) + ds(i) * dz(i) - sigma * mu;
    }
    step = solve_step(rc);
    dx = step.head(n);
    const VectorXd dy = p ? VectorXd(step.segment(n, p)) : VectorXd(0);
    dz = m ? VectorXd(step.tail(m)) : VectorXd(0);
    for (int i = 0; i < m; ++i) ds(i) = -(rc(i) + s(i) * dz(i)) / z(i);

    const double tau = 0.995;
    const double alpha =
        std::min(1.0, tau * std::min(max_step(s, ds), max_step(z, dz)));
    if (alpha < 1e-12) break;

    x += alpha * dx;
    if (p) y += alpha * dy;
    for (int i = 0; i < m; ++i) {
      s(i) = std::max(s(i) + alpha * ds(i), 1e-300);
      z(i) = std::max(z(i) + alpha * dz(i), 1e-300);
    }
  }

  res.x = x;
  res.lam_eq = y;
  res.mu_in = z;
  return res;
}

}  // namespace mpftc
