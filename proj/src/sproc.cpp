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

#include "mpftc/sproc.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace mpftc {

namespace {

// Feasibility of one block condition at a candidate gamma: a lambda >= 0
// with P - lambda M >= 0 and lambda d^2 >= gamma must exist. The corner
// forces lambda >= gamma / d^2 and the P-block prefers lambda as small as
// possible, so checking the corner value of lambda decides feasibility.
bool block_feasible(const MatrixXd& P, const SprocConstraint& c,
                    double gamma) {
  if (c.d <= 0.0) return false;
  const double lambda = gamma / (c.d * c.d);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(P - lambda * c.M);
  return es.eigenvalues().minCoeff() >= -1e-9 * P.norm();
}

}  // namespace

double sproc_level(const MatrixXd& P, const std::vector<SprocConstraint>& cons,
                   double rel_tol) {
  if (cons.empty()) throw std::invalid_argument("sproc_level: no constraints");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(P);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("sproc_level: P must be positive definite");
  }

  auto feasible = [&](double gamma) {
    for (const auto& c : cons) {
      if (!block_feasible(P, c, gamma)) return false;
    }
    return true;
  };

  // Bracket: grow until infeasible.
  double lo = 0.0;
  double hi = es.eigenvalues().maxCoeff();
  for (const auto& c : cons) hi = std::max(hi, c.d * c.d * P.norm());
  int guard = 0;
  while (feasible(hi)) {
    hi *= 2.0;
    if (++guard > 200) throw std::runtime_error("sproc_level: unbounded level");
  }
  if (!feasible(hi * 1e-12)) {
    throw std::runtime_error("sproc_level: infeasible at gamma -> 0");
  }
  lo = hi * 1e-12;
  while ((hi - lo) > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double sproc_level(const MatrixXd& P_eta, const MatrixXd& K_eta, double d1,
                   double d2) {
  (void)K_eta;  // the gain enters through d1, kept for the call signature
  const int n = static_cast<int>(P_eta.rows());
  SprocConstraint ball{MatrixXd::Identity(n, n), d1};
  MatrixXd M2 = MatrixXd::Zero(n, n);
  M2.bottomRightCorner(n / 2, n / 2).setIdentity();
  SprocConstraint velocity{M2, d2};
  return sproc_level(P_eta, {ball, velocity});
}

}  // namespace mpftc
