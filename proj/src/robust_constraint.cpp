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

#include "mpftc/robust_constraint.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mpftc {

RobustConstraint::RobustConstraint(std::vector<UncertaintySet> tube,
                                   std::array<int, 2> pos_xy)
    : tube_(std::move(tube)), pos_xy_(pos_xy) {
  for (const auto& s : tube_) {
    if (s.radius < 0.0) {
      throw std::invalid_argument("RobustConstraint: negative radius");
    }
  }
}

const UncertaintySet& RobustConstraint::set_at(long n) const {
  const long idx = n - k();
  if (tube_.empty() || idx < 0 || idx >= static_cast<long>(tube_.size())) {
    throw std::out_of_range("RobustConstraint: step outside tube range");
  }
  return tube_[static_cast<size_t>(idx)];
}

double RobustConstraint::evaluate(const VectorXd& x, long n) const {
  const UncertaintySet& s = set_at(n);
  const Vector2d pos(x(pos_xy_[0]), x(pos_xy_[1]));
  return s.radius * s.radius - (pos - s.center).squaredNorm();
}

VectorXd RobustConstraint::gradient(const VectorXd& x, long n) const {
  const UncertaintySet& s = set_at(n);
  const Vector2d pos(x(pos_xy_[0]), x(pos_xy_[1]));
  VectorXd grad = VectorXd::Zero(x.size());
  const Vector2d d = pos - s.center;
  grad(pos_xy_[0]) = -2.0 * d(0);
  grad(pos_xy_[1]) = -2.0 * d(1);
  return grad;
}

double RobustConstraint::evaluate_exact(const VectorXd& x, long n) const {
  const UncertaintySet& s = set_at(n);
  const double r0 = tube_.front().radius;       // keep-out part
  const double rho = s.radius - r0;             // reachable growth
  const Vector2d pos(x(pos_xy_[0]), x(pos_xy_[1]));
  const double gap = std::max(0.0, (pos - s.center).norm() - rho);
  return r0 * r0 - gap * gap;
}

MonotonicityReport check_monotonicity(const RobustConstraint& rc_k,
                                      const RobustConstraint& rc_k1,
                                      const std::vector<VectorXd>& samples,
                                      double tol) {
  MonotonicityReport rep;
  rep.worst_gap = -std::numeric_limits<double>::infinity();
  const long n_lo = rc_k1.k();
  const long n_hi = std::min(rc_k.k() + rc_k.horizon(),
                             rc_k1.k() + rc_k1.horizon());
  if (rc_k1.k() != rc_k.k() + 1) {
    throw std::invalid_argument("check_monotonicity: tubes not consecutive");
  }

  // Disc nesting: every later set must be contained in the earlier one.
  for (long n = n_lo; n <= n_hi; ++n) {
    const auto& a = rc_k.tube()[static_cast<size_t>(n - rc_k.k())];
    const auto& b = rc_k1.tube()[static_cast<size_t>(n - rc_k1.k())];
    const double slack = a.radius - b.radius - (a.center - b.center).norm();
    if (slack < -tol) {
      rep.passed = false;
      ++rep.violations;
      rep.worst_n = n;
      std::ostringstream os;
      os << "disc nesting fails at n=" << n << " (slack " << slack << ")";
      rep.summary = os.str();
    }
  }

  for (const VectorXd& x : samples) {
    for (long n = n_lo; n <= n_hi; ++n) {
      const double gap = rc_k1.evaluate_exact(x, n) - rc_k.evaluate_exact(x, n);
      if (gap > rep.worst_gap) {
        rep.worst_gap = gap;
        rep.worst_n = n;
        rep.worst_sample = x;
      }
      if (gap > tol) {
        rep.passed = false;
        ++rep.violations;
      }
    }
  }
  if (rep.summary.empty()) {
    std::ostringstream os;
    os << (rep.passed ? "monotone" : "violated") << ", worst gap "
       << rep.worst_gap << " at n=" << rep.worst_n;
    rep.summary = os.str();
  }
  return rep;
}

}  // namespace mpftc
