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

#ifndef MPFTC_ROBUST_CONSTRAINT_HPP_
#define MPFTC_ROBUST_CONSTRAINT_HPP_

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "mpftc/tube.hpp"

namespace mpftc {

using Eigen::Vector2d;
using Eigen::VectorXd;

/// Worst-case keep-out constraint g_{n|k}(x) <= 0 over a disc tube.
///
/// The NLP-facing evaluation uses the smooth outer bound
///   g = r_eff^2 - ||pos - c||^2,   r_eff = tube radius at n|k,
/// which upper-bounds the exact worst case
///   g_true = r0^2 - max(0, ||pos - c|| - rho)^2
/// for a keep-out radius r0 and reachable-disc radius rho (both folded into
/// the stored radius). The smooth form is what the solver sees; the exact
/// max form backs the monotonicity checks.
class RobustConstraint {
 public:
  RobustConstraint() = default;
  RobustConstraint(std::vector<UncertaintySet> tube, std::array<int, 2> pos_xy);

  long k() const { return tube_.empty() ? 0 : tube_.front().k; }
  long horizon() const { return static_cast<long>(tube_.size()) - 1; }
  const std::vector<UncertaintySet>& tube() const { return tube_; }

  /// Smooth conservative evaluation at prediction step n (absolute index).
  /// Throws std::out_of_range when n is outside the tube range.
  double evaluate(const VectorXd& x, long n) const;
  /// d(evaluate)/dx, nonzero only on the position components.
  VectorXd gradient(const VectorXd& x, long n) const;

  /// Exact worst case over the stored disc with keep-out radius r0:
  /// r0 is the radius at n = k, the remainder of the stored radius is
  /// treated as reachable-set growth.
  double evaluate_exact(const VectorXd& x, long n) const;

 private:
  const UncertaintySet& set_at(long n) const;
  std::vector<UncertaintySet> tube_;
  std::array<int, 2> pos_xy_{{0, 1}};
};

/// Result of a Lemma-1 style monotonicity sweep.
struct MonotonicityReport {
  bool passed = true;
  long violations = 0;
  double worst_gap = 0.0;  // max of g_{n|k+1} - g_{n|k} over samples
  long worst_n = 0;
  VectorXd worst_sample;
  std::string summary;
};

/// Checks g_{n|k+1}(x) <= g_{n|k}(x) + tol on the given samples for all
/// overlapping steps n >= k+1, using the exact worst-case evaluation, and
/// additionally checks disc nesting (center distance + radius) between the
/// two tubes.
MonotonicityReport check_monotonicity(const RobustConstraint& rc_k,
                                      const RobustConstraint& rc_k1,
                                      const std::vector<VectorXd>& samples,
                                      double tol = 1e-9);

}  // namespace mpftc

#endif  // MPFTC_ROBUST_CONSTRAINT_HPP_
