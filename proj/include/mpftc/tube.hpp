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

#ifndef MPFTC_TUBE_HPP_
#define MPFTC_TUBE_HPP_

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace mpftc {

using Eigen::Vector2d;

/// Disc outer-approximation of the reachable uncertainty at prediction
/// step n given the information at step k.
struct UncertaintySet {
  Vector2d center = Vector2d::Zero();
  double radius = 0.0;
  long n = 0;  // prediction step
  long k = 0;  // information step
};

/// Uncertainty dynamics w+ = omega(w, xi) with bounded noise ||xi|| <= xi_bound,
/// plus the disc growth used to outer-approximate the reachable sets.
struct UncertaintyModel {
  std::function<Vector2d(const Vector2d& w, const Vector2d& xi)> omega;
  Vector2d drift = Vector2d::Zero();  // per-step mean motion
  double xi_bound = 0.0;
  double r0 = 0.0;        // initial disc radius at n = k
  double radius_step = 0.0;  // radius growth per prediction step

  /// Drifting-disc instance: mean speed and heading with noise ball.
  static UncertaintyModel drifting_disc(double ts, double speed, double heading,
                                        double xi_bound, double r0,
                                        double radius_step);
};

/// Disc tube over n = k .. k+horizon: centers follow the drift, radii grow
/// linearly. Throws std::invalid_argument for a negative horizon.
std::vector<UncertaintySet> propagate_tube(const UncertaintyModel& model,
                                           const Vector2d& w0, long horizon,
                                           long k = 0);

}  // namespace mpftc

#endif  // MPFTC_TUBE_HPP_
