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

#ifndef MPFTC_REFERENCE_HPP_
#define MPFTC_REFERENCE_HPP_

#include <Eigen/Dense>

#include <vector>

namespace mpftc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Parametrized state/input reference r(tau) = (rx(tau), ru(tau)).
///
/// Stored as uniformly sampled values plus derivatives and evaluated with
/// cubic Hermite interpolation, so the interpolant and its derivative are
/// analytically consistent (the derivative accessors differentiate the
/// interpolant itself). Past the domain end the last state is held with a
/// zero input reference.
class ReferenceTrajectory {
 public:
  ReferenceTrajectory() = default;

  /// Columns of rx/ru/drx/dru are samples on the uniform grid
  /// tau_i = i * step, i = 0..num_samples-1.
  ReferenceTrajectory(double step, MatrixXd rx, MatrixXd ru, MatrixXd drx,
                      MatrixXd dru);

  int nx() const { return static_cast<int>(rx_.rows()); }
  int nu() const { return static_cast<int>(ru_.rows()); }
  double domain_end() const { return t_end_; }

  VectorXd state(double tau) const;
  VectorXd input(double tau) const;
  /// d rx / d tau of the interpolant (zero in the hold region).
  VectorXd state_derivative(double tau) const;
  VectorXd input_derivative(double tau) const;

  /// Grid used to construct the trajectory, useful for consistency sweeps.
  std::vector<double> sample_times() const;

 private:
  void locate(double tau, int& idx, double& s) const;

  double h_ = 0.0;
  double t_end_ = 0.0;
  MatrixXd rx_, ru_, drx_, dru_;
};

/// Kinematic-car reference: path rho(theta) = [theta,
/// 6 log((5+|theta|)/20) sin(0.35 theta)], theta in [-30, 0], with a timing
/// law that cruises at 5 m/s and decelerates at 5.38 m/s^2 from t = 7 s.
ReferenceTrajectory build_car_reference(double grid_step = 1e-3);

/// Constant-cruise reference rx(t) = [v_ref t, v_ref], ru = 0.
ReferenceTrajectory build_double_integrator_reference(double v_ref,
                                                      double horizon,
                                                      double grid_step = 1e-2);

struct RobotParams;  // models.hpp

/// Planar-robot reference along p(theta) = (theta - pi/3,
/// 5 sin(0.6 (theta - pi/3))), theta in [-5.3, 0]; 1 rad/s cruise, then
/// deceleration at 0.0734 rad/s^2 from t = 5 s. The input reference is the
/// inverse-dynamics torque along the path.
ReferenceTrajectory build_robot_reference(const RobotParams& params,
                                          double grid_step = 1e-3);

/// Position components of the robot reference acceleration (d^2/dt^2 of the
/// joint-space path), used by the terminal feedback law.
VectorXd robot_reference_acceleration(const ReferenceTrajectory& ref,
                                      double tau);

/// Maximum scaled one-step consistency residual
///   max_i |rx(tau + ts) - flow(rx(tau), ru(.)))|_i / (1 + |rx(tau)|_i)
/// over the given tau values, where flow integrates the continuous dynamics
/// with the time-varying reference input (RK4 substeps).
class PlantModel;  // models.hpp
double reference_consistency_residual(const ReferenceTrajectory& ref,
                                      const PlantModel& model, double ts,
                                      const std::vector<double>& taus,
                                      int substeps = 32);

}  // namespace mpftc

#endif  // MPFTC_REFERENCE_HPP_
