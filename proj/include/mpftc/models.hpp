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

#ifndef MPFTC_MODELS_HPP_
#define MPFTC_MODELS_HPP_

#include <Eigen/Dense>

#include <memory>
#include <string>

namespace mpftc {

using Eigen::Matrix2d;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXd;

/// Stateless plant evaluator: continuous dynamics with analytic Jacobians,
/// box bounds, and a discrete one-step map (exact where available, RK4
/// otherwise).
class PlantModel {
 public:
  virtual ~PlantModel() = default;

  virtual std::string name() const = 0;
  virtual int nx() const = 0;
  virtual int nu() const = 0;

  virtual VectorXd dynamics(const VectorXd& x, const VectorXd& u) const = 0;
  virtual void dynamics_jacobians(const VectorXd& x, const VectorXd& u,
                                  MatrixXd& A, MatrixXd& B) const = 0;

  /// Box bounds; +-inf entries mean unbounded.
  virtual VectorXd state_lower() const;
  virtual VectorXd state_upper() const;
  virtual VectorXd input_lower() const;
  virtual VectorXd input_upper() const;

  /// Discrete one-step map with sampling time ts (zero-order hold input).
  virtual VectorXd step(const VectorXd& x, const VectorXd& u,
                        double ts) const;
  virtual void step_jacobians(const VectorXd& x, const VectorXd& u, double ts,
                              MatrixXd& A, MatrixXd& B) const;
};

/// Kinematic car (x, y, psi) with speed and steering inputs.
class CarModel final : public PlantModel {
 public:
  std::string name() const override { return "car"; }
  int nx() const override { return 3; }
  int nu() const override { return 2; }
  VectorXd dynamics(const VectorXd& x, const VectorXd& u) const override;
  void dynamics_jacobians(const VectorXd& x, const VectorXd& u, MatrixXd& A,
                          MatrixXd& B) const override;
  VectorXd input_lower() const override;
  VectorXd input_upper() const override;
};

/// Double integrator (p, pdot) with acceleration input; exact ZOH step.
class DoubleIntegratorModel final : public PlantModel {
 public:
  std::string name() const override { return "double_integrator"; }
  int nx() const override { return 2; }
  int nu() const override { return 1; }
  VectorXd dynamics(const VectorXd& x, const VectorXd& u) const override;
  void dynamics_jacobians(const VectorXd& x, const VectorXd& u, MatrixXd& A,
                          MatrixXd& B) const override;
  VectorXd state_lower() const override;
  VectorXd input_lower() const override;
  VectorXd input_upper() const override;
  VectorXd step(const VectorXd& x, const VectorXd& u,
                double ts) const override;
  void step_jacobians(const VectorXd& x, const VectorXd& u, double ts,
                      MatrixXd& A, MatrixXd& B) const override;
};

/// Inertia, Coriolis and gravity parameters of the planar two-joint robot.
struct RobotParams {
  double b1 = 200.0;   // kg m^2 / rad
  double b2 = 50.0;    // kg m^2 / rad
  double b3 = 23.5;    // kg m^2 / rad
  double b4 = 25.0;    // kg m^2 / rad
  double b5 = 122.5;   // kg m^2 / rad
  double c1 = -25.0;   // N m s^-2
  double g1 = 784.8;   // N m
  double g2 = 245.3;   // N m
};

/// Fully actuated planar robot, x = (q1, q2, dq1, dq2), u = joint torques.
class RobotArmModel final : public PlantModel {
 public:
  explicit RobotArmModel(RobotParams params = {});

  std::string name() const override { return "robot_arm"; }
  int nx() const override { return 4; }
  int nu() const override { return 2; }
  VectorXd dynamics(const VectorXd& x, const VectorXd& u) const override;
  void dynamics_jacobians(const VectorXd& x, const VectorXd& u, MatrixXd& A,
                          MatrixXd& B) const override;
  VectorXd state_lower() const override;
  VectorXd state_upper() const override;
  VectorXd input_lower() const override;
  VectorXd input_upper() const override;

  const RobotParams& params() const { return params_; }
  Matrix2d inertia(const Vector2d& q) const;
  Matrix2d coriolis(const Vector2d& q, const Vector2d& dq) const;
  Vector2d gravity(const Vector2d& q) const;

  static constexpr double kSpeedBound = 1.5 * EIGEN_PI;  // rad/s
  static constexpr double kTorqueBound = 4000.0;         // N m

 private:
  RobotParams params_;
};

/// Classical one-step RK4 integration of the model's continuous dynamics.
/// Throws std::runtime_error on a non-finite result.
VectorXd integrate_rk4(const PlantModel& model, const VectorXd& x,
                       const VectorXd& u, double ts);

/// Jacobians of the RK4 one-step map, chain rule through the stages.
void rk4_step_jacobians(const PlantModel& model, const VectorXd& x,
                        const VectorXd& u, double ts, MatrixXd& A,
                        MatrixXd& B);

std::shared_ptr<const PlantModel> make_model(const std::string& name);

}  // namespace mpftc

#endif  // MPFTC_MODELS_HPP_
