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

#include "mpftc/models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpftc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

VectorXd PlantModel::state_lower() const {
  return VectorXd::Constant(nx(), -kInf);
}
VectorXd PlantModel::state_upper() const {
  return VectorXd::Constant(nx(), kInf);
}
VectorXd PlantModel::input_lower() const {
  return VectorXd::Constant(nu(), -kInf);
}
VectorXd PlantModel::input_upper() const {
  return VectorXd::Constant(nu(), kInf);
}

VectorXd PlantModel::step(const VectorXd& x, const VectorXd& u,
                          double ts) const {
  return integrate_rk4(*this, x, u, ts);
}

void PlantModel::step_jacobians(const VectorXd& x, const VectorXd& u, double ts,
                                MatrixXd& A, MatrixXd& B) const {
  rk4_step_jacobians(*this, x, u, ts, A, B);
}

// ---------------------------------------------------------------- car

VectorXd CarModel::dynamics(const VectorXd& x, const VectorXd& u) const {
  if (std::abs(u(1)) >= EIGEN_PI / 2) {
    throw std::domain_error("car_dynamics: steering at tan singularity");
  }
  VectorXd dx(3);
  dx << u(0) * std::cos(x(2)), u(0) * std::sin(x(2)), u(0) * std::tan(u(1));
  return dx;
}

void CarModel::dynamics_jacobians(const VectorXd& x, const VectorXd& u,
                                  MatrixXd& A, MatrixXd& B) const {
  A.setZero(3, 3);
  A(0, 2) = -u(0) * std::sin(x(2));
  A(1, 2) = u(0) * std::cos(x(2));
  B.setZero(3, 2);
  const double c = std::cos(u(1));
  B(0, 0) = std::cos(x(2));
  B(1, 0) = std::sin(x(2));
  B(2, 0) = std::tan(u(1));
  B(2, 1) = u(0) / (c * c);
}

VectorXd CarModel::input_lower() const {
  VectorXd lo(2);
  lo << 0.0, -0.63;
  return lo;
}

VectorXd CarModel::input_upper() const {
  VectorXd hi(2);
  hi << 6.0, 0.63;
  return hi;
}

// --------------------------------------------------- double integrator

VectorXd DoubleIntegratorModel::dynamics(const VectorXd& x,
                                         const VectorXd& u) const {
  VectorXd dx(2);
  dx << x(1), u(0);
  return dx;
}

void DoubleIntegratorModel::dynamics_jacobians(const VectorXd&, const VectorXd&,
                                               MatrixXd& A, MatrixXd& B) const {
  A.setZero(2, 2);
  A(0, 1) = 1.0;
  B.setZero(2, 1);
  B(1, 0) = 1.0;
}

VectorXd DoubleIntegratorModel::state_lower() const {
  VectorXd lo(2);
  lo << -kInf, 0.0;
  return lo;
}

VectorXd DoubleIntegratorModel::input_lower() const {
  return VectorXd::Constant(1, -1.0);
}

VectorXd DoubleIntegratorModel::input_upper() const {
  return VectorXd::Constant(1, 5.0);
}

VectorXd DoubleIntegratorModel::step(const VectorXd& x, const VectorXd& u,
                                     double ts) const {
  VectorXd xn(2);
  xn << x(0) + ts * x(1) + 0.5 * ts * ts * u(0), x(1) + ts * u(0);
  return xn;
}

void DoubleIntegratorModel::step_jacobians(const VectorXd&, const VectorXd&,
                                           double ts, MatrixXd& A,
                                           MatrixXd& B) const {
  A.setIdentity(2, 2);
  A(0, 1) = ts;
  B.resize(2, 1);
  B << 0.5 * ts * ts, ts;
}

// --------------------------------------------------------------- robot

RobotArmModel::RobotArmModel(RobotParams params) : params_(params) {}

Matrix2d RobotArmModel::inertia(const Vector2d& q) const {
  const double c2 = std::cos(q(1));
  Matrix2d B;
  B << params_.b1 + params_.b2 * c2, params_.b3 + params_.b4 * c2,
      params_.b3 + params_.b4 * c2, params_.b5;
  return B;
}

Matrix2d RobotArmModel::coriolis(const Vector2d& q, const Vector2d& dq) const {
  const double s2 = std::sin(q(1));
  Matrix2d C;
  C << dq(0), dq(0) + dq(1), -dq(0), 0.0;
  return -params_.c1 * s2 * C;
}

Vector2d RobotArmModel::gravity(const Vector2d& q) const {
  const double c1 = std::cos(q(0));
  const double c12 = std::cos(q(0) + q(1));
  return {params_.g1 * c1 + params_.g2 * c12, params_.g2 * c12};
}

VectorXd RobotArmModel::dynamics(const VectorXd& x, const VectorXd& u) const {
  const Vector2d q = x.head<2>();
  const Vector2d dq = x.tail<2>();
  const Matrix2d B = inertia(q);
  if (std::abs(B.determinant()) < B.norm() * B.norm() / 1e6) {
    throw std::runtime_error("robot_dynamics: inertia numerically singular");
  }
  const Vector2d acc = B.inverse() * (u.head<2>() - coriolis(q, dq) * dq - gravity(q));
  VectorXd dx(4);
  dx << dq, acc;
  return dx;
}

void RobotArmModel::dynamics_jacobians(const VectorXd& x, const VectorXd& u,
                                       MatrixXd& A, MatrixXd& B) const {
  const Vector2d q = x.head<2>();
  const Vector2d dq = x.tail<2>();
  const double s2 = std::sin(q(1)), c2 = std::cos(q(1));
  const double s1 = std::sin(q(0));
  const double s12 = std::sin(q(0) + q(1));

  const Matrix2d Binv = inertia(q).inverse();
  const Vector2d m = u.head<2>() - coriolis(q, dq) * dq - gravity(q);

  // Coriolis force C(q, dq) dq written out: -c1 sin(q2) * cvec(dq).
  const Vector2d cvec(dq(0) * dq(0) + dq(0) * dq(1) + dq(1) * dq(1),
                      -dq(0) * dq(0));
  Matrix2d dcvec_ddq;
  dcvec_ddq << 2 * dq(0) + dq(1), dq(0) + 2 * dq(1), -2 * dq(0), 0.0;

  Matrix2d dB_dq2;
  dB_dq2 << -params_.b2 * s2, -params_.b4 * s2, -params_.b4 * s2, 0.0;

  Matrix2d dg_dq;
  dg_dq << -params_.g1 * s1 - params_.g2 * s12, -params_.g2 * s12,
      -params_.g2 * s12, -params_.g2 * s12;

  A.setZero(4, 4);
  A.topRightCorner<2, 2>().setIdentity();
  // d acc / d q1: only gravity depends on q1.
  A.block<2, 1>(2, 0) = Binv * (-dg_dq.col(0));
  // d acc / d q2: inertia, Coriolis and gravity all move.
  const Vector2d dforce_dq2 =
      params_.c1 * c2 * cvec - dg_dq.col(1);  // -(dC/dq2 dq) - dg/dq2
  A.block<2, 1>(2, 1) = -Binv * dB_dq2 * (Binv * m) + Binv * dforce_dq2;
  // d acc / d dq.
  A.block<2, 2>(2, 2) = Binv * (params_.c1 * s2 * dcvec_ddq);

  B.setZero(4, 2);
  B.bottomRows<2>() = Binv;
}

VectorXd RobotArmModel::state_lower() const {
  VectorXd lo(4);
  lo << -kInf, -kInf, -kSpeedBound, -kSpeedBound;
  return lo;
}

VectorXd RobotArmModel::state_upper() const {
  VectorXd hi(4);
  hi << kInf, kInf, kSpeedBound, kSpeedBound;
  return hi;
}

VectorXd RobotArmModel::input_lower() const {
  return VectorXd::Constant(2, -kTorqueBound);
}

VectorXd RobotArmModel::input_upper() const {
  return VectorXd::Constant(2, kTorqueBound);
}

// ----------------------------------------------------------------- rk4

VectorXd integrate_rk4(const PlantModel& model, const VectorXd& x,
                       const VectorXd& u, double ts) {
  if (ts <= 0.0) throw std::invalid_argument("integrate_rk4: ts must be > 0");
  const VectorXd k1 = model.dynamics(x, u);
  const VectorXd k2 = model.dynamics(x + ts / 2 * k1, u);
  const VectorXd k3 = model.dynamics(x + ts / 2 * k2, u);
  const VectorXd k4 = model.dynamics(x + ts * k3, u);
  VectorXd xn = x + ts / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  if (!xn.allFinite()) {
    throw std::runtime_error("integrate_rk4: non-finite state");
  }
  return xn;
}

void rk4_step_jacobians(const PlantModel& model, const VectorXd& x,
                        const VectorXd& u, double ts, MatrixXd& A,
                        MatrixXd& B) {
  const int nx = model.nx();
  const int nu = model.nu();
  MatrixXd A1(nx, nx), A2(nx, nx), A3(nx, nx), A4(nx, nx);
  MatrixXd B1(nx, nu), B2(nx, nu), B3(nx, nu), B4(nx, nu);

  const VectorXd k1 = model.dynamics(x, u);
  model.dynamics_jacobians(x, u, A1, B1);
  const VectorXd x2 = x + ts / 2 * k1;
  const VectorXd k2 = model.dynamics(x2, u);
  model.dynamics_jacobians(x2, u, A2, B2);
  const VectorXd x3 = x + ts / 2 * k2;
  const VectorXd k3 = model.dynamics(x3, u);
  model.dynamics_jacobians(x3, u, A3, B3);
  const VectorXd x4 = x + ts * k3;
  model.dynamics_jacobians(x4, u, A4, B4);

  const MatrixXd I = MatrixXd::Identity(nx, nx);
  const MatrixXd dk1 = A1;
  const MatrixXd dk2 = A2 * (I + ts / 2 * dk1);
  const MatrixXd dk3 = A3 * (I + ts / 2 * dk2);
  const MatrixXd dk4 = A4 * (I + ts * dk3);
  A = I + ts / 6 * (dk1 + 2 * dk2 + 2 * dk3 + dk4);

  const MatrixXd db1 = B1;
  const MatrixXd db2 = B2 + ts / 2 * A2 * db1;
  const MatrixXd db3 = B3 + ts / 2 * A3 * db2;
  const MatrixXd db4 = B4 + ts * A4 * db3;
  B = ts / 6 * (db1 + 2 * db2 + 2 * db3 + db4);
}

std::shared_ptr<const PlantModel> make_model(const std::string& name) {
  if (name == "car") return std::make_shared<CarModel>();
  if (name == "double_integrator")
    return std::make_shared<DoubleIntegratorModel>();
  if (name == "robot_arm") return std::make_shared<RobotArmModel>();
  throw std::invalid_argument("unknown model: " + name);
}

}  // namespace mpftc
