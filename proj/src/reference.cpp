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

#include "mpftc/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "mpftc/models.hpp"

namespace mpftc {

ReferenceTrajectory::ReferenceTrajectory(double step, MatrixXd rx, MatrixXd ru,
                                         MatrixXd drx, MatrixXd dru)
    : h_(step),
      rx_(std::move(rx)),
      ru_(std::move(ru)),
      drx_(std::move(drx)),
      dru_(std::move(dru)) {
  if (h_ <= 0.0 || rx_.cols() < 2 || rx_.cols() != ru_.cols() ||
      rx_.cols() != drx_.cols() || rx_.cols() != dru_.cols()) {
    throw std::invalid_argument("ReferenceTrajectory: inconsistent samples");
  }
  if (!rx_.allFinite() || !ru_.allFinite()) {
    throw std::invalid_argument("ReferenceTrajectory: non-finite samples");
  }
  t_end_ = h_ * static_cast<double>(rx_.cols() - 1);
}

void ReferenceTrajectory::locate(double tau, int& idx, double& s) const {
  const int last = static_cast<int>(rx_.cols()) - 2;
  double r = tau / h_;
  idx = static_cast<int>(std::floor(r));
  if (idx < 0) idx = 0;
  if (idx > last) idx = last;
  s = r - static_cast<double>(idx);
}

namespace {

// Cubic Hermite basis on [0, 1].
inline void hermite(double s, double h, double& b0, double& b1, double& bm0,
                    double& bm1) {
  const double s2 = s * s, s3 = s2 * s;
  b0 = 2 * s3 - 3 * s2 + 1;
  b1 = -2 * s3 + 3 * s2;
  bm0 = h * (s3 - 2 * s2 + s);
  bm1 = h * (s3 - s2);
}

inline void hermite_deriv(double s, double h, double& b0, double& b1,
                          double& bm0, double& bm1) {
  const double s2 = s * s;
  b0 = (6 * s2 - 6 * s) / h;
  b1 = (-6 * s2 + 6 * s) / h;
  bm0 = 3 * s2 - 4 * s + 1;
  bm1 = 3 * s2 - 2 * s;
}

}  // namespace

VectorXd ReferenceTrajectory::state(double tau) const {
  if (tau >= t_end_) return rx_.col(rx_.cols() - 1);
  if (tau <= 0.0) return rx_.col(0);
  int i;
  double s;
  locate(tau, i, s);
  double b0, b1, m0, m1;
  hermite(s, h_, b0, b1, m0, m1);
  return b0 * rx_.col(i) + b1 * rx_.col(i + 1) + m0 * drx_.col(i) +
         m1 * drx_.col(i + 1);
}

VectorXd ReferenceTrajectory::input(double tau) const {
  if (tau >= t_end_) return VectorXd::Zero(ru_.rows());
  if (tau <= 0.0) return ru_.col(0);
  int i;
  double s;
  locate(tau, i, s);
  double b0, b1, m0, m1;
  hermite(s, h_, b0, b1, m0, m1);
  return b0 * ru_.col(i) + b1 * ru_.col(i + 1) + m0 * dru_.col(i) +
         m1 * dru_.col(i + 1);
}

VectorXd ReferenceTrajectory::state_derivative(double tau) const {
  if (tau >= t_end_ || tau <= 0.0) return VectorXd::Zero(rx_.rows());
  int i;
  double s;
  locate(tau, i, s);
  double b0, b1, m0, m1;
  hermite_deriv(s, h_, b0, b1, m0, m1);
  return b0 * rx_.col(i) + b1 * rx_.col(i + 1) + m0 * drx_.col(i) +
         m1 * drx_.col(i + 1);
}

VectorXd ReferenceTrajectory::input_derivative(double tau) const {
  if (tau >= t_end_ || tau <= 0.0) return VectorXd::Zero(ru_.rows());
  int i;
  double s;
  locate(tau, i, s);
  double b0, b1, m0, m1;
  hermite_deriv(s, h_, b0, b1, m0, m1);
  return b0 * ru_.col(i) + b1 * ru_.col(i + 1) + m0 * dru_.col(i) +
         m1 * dru_.col(i + 1);
}

std::vector<double> ReferenceTrajectory::sample_times() const {
  std::vector<double> t(rx_.cols());
  for (int i = 0; i < rx_.cols(); ++i) t[i] = h_ * i;
  return t;
}

namespace {

// Timing law: theta' = v(t) / |dpath/dtheta|, cruise speed v0 until
// t_switch, then constant deceleration a until rest.
struct TimingLaw {
  double v0, t_switch, decel;
  double v(double t) const {
    if (t <= t_switch) return v0;
    return std::max(v0 - decel * (t - t_switch), 0.0);
  }
  double vdot(double t) const {
    if (t <= t_switch || v(t) <= 0.0) return 0.0;
    return -decel;
  }
  double t_end() const { return t_switch + v0 / decel; }
};

template <typename PathGrad>
double integrate_theta(double theta0, double t0, double t1, const TimingLaw& law,
                       const PathGrad& dpath, int substeps) {
  double th = theta0;
  const double h = (t1 - t0) / substeps;
  auto f = [&](double t, double thv) { return law.v(t) / dpath(thv).norm(); };
  for (int i = 0; i < substeps; ++i) {
    const double t = t0 + h * i;
    const double k1 = f(t, th);
    const double k2 = f(t + h / 2, th + h / 2 * k1);
    const double k3 = f(t + h / 2, th + h / 2 * k2);
    const double k4 = f(t + h, th + h * k3);
    th += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return th;
}

}  // namespace

ReferenceTrajectory build_car_reference(double grid_step) {
  auto rho2 = [](double th) {
    return 6.0 * std::log((5.0 + std::abs(th)) / 20.0) * std::sin(0.35 * th);
  };
  auto drho2 = [](double th) {
    const double sgn = th < 0.0 ? -1.0 : 1.0;
    return 6.0 * sgn / (5.0 + std::abs(th)) * std::sin(0.35 * th) +
           6.0 * std::log((5.0 + std::abs(th)) / 20.0) * 0.35 *
               std::cos(0.35 * th);
  };
  auto ddrho2 = [](double th) {
    const double sgn = th < 0.0 ? -1.0 : 1.0;
    const double a = 5.0 + std::abs(th);
    // d/dth of the two product terms above.
    return -6.0 / (a * a) * std::sin(0.35 * th) +
           2.0 * 6.0 * sgn / a * 0.35 * std::cos(0.35 * th) -
           6.0 * std::log(a / 20.0) * 0.35 * 0.35 * std::sin(0.35 * th);
  };
  auto dpath = [&](double th) {
    return Eigen::Vector2d(1.0, drho2(th));
  };

  const TimingLaw law{5.0, 7.0, 5.38};
  const double t_end = law.t_end();
  const int n = static_cast<int>(std::ceil(t_end / grid_step)) + 1;
  const double h = t_end / (n - 1);

  MatrixXd rx(3, n), ru(2, n), drx(3, n), dru(2, n);
  double theta = -30.0;
  for (int i = 0; i < n; ++i) {
    const double t = h * i;
    if (i > 0) theta = integrate_theta(theta, t - h, t, law, dpath, 8);
    const double d2 = drho2(theta);
    const double dd2 = ddrho2(theta);
    const double norm = std::sqrt(1.0 + d2 * d2);
    const double thd = law.v(t) / norm;
    const double psi = std::atan(d2);
    const double kappa = dd2 / std::pow(1.0 + d2 * d2, 1.5);

    rx.col(i) << theta, rho2(theta), psi;
    ru.col(i) << law.v(t), std::atan(kappa);
    // d rx/dt along the timing law.
    drx.col(i) << thd, d2 * thd, dd2 * thd / (1.0 + d2 * d2);
    // d ru/dt: speed follows the law directly; steering via curvature rate.
    const double dkappa_dth =
        // derivative of dd2 * (1+d2^2)^{-3/2}; third path derivative by
        // finite difference of ddrho2 (only shapes the interpolant).
        (ddrho2(theta + 1e-6) - ddrho2(theta - 1e-6)) / 2e-6 /
            std::pow(1.0 + d2 * d2, 1.5) -
        3.0 * dd2 * d2 * dd2 / std::pow(1.0 + d2 * d2, 2.5);
    dru.col(i) << law.vdot(t), dkappa_dth * thd / (1.0 + kappa * kappa);
  }
  return ReferenceTrajectory(h, rx, ru, drx, dru);
}

ReferenceTrajectory build_double_integrator_reference(double v_ref,
                                                      double horizon,
                                                      double grid_step) {
  const int n = static_cast<int>(std::ceil(horizon / grid_step)) + 1;
  const double h = horizon / (n - 1);
  MatrixXd rx(2, n), ru(1, n), drx(2, n), dru(1, n);
  for (int i = 0; i < n; ++i) {
    const double t = h * i;
    rx.col(i) << v_ref * t, v_ref;
    ru.col(i) << 0.0;
    drx.col(i) << v_ref, 0.0;
    dru.col(i) << 0.0;
  }
  return ReferenceTrajectory(h, rx, ru, drx, dru);
}

namespace {

constexpr double kPi = 3.14159265358979323846;

struct RobotPath {
  Eigen::Vector2d p(double th) const {
    const double s = th - kPi / 3.0;
    return {s, 5.0 * std::sin(0.6 * s)};
  }
  Eigen::Vector2d dp(double th) const {
    const double s = th - kPi / 3.0;
    return {1.0, 3.0 * std::cos(0.6 * s)};
  }
  Eigen::Vector2d ddp(double th) const {
    const double s = th - kPi / 3.0;
    return {0.0, -1.8 * std::sin(0.6 * s)};
  }
};

}  // namespace

ReferenceTrajectory build_robot_reference(const RobotParams& params,
                                          double grid_step) {
  const RobotPath path;
  const TimingLaw law{1.0, 5.0, 0.0734};
  const RobotArmModel robot(params);
  const double t_end = law.t_end();
  const int n = static_cast<int>(std::ceil(t_end / grid_step)) + 1;
  const double h = t_end / (n - 1);

  MatrixXd rx(4, n), ru(2, n), drx(4, n), dru(2, n);
  double theta = -5.3;
  auto dpath = [&](double th) { return path.dp(th); };
  for (int i = 0; i < n; ++i) {
    const double t = h * i;
    if (i > 0) theta = integrate_theta(theta, t - h, t, law, dpath, 8);
    const Eigen::Vector2d q = path.p(theta);
    const Eigen::Vector2d pq = path.dp(theta);
    const Eigen::Vector2d pqq = path.ddp(theta);
    const double norm = pq.norm();
    const double thd = law.v(t) / norm;
    const double dnorm_dt = pq.dot(pqq) / norm * thd;
    const double thdd = law.vdot(t) / norm - law.v(t) * dnorm_dt / (norm * norm);
    const Eigen::Vector2d dq = pq * thd;
    const Eigen::Vector2d ddq = pqq * thd * thd + pq * thdd;

    rx.col(i) << q, dq;
    ru.col(i) << robot.inertia(q) * ddq + robot.coriolis(q, dq) * dq +
                     robot.gravity(q);
    drx.col(i) << dq, ddq;
  }
  // Torque-reference derivatives via central differences on the dense grid;
  // they only shape the interpolant between nodes.
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(i - 1, 0);
    const int hi = std::min(i + 1, n - 1);
    dru.col(i) = (ru.col(hi) - ru.col(lo)) / (h * (hi - lo));
  }
  return ReferenceTrajectory(h, rx, ru, drx, dru);
}

VectorXd robot_reference_acceleration(const ReferenceTrajectory& ref,
                                      double tau) {
  return ref.state_derivative(tau).tail(2);
}

double reference_consistency_residual(const ReferenceTrajectory& ref,
                                      const PlantModel& model, double ts,
                                      const std::vector<double>& taus,
                                      int substeps) {
  double worst = 0.0;
  for (double tau : taus) {
    VectorXd x = ref.state(tau);
    const VectorXd scale = (1.0 + x.array().abs()).matrix();
    const double h = ts / substeps;
    for (int i = 0; i < substeps; ++i) {
      const double t = tau + h * i;
      const VectorXd k1 = model.dynamics(x, ref.input(t));
      const VectorXd k2 =
          model.dynamics(x + h / 2 * k1, ref.input(t + h / 2));
      const VectorXd k3 =
          model.dynamics(x + h / 2 * k2, ref.input(t + h / 2));
      const VectorXd k4 = model.dynamics(x + h * k3, ref.input(t + h));
      x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    const VectorXd res =
        ((ref.state(tau + ts) - x).array() / scale.array()).abs();
    worst = std::max(worst, res.maxCoeff());
  }
  return worst;
}

}  // namespace mpftc
