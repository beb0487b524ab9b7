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

#include "mpftc/synthesis.hpp"

#include <Eigen/Eigenvalues>

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "mpftc/lqr.hpp"
#include "mpftc/sproc.hpp"

namespace mpftc {

using Eigen::MatrixXd;

TerminalSynthesisResult synthesize_robot_terminal(const RobotParams& params,
                                                  double ts,
                                                  LyapunovDiscretization disc) {
  (void)params;
  TerminalSynthesisResult out;
  out.ts = ts;
  out.discretization = disc;

  // Error dynamics per joint: a double-integrator chain driven by the
  // feedback-linearized input.
  MatrixXd A1(2, 2), B1(2, 1);
  A1 << 0, 1, 0, 0;
  B1 << 0, 1;
  const MatrixXd Kj =
      lqr_gain(A1, B1, MatrixXd::Identity(2, 2), 10.0 * MatrixXd::Identity(1, 1));
  const double K1 = Kj(0, 0), K2 = Kj(0, 1);

  // Stack both joints: eta = (position errors, velocity errors).
  MatrixXd A(4, 4), B(4, 2), K(2, 4);
  A.setZero();
  A.topRightCorner(2, 2).setIdentity();
  B.setZero();
  B.bottomRows(2).setIdentity();
  K.setZero();
  K.leftCols(2) = K1 * MatrixXd::Identity(2, 2);
  K.rightCols(2) = K2 * MatrixXd::Identity(2, 2);
  out.K_eta = K;

  {
    const MatrixXd Acl_c = A - B * K;
    const Eigen::VectorXcd ev = Acl_c.eigenvalues();
    for (int i = 0; i < ev.size(); ++i) {
      if (ev(i).real() >= 0.0) {
        throw std::runtime_error("synthesize_robot_terminal: unstable loop");
      }
    }
  }

  MatrixXd Acl;
  if (disc == LyapunovDiscretization::kClosedLoopExact) {
    Acl = expm((A - B * K) * ts);
  } else {
    MatrixXd Ad, Bd;
    zoh_discretize(A, B, ts, Ad, Bd);
    Acl = Ad - Bd * K;
  }

  // Tracking weights of the closed-loop cost enter the Lyapunov equation.
  MatrixXd Q = MatrixXd::Zero(4, 4);
  Q.diagonal() << 1e5, 1e5, 10.0, 10.0;
  const MatrixXd R = 1e-3 * MatrixXd::Identity(2, 2);
  out.P_eta = terminal_cost_lyapunov(Acl, Q, R, K);

  const BoundLedger& b = out.bounds;
  const double budget =
      b.u_bar - b.C_bar * b.qdot_bar - b.g_bar - b.B_bar * b.pddot_bar;
  if (budget <= 0.0) {
    throw std::runtime_error("synthesize_robot_terminal: negative budget");
  }
  const double gain_rowsum = K1 + K2;
  const double gain_spectral = std::sqrt(K1 * K1 + K2 * K2);
  out.d1 = budget / (b.B_bar * gain_rowsum);
  out.d1_spectral = budget / (b.B_bar * gain_spectral);
  out.d2 = b.qdot_bar - b.pdot_bar;

  out.gamma_star = sproc_level(out.P_eta, out.K_eta, out.d1, out.d2);
  out.gamma_star_spectral =
      sproc_level(out.P_eta, out.K_eta, out.d1_spectral, out.d2);
  return out;
}

DoubleIntegratorSynthesis synthesize_double_integrator_lqr(double ts) {
  DoubleIntegratorSynthesis out;
  out.ts = ts;
  MatrixXd A(2, 2), B(2, 1);
  A << 1, ts, 0, 1;
  B << 0.5 * ts * ts, ts;
  const MatrixXd Q = MatrixXd::Identity(2, 2);
  const MatrixXd R = 10.0 * MatrixXd::Identity(1, 1);
  out.P = dare(A, B, Q, R);
  out.K = lqr_gain_discrete(A, B, Q, R);
  return out;
}

namespace {

nlohmann::json matrix_to_json(const MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

MatrixXd matrix_from_json(const nlohmann::json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  }
  return m;
}

}  // namespace

std::string synthesis_to_json(const TerminalSynthesisResult& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "robot_terminal";
  j["K_eta"] = matrix_to_json(r.K_eta);
  j["P_eta"] = matrix_to_json(r.P_eta);
  j["gamma_star"] = r.gamma_star;
  j["gamma_star_spectral"] = r.gamma_star_spectral;
  j["d1"] = r.d1;
  j["d1_spectral"] = r.d1_spectral;
  j["d2"] = r.d2;
  j["ts"] = r.ts;
  j["discretization"] =
      r.discretization == LyapunovDiscretization::kClosedLoopExact
          ? "closed_loop_exact"
          : "zoh_then_feedback";
  j["bounds"] = {{"B_bar", r.bounds.B_bar},       {"C_bar", r.bounds.C_bar},
                 {"g_bar", r.bounds.g_bar},       {"pdot_bar", r.bounds.pdot_bar},
                 {"pddot_bar", r.bounds.pddot_bar}, {"u_bar", r.bounds.u_bar},
                 {"qdot_bar", r.bounds.qdot_bar}};
  return j.dump(2);
}

TerminalSynthesisResult synthesis_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema_version").get<int>() != 1) {
    throw std::invalid_argument("synthesis artifact: unsupported schema");
  }
  TerminalSynthesisResult r;
  r.K_eta = matrix_from_json(j.at("K_eta"));
  r.P_eta = matrix_from_json(j.at("P_eta"));
  r.gamma_star = j.at("gamma_star").get<double>();
  r.gamma_star_spectral = j.at("gamma_star_spectral").get<double>();
  r.d1 = j.at("d1").get<double>();
  r.d1_spectral = j.at("d1_spectral").get<double>();
  r.d2 = j.at("d2").get<double>();
  r.ts = j.at("ts").get<double>();
  r.discretization = j.at("discretization").get<std::string>() ==
                             "closed_loop_exact"
                         ? LyapunovDiscretization::kClosedLoopExact
                         : LyapunovDiscretization::kZohThenFeedback;
  const auto& b = j.at("bounds");
  r.bounds.B_bar = b.at("B_bar").get<double>();
  r.bounds.C_bar = b.at("C_bar").get<double>();
  r.bounds.g_bar = b.at("g_bar").get<double>();
  r.bounds.pdot_bar = b.at("pdot_bar").get<double>();
  r.bounds.pddot_bar = b.at("pddot_bar").get<double>();
  r.bounds.u_bar = b.at("u_bar").get<double>();
  r.bounds.qdot_bar = b.at("qdot_bar").get<double>();
  return r;
}

void save_synthesis(const TerminalSynthesisResult& r, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << synthesis_to_json(r) << "\n";
}

TerminalSynthesisResult load_synthesis(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  return synthesis_from_json(text);
}

std::string synthesis_to_json(const DoubleIntegratorSynthesis& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "double_integrator_lqr";
  j["K"] = matrix_to_json(r.K);
  j["P"] = matrix_to_json(r.P);
  j["ts"] = r.ts;
  return j.dump(2);
}

}  // namespace mpftc
