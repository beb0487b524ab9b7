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

#include "mpftc/log_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mpftc/nlp.hpp"

namespace mpftc {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << std::setprecision(17);
  return f;
}

}  // namespace

std::string log_csv_header(int nx, int nu) {
  std::ostringstream os;
  os << "k,t,tau,v,value,stage_cost,status,solver_violation,certificate_ok,"
        "cert_violation,used_certificate,obstacle_active,h_violation,g_value";
  for (int i = 0; i < nx; ++i) os << ",x" << i;
  for (int i = 0; i < nu; ++i) os << ",u" << i;
  return os.str();
}

void write_log_csv(const ClosedLoopLog& log, const std::string& path) {
  auto f = open_out(path);
  if (log.steps.empty()) return;
  const int nx = static_cast<int>(log.steps.front().x.size());
  const int nu = static_cast<int>(log.steps.front().u.size());
  f << log_csv_header(nx, nu) << "\n";
  for (const StepRecord& s : log.steps) {
    f << s.k << "," << s.t << "," << s.tau << "," << s.v << "," << s.value
      << "," << s.stage_cost << "," << to_string(s.status) << ","
      << s.solver_violation << "," << (s.certificate_ok ? 1 : 0) << ","
      << s.cert_violation << "," << (s.used_certificate ? 1 : 0) << ","
      << (s.obstacle_active ? 1 : 0) << "," << s.h_violation << ","
      << s.g_value;
    for (int i = 0; i < nx; ++i) f << "," << s.x(i);
    for (int i = 0; i < nu; ++i) f << "," << s.u(i);
    f << "\n";
  }
}

namespace {

nlohmann::json vec_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

nlohmann::json mat_json(const Eigen::MatrixXd& m) {
  nlohmann::json a = nlohmann::json::array();
  for (int c = 0; c < m.cols(); ++c) a.push_back(vec_json(m.col(c)));
  return a;
}

}  // namespace

void write_log_json(const ClosedLoopLog& log, const std::string& path) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["name"] = log.name;
  j["mode"] = log.mode;
  j["ts"] = log.ts;
  j["seed"] = log.seed;
  j["fallback_count"] = log.fallback_count;
  j["uncertified_count"] = log.uncertified_count;
  j["final_x"] = vec_json(log.final_x);
  j["final_tau"] = log.final_tau;
  nlohmann::json steps = nlohmann::json::array();
  for (const StepRecord& s : log.steps) {
    steps.push_back({{"k", s.k},
                     {"t", s.t},
                     {"x", vec_json(s.x)},
                     {"tau", s.tau},
                     {"u", vec_json(s.u)},
                     {"v", s.v},
                     {"value", s.value},
                     {"stage_cost", s.stage_cost},
                     {"status", to_string(s.status)},
                     {"solver_violation", s.solver_violation},
                     {"certificate_ok", s.certificate_ok},
                     {"cert_violation", s.cert_violation},
                     {"used_certificate", s.used_certificate},
                     {"obstacle_active", s.obstacle_active},
                     {"h_violation", s.h_violation},
                     {"g_value", s.g_value},
                     {"wall_ms", s.wall_ms}});
  }
  j["steps"] = std::move(steps);
  nlohmann::json ols = nlohmann::json::array();
  for (const OpenLoopSample& ol : log.open_loops) {
    ols.push_back({{"k", ol.k},
                   {"X", mat_json(ol.X)},
                   {"Tau", vec_json(ol.Tau)},
                   {"U", mat_json(ol.U)},
                   {"V", vec_json(ol.V)}});
  }
  j["open_loops"] = std::move(ols);
  if (!log.obstacle_track.empty()) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& p : log.obstacle_track) w.push_back({p(0), p(1)});
    j["obstacle_track"] = std::move(w);
  }
  auto f = open_out(path);
  f << j.dump(1) << "\n";
}

void write_states_csv(const ClosedLoopLog& log, const ReferenceTrajectory& ref,
                      const std::string& path) {
  auto f = open_out(path);
  if (log.steps.empty()) return;
  const int nx = static_cast<int>(log.steps.front().x.size());
  const int nu = static_cast<int>(log.steps.front().u.size());
  f << "t,tau";
  for (int i = 0; i < nx; ++i) f << ",x" << i;
  for (int i = 0; i < nx; ++i) f << ",rx" << i;
  for (int i = 0; i < nu; ++i) f << ",u" << i;
  for (int i = 0; i < nu; ++i) f << ",ru" << i;
  f << ",v\n";
  for (const StepRecord& s : log.steps) {
    f << s.t << "," << s.tau;
    const VectorXd rx = ref.state(s.tau);
    const VectorXd ru = ref.input(s.tau);
    for (int i = 0; i < nx; ++i) f << "," << s.x(i);
    for (int i = 0; i < nx; ++i) f << "," << rx(i);
    for (int i = 0; i < nu; ++i) f << "," << s.u(i);
    for (int i = 0; i < nu; ++i) f << "," << ru(i);
    f << "," << s.v << "\n";
  }
}

void write_openloop_csv(const ClosedLoopLog& log, const std::string& path) {
  auto f = open_out(path);
  f << "k,n,t_pred,tau";
  if (!log.open_loops.empty()) {
    for (int i = 0; i < log.open_loops.front().X.rows(); ++i) f << ",x" << i;
  }
  f << "\n";
  for (const OpenLoopSample& ol : log.open_loops) {
    for (int n = 0; n < ol.X.cols(); ++n) {
      f << ol.k << "," << n << "," << (ol.k * log.ts + n * log.ts) << ","
        << ol.Tau(n);
      for (int i = 0; i < ol.X.rows(); ++i) f << "," << ol.X(i, n);
      f << "\n";
    }
  }
}

void write_obstacle_csv(const ClosedLoopLog& log, const std::string& path) {
  auto f = open_out(path);
  f << "k,t,wx,wy\n";
  for (size_t k = 0; k < log.obstacle_track.size(); ++k) {
    f << k << "," << (static_cast<double>(k) * log.ts) << ","
      << log.obstacle_track[k](0) << "," << log.obstacle_track[k](1) << "\n";
  }
}

}  // namespace mpftc
