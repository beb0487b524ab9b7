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

#ifndef MPFTC_LOG_IO_HPP_
#define MPFTC_LOG_IO_HPP_

#include <string>

#include "mpftc/closed_loop.hpp"
#include "mpftc/reference.hpp"

namespace mpftc {

/// One row per closed-loop step; excludes wall times so replays are
/// byte-identical. Header documented in the README.
std::string log_csv_header(int nx, int nu);
void write_log_csv(const ClosedLoopLog& log, const std::string& path);

/// Full log including thinned open-loop predictions and wall times.
void write_log_json(const ClosedLoopLog& log, const std::string& path);

/// Plot-ready trajectory data: states, inputs, and the reference evaluated
/// at the logged tau.
void write_states_csv(const ClosedLoopLog& log, const ReferenceTrajectory& ref,
                      const std::string& path);
void write_openloop_csv(const ClosedLoopLog& log, const std::string& path);
void write_obstacle_csv(const ClosedLoopLog& log, const std::string& path);

}  // namespace mpftc

#endif  // MPFTC_LOG_IO_HPP_
