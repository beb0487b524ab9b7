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

#include "mpftc/tube.hpp"

#include <cmath>
#include <stdexcept>

namespace mpftc {

UncertaintyModel UncertaintyModel::drifting_disc(double ts, double speed,
                                                 double heading,
                                                 double xi_bound, double r0,
                                                 double radius_step) {
  UncertaintyModel m;
  m.drift = speed * ts * Vector2d(std::cos(heading), std::sin(heading));
  m.xi_bound = xi_bound;
  m.r0 = r0;
  m.radius_step = radius_step;
  m.omega = [drift = m.drift](const Vector2d& w, const Vector2d& xi) {
    return Vector2d(w + drift + xi);
  };
  return m;
}

std::vector<UncertaintySet> propagate_tube(const UncertaintyModel& model,
                                           const Vector2d& w0, long horizon,
                                           long k) {
  if (horizon < 0) {
    throw std::invalid_argument("propagate_tube: negative horizon");
  }
  std::vector<UncertaintySet> tube;
  tube.reserve(horizon + 1);
  Vector2d c = w0;
  for (long i = 0; i <= horizon; ++i) {
    UncertaintySet s;
    s.center = c;
    s.radius = model.r0 + static_cast<double>(i) * model.radius_step;
    s.n = k + i;
    s.k = k;
    tube.push_back(s);
    c += model.drift;
  }
  return tube;
}

}  // namespace mpftc
