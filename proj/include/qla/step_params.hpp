// Copyright 2026 The qlaplas authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qla/plasma_profile.hpp"
#include "qla/types.hpp"

namespace qla {

// Angles of one evolution step under diffusion ordering dt = delta^2.
// theta = kappa_kinetic * c * delta / 4 drives the coin rotations; the
// potential angles are exact, theta_c = omega_c * dt and theta_p(p) =
// omega_p(p) * dt, which makes every potential factor the exact exponential
// of its generator over dt.
template <typename Scalar>
struct StepParams {
  Scalar delta = Scalar(1);
  Scalar dt = Scalar(1);
  Scalar theta = Scalar(0);
  Scalar theta_ci = Scalar(0);
  Scalar theta_ce = Scalar(0);
  Scalar kappa_kinetic = Scalar(1);

  void validate() const {
    if (!(dt > Scalar(0))) throw ConfigError("step: dt > 0 required");
    if (!std::isfinite(static_cast<double>(theta)))
      throw ConfigError("step: theta must be finite");
  }

  static StepParams defaults(Scalar delta, const PlasmaProfile<Scalar>& profile,
                             Scalar kappa = Scalar(1)) {
    StepParams p;
    p.delta = delta;
    p.dt = delta * delta;
    p.kappa_kinetic = kappa;
    p.theta = kappa * Scalar(kLightSpeed) * delta / Scalar(4);
    p.theta_ci = profile.omega_ci * p.dt;
    p.theta_ce = profile.omega_ce * p.dt;
    return p;
  }

  StepParams with_kappa(Scalar kappa) const {
    StepParams p = *this;
    p.kappa_kinetic = kappa;
    p.theta = kappa * Scalar(kLightSpeed) * delta / Scalar(4);
    return p;
  }
};

}  // namespace qla
