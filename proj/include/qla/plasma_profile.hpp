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

#include <cmath>
#include <string>
#include <vector>

#include "qla/lattice.hpp"
#include "qla/types.hpp"

namespace qla {

// Per-site plasma frequencies, homogeneous (signed) cyclotron frequencies and
// a uniform collision rate.  `support` lists the sites whose plasma frequency
// deviates from the recorded uniform background; circuit synthesis in sparse
// mode emits position-controlled rotations only there.
template <typename Scalar>
struct PlasmaProfile {
  RealArray<Scalar> omega_pi;
  RealArray<Scalar> omega_pe;
  Scalar omega_ci = Scalar(0);
  Scalar omega_ce = Scalar(0);
  Scalar nu = Scalar(0);
  Scalar background_pi = Scalar(0);
  Scalar background_pe = Scalar(0);
  std::vector<Eigen::Index> support;

  void validate() const {
    if ((omega_pi < Scalar(0)).any() || (omega_pe < Scalar(0)).any())
      throw ConfigError("profile: plasma frequencies must be non-negative");
    if (nu < Scalar(0)) throw ConfigError("profile: nu >= 0 required");
    if (omega_pi.size() != omega_pe.size())
      throw ConfigError("profile: species arrays must share the lattice size");
  }

  Eigen::Index sites() const { return omega_pi.size(); }
  bool uniform() const { return support.empty(); }

  static PlasmaProfile uniform_medium(const LatticeSpec<Scalar>& lattice,
                                      Scalar wpi, Scalar wpe, Scalar wci,
                                      Scalar wce, Scalar collision = Scalar(0)) {
    PlasmaProfile p;
    p.omega_pi = RealArray<Scalar>::Constant(lattice.sites(), wpi);
    p.omega_pe = RealArray<Scalar>::Constant(lattice.sites(), wpe);
    p.omega_ci = wci;
    p.omega_ce = wce;
    p.nu = collision;
    p.background_pi = wpi;
    p.background_pe = wpe;
    p.validate();
    return p;
  }

  static PlasmaProfile vacuum(const LatticeSpec<Scalar>& lattice) {
    return uniform_medium(lattice, Scalar(0), Scalar(0), Scalar(0), Scalar(0));
  }
};

// Uniform background plus a Gaussian bump truncated at `support_radius`
// around `center` (physical coordinates).  Outside the support radius the
// profile is exactly the background.
template <typename Scalar>
PlasmaProfile<Scalar> make_gaussian_blob_profile(
    const LatticeSpec<Scalar>& lattice, Scalar background_pi,
    Scalar background_pe, std::pair<Scalar, Scalar> blob_center,
    Scalar blob_sigma, Scalar blob_amplitude_pi, Scalar blob_amplitude_pe,
    Scalar support_radius) {
  if (!(blob_sigma > Scalar(0)))
    throw ConfigError("blob: sigma > 0 required");
  if (support_radius < Scalar(0))
    throw ConfigError("blob: support_radius >= 0 required");
  PlasmaProfile<Scalar> p = PlasmaProfile<Scalar>::uniform_medium(
      lattice, background_pi, background_pe, Scalar(0), Scalar(0));
  const Scalar r2max = support_radius * support_radius;
  for (Eigen::Index s = 0; s < lattice.sites(); ++s) {
    auto [x, y] = lattice.position(s);
    const Scalar dx = x - blob_center.first;
    const Scalar dy = y - blob_center.second;
    const Scalar r2 = dx * dx + dy * dy;
    if (r2 > r2max) continue;
    const Scalar bump = std::exp(-r2 / (Scalar(2) * blob_sigma * blob_sigma));
    const Scalar wpi = background_pi + blob_amplitude_pi * bump;
    const Scalar wpe = background_pe + blob_amplitude_pe * bump;
    if (wpi < Scalar(0) || wpe < Scalar(0))
      throw ConfigError("blob: negative plasma frequency at site " +
                        std::to_string(s));
    p.omega_pi[s] = wpi;
    p.omega_pe[s] = wpe;
    if (blob_amplitude_pi != Scalar(0) || blob_amplitude_pe != Scalar(0))
      p.support.push_back(s);
  }
  return p;
}

}  // namespace qla
