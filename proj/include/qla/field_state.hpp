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

#include <random>
#include <string>
#include <tuple>

#include "qla/encoding.hpp"
#include "qla/lattice.hpp"
#include "qla/plasma_profile.hpp"
#include "qla/types.hpp"

namespace qla {

// Twelve complex amplitudes per lattice site.  Component meaning is fixed by
// the encoding table: E, H, then the ion and electron conduction currents in
// their normalized form.
template <typename Scalar>
struct FieldState {
  LatticeSpec<Scalar> lattice;
  AmpMatrix<Scalar> amplitudes;  // sites x 12

  FieldState() = default;
  explicit FieldState(const LatticeSpec<Scalar>& spec)
      : lattice(spec),
        amplitudes(AmpMatrix<Scalar>::Zero(spec.sites(), kComponents)) {}

  Eigen::Index sites() const { return amplitudes.rows(); }

  bool finite() const { return amplitudes.allFinite(); }
};

template <typename Scalar>
Scalar norm_squared(const FieldState<Scalar>& state) {
  return state.amplitudes.squaredNorm();
}

// Discretized field-plus-kinetic energy; by the state scaling this is just
// delta^2 * sum |psi|^2.
template <typename Scalar>
Scalar energy(const FieldState<Scalar>& state,
              const LatticeSpec<Scalar>& lattice) {
  return lattice.delta * lattice.delta * norm_squared(state);
}

template <typename Scalar>
Scalar energy(const FieldState<Scalar>& state) {
  return energy(state, state.lattice);
}

template <typename Scalar>
using FieldTriplet = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 3>;

// psi_0..2 = sqrt(eps0) E, psi_3..5 = sqrt(mu0) H,
// psi_6..8 = J_ci / (sqrt(eps0) omega_pi), psi_9..11 likewise for electrons.
// Lattice units eps0 = mu0 = 1.
template <typename Scalar>
FieldState<Scalar> encode_fields(const LatticeSpec<Scalar>& lattice,
                                 const FieldTriplet<Scalar>& E,
                                 const FieldTriplet<Scalar>& H,
                                 const FieldTriplet<Scalar>& J_ci,
                                 const FieldTriplet<Scalar>& J_ce,
                                 const PlasmaProfile<Scalar>& profile) {
  const Eigen::Index n = lattice.sites();
  if (E.rows() != n || H.rows() != n || J_ci.rows() != n || J_ce.rows() != n ||
      profile.sites() != n)
    throw ConfigError("encode_fields: size mismatch with lattice");
  FieldState<Scalar> state(lattice);
  for (int k = 0; k < 3; ++k) {
    state.amplitudes.col(kEx + k) = E.col(k);
    state.amplitudes.col(kHx + k) = H.col(k);
  }
  for (Eigen::Index p = 0; p < n; ++p) {
    for (int k = 0; k < 3; ++k) {
      const Complex<Scalar> ji = J_ci(p, k);
      const Complex<Scalar> je = J_ce(p, k);
      if (ji != Complex<Scalar>(0)) {
        if (profile.omega_pi[p] <= Scalar(0))
          throw ConfigError("encode_fields: nonzero ion current with zero "
                            "omega_pi at site " + std::to_string(p));
        state.amplitudes(p, kJix + k) = ji / profile.omega_pi[p];
      }
      if (je != Complex<Scalar>(0)) {
        if (profile.omega_pe[p] <= Scalar(0))
          throw ConfigError("encode_fields: nonzero electron current with "
                            "zero omega_pe at site " + std::to_string(p));
        state.amplitudes(p, kJex + k) = je / profile.omega_pe[p];
      }
    }
  }
  return state;
}

template <typename Scalar>
std::tuple<FieldTriplet<Scalar>, FieldTriplet<Scalar>, FieldTriplet<Scalar>,
           FieldTriplet<Scalar>>
decode_fields(const FieldState<Scalar>& state,
              const PlasmaProfile<Scalar>& profile) {
  const Eigen::Index n = state.sites();
  if (profile.sites() != n)
    throw ConfigError("decode_fields: size mismatch with profile");
  FieldTriplet<Scalar> E(n, 3), H(n, 3), J_ci(n, 3), J_ce(n, 3);
  for (int k = 0; k < 3; ++k) {
    E.col(k) = state.amplitudes.col(kEx + k);
    H.col(k) = state.amplitudes.col(kHx + k);
    J_ci.col(k) = state.amplitudes.col(kJix + k).array() *
                  profile.omega_pi.template cast<Complex<Scalar>>();
    J_ce.col(k) = state.amplitudes.col(kJex + k).array() *
                  profile.omega_pe.template cast<Complex<Scalar>>();
  }
  return {E, H, J_ci, J_ce};
}

// Lift to the 16-dimensional coin space (site-major, index = 16 p + basis).
// The four excluded basis states carry zeros.
template <typename Scalar>
DenseVector<Scalar> lift_to_coin_register(const FieldState<Scalar>& state) {
  DenseVector<Scalar> v =
      DenseVector<Scalar>::Zero(state.sites() * kCoinDim);
  for (int j = 0; j < kComponents; ++j)
    for (Eigen::Index p = 0; p < state.sites(); ++p)
      v[p * kCoinDim + kCoinBasisOfComponent[j]] = state.amplitudes(p, j);
  return v;
}

template <typename Scalar>
FieldState<Scalar> project_from_coin_register(
    const LatticeSpec<Scalar>& lattice, const DenseVector<Scalar>& v) {
  if (v.size() != lattice.sites() * kCoinDim)
    throw ConfigError("project_from_coin_register: size mismatch");
  FieldState<Scalar> state(lattice);
  for (int j = 0; j < kComponents; ++j)
    for (Eigen::Index p = 0; p < lattice.sites(); ++p)
      state.amplitudes(p, j) = v[p * kCoinDim + kCoinBasisOfComponent[j]];
  return state;
}

template <typename Scalar>
FieldState<Scalar> random_state(const LatticeSpec<Scalar>& lattice,
                                unsigned seed, bool normalized = true) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<Scalar> gauss(Scalar(0), Scalar(1));
  FieldState<Scalar> state(lattice);
  for (int j = 0; j < kComponents; ++j)
    for (Eigen::Index p = 0; p < lattice.sites(); ++p)
      state.amplitudes(p, j) = Complex<Scalar>(gauss(rng), gauss(rng));
  if (normalized)
    state.amplitudes /= std::sqrt(norm_squared(state));
  return state;
}

}  // namespace qla
