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

#include <algorithm>
#include <cmath>

#include "qla/field_state.hpp"
#include "qla/step_params.hpp"
#include "qla/types.hpp"

namespace qla {

namespace detail {

// Cyclic shift of one component column by +1/-1 site along an axis.
// Column memory is contiguous with x fastest, so an x shift rotates each row
// of N_x entries and a y shift rotates the whole column by N_x.
template <typename Scalar>
void shift_component(FieldState<Scalar>& state, int component, Axis axis,
                     int direction) {
  auto* base = state.amplitudes.col(component).data();
  const Eigen::Index nx = state.lattice.nx();
  const Eigen::Index ny = state.lattice.ny();
  if (axis == Axis::X) {
    for (Eigen::Index row = 0; row < ny; ++row) {
      auto* first = base + row * nx;
      // +x: amplitude at p_x moves to p_x + 1 (anticlockwise rotate by one).
      if (direction > 0)
        std::rotate(first, first + nx - 1, first + nx);
      else
        std::rotate(first, first + 1, first + nx);
    }
  } else {
    const Eigen::Index n = nx * ny;
    if (direction > 0)
      std::rotate(base, base + n - nx, base + n);
    else
      std::rotate(base, base + nx, base + n);
  }
}

// In-place Givens mix of two component columns:
//   a' = cos * a - sin * b,  b' = sin * a + cos * b.
template <typename Scalar>
void rotate_pair(FieldState<Scalar>& state, int a, int b, Scalar angle) {
  const Scalar c = std::cos(angle), s = std::sin(angle);
  if (s == Scalar(0) && c == Scalar(1)) return;
  DenseVector<Scalar> tmp = c * state.amplitudes.col(a) -
                            s * state.amplitudes.col(b);
  state.amplitudes.col(b) = s * state.amplitudes.col(a) +
                            c * state.amplitudes.col(b);
  state.amplitudes.col(a) = tmp;
}

// Same mix with a per-site angle given by precomputed cos/sin arrays.
template <typename Scalar>
void rotate_pair_sitewise(FieldState<Scalar>& state, int a, int b,
                          const RealArray<Scalar>& c,
                          const RealArray<Scalar>& s) {
  DenseVector<Scalar> tmp =
      (c * state.amplitudes.col(a).array() - s * state.amplitudes.col(b).array())
          .matrix();
  state.amplitudes.col(b) =
      (s * state.amplitudes.col(a).array() + c * state.amplitudes.col(b).array())
          .matrix();
  state.amplitudes.col(a) = tmp;
}

}  // namespace detail

// Conditional streaming: components j1 and j2 shift by one site, everything
// else stays put.  Exact permutation, hence exactly norm preserving.
template <typename Scalar>
void apply_stream_pair(FieldState<Scalar>& state, int j1, int j2, Axis axis,
                       int direction) {
  if (j1 < 0 || j1 >= kComponents || j2 < 0 || j2 >= kComponents || j1 == j2)
    throw ConfigError("apply_stream_pair: components out of range");
  detail::shift_component(state, j1, axis, direction);
  detail::shift_component(state, j2, axis, direction);
}

// Coin rotations on the electromagnetic block (components 0..5):
// C_x mixes (Ey,Hz) and (Ez,Hy); C_y mixes (Ex,Hz) and (Ez,Hx) with the
// opposite sign pattern.  Currents are untouched.
template <typename Scalar>
void apply_coin(FieldState<Scalar>& state, Axis axis, Scalar angle,
                bool adjoint = false) {
  const Scalar th = adjoint ? -angle : angle;
  if (axis == Axis::X) {
    detail::rotate_pair(state, kEy, kHz, th);
    detail::rotate_pair(state, kEz, kHy, th);
  } else {
    detail::rotate_pair(state, kEx, kHz, -th);
    detail::rotate_pair(state, kEz, kHx, -th);
  }
}

// Homogeneous cyclotron rotations: (Jix,Jiy) by theta_ci, (Jex,Jey) by
// theta_ce.
template <typename Scalar>
void apply_cyclotron(FieldState<Scalar>& state, Scalar theta_ci,
                     Scalar theta_ce) {
  detail::rotate_pair(state, kJix, kJiy, theta_ci);
  detail::rotate_pair(state, kJex, kJey, theta_ce);
}

// Position-dependent plasma rotations, mixing E with the species current
// componentwise at angle omega_p(p) * dt.
template <typename Scalar>
void apply_plasma_potential(FieldState<Scalar>& state, Species species,
                            const PlasmaProfile<Scalar>& profile, Scalar dt) {
  if (profile.sites() != state.sites())
    throw ConfigError("apply_plasma_potential: profile size mismatch");
  const RealArray<Scalar>& omega =
      species == Species::Ion ? profile.omega_pi : profile.omega_pe;
  const RealArray<Scalar> theta = omega * dt;
  const RealArray<Scalar> c = theta.cos();
  const RealArray<Scalar> s = theta.sin();
  const int jbase = species == Species::Ion ? kJix : kJex;
  for (int k = 0; k < 3; ++k)
    detail::rotate_pair_sitewise(state, kEx + k, jbase + k, c, s);
}

namespace detail {

// One interleaved coin-streaming sweep.  The factors of the printed product
// are applied right to left; pairA streams with the first coin block, pairB
// with the second.
template <typename Scalar>
void apply_axis_sequence(FieldState<Scalar>& state, Axis axis, Scalar theta,
                         int a1, int a2, int b1, int b2) {
  auto coin = [&](bool adjoint) { apply_coin(state, axis, theta, adjoint); };
  auto streamA = [&](int dir) { apply_stream_pair(state, a1, a2, axis, dir); };
  auto streamB = [&](int dir) { apply_stream_pair(state, b1, b2, axis, dir); };
  coin(true);
  streamA(-1);
  coin(false);
  streamA(+1);
  coin(true);
  streamB(+1);
  coin(false);
  streamB(-1);
  coin(false);
  streamA(+1);
  coin(true);
  streamA(-1);
  coin(false);
  streamB(-1);
  coin(true);
  streamB(+1);
}

}  // namespace detail

// x sweep: streams on (Ey,Hy) and (Ez,Hz) interleaved with C_x rotations.
template <typename Scalar>
void apply_ux(FieldState<Scalar>& state, const StepParams<Scalar>& params) {
  detail::apply_axis_sequence(state, Axis::X, params.theta, kEy, kHy, kEz, kHz);
}

// y sweep: streams on (Ex,Hx) and (Ez,Hz) interleaved with C_y rotations.
template <typename Scalar>
void apply_uy(FieldState<Scalar>& state, const StepParams<Scalar>& params) {
  detail::apply_axis_sequence(state, Axis::Y, params.theta, kEx, kHx, kEz, kHz);
}

// Full conservative step: U_X, U_Y, cyclotron, ion then electron plasma
// rotations.  The order is that of the underlying perturbative sequence and
// must not be permuted.
template <typename Scalar>
void qla_step(FieldState<Scalar>& state, const PlasmaProfile<Scalar>& profile,
              const StepParams<Scalar>& params) {
  apply_ux(state, params);
  apply_uy(state, params);
  apply_cyclotron(state, params.theta_ci, params.theta_ce);
  apply_plasma_potential(state, Species::Ion, profile, params.dt);
  apply_plasma_potential(state, Species::Electron, profile, params.dt);
}

}  // namespace qla
