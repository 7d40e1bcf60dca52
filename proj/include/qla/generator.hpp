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

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "qla/dense.hpp"
#include "qla/field_state.hpp"
#include "qla/types.hpp"

namespace qla {

enum class DerivScheme { Central, Spectral };

// Kinetic couplings of the plasma-Dirac generator restricted to the x-y
// plane: H[r][c] = sign * i * c * d/daxis, mirroring the curl structure of
// the electromagnetic block.
struct KineticCoupling {
  int row, col, sign;
};

inline constexpr std::array<KineticCoupling, 4> kKineticX = {{
    {kEy, kHz, -1}, {kHz, kEy, -1}, {kEz, kHy, +1}, {kHy, kEz, +1}}};
inline constexpr std::array<KineticCoupling, 4> kKineticY = {{
    {kEx, kHz, +1}, {kHz, kEx, +1}, {kEz, kHx, -1}, {kHx, kEz, -1}}};

namespace detail {

// Dense periodic spectral differentiation matrix along one axis, built from
// the mode sum with the Nyquist derivative zeroed.
template <typename Scalar>
DenseMatrix<Scalar> spectral_derivative(Eigen::Index n, Scalar delta) {
  DenseMatrix<Scalar> d = DenseMatrix<Scalar>::Zero(n, n);
  const Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);
  for (Eigen::Index m = 0; m < n; ++m) {
    Eigen::Index mw = m <= n / 2 ? m : m - n;
    if (2 * m == n) continue;  // Nyquist
    const Scalar k = two_pi * Scalar(mw) / (Scalar(n) * delta);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        d(i, j) += Complex<Scalar>(Scalar(0), k) *
                   std::exp(Complex<Scalar>(
                       Scalar(0), two_pi * Scalar(mw) * Scalar(i - j) /
                                      Scalar(n))) /
                   Scalar(n);
  }
  return d;
}

}  // namespace detail

// The discrete plasma-Dirac generator H = D - i D_diss.  Applies matrix-free
// so the reference evolution scales past the dense cap; materializes on
// request for spectra and calibration.
template <typename Scalar>
struct DenseGenerator {
  LatticeSpec<Scalar> lattice;
  PlasmaProfile<Scalar> profile;
  DerivScheme scheme = DerivScheme::Central;
  bool include_collisions = false;
  DenseMatrix<Scalar> dx_spectral, dy_spectral;  // cached for Spectral

  // y += H x.
  void apply(const FieldState<Scalar>& x, FieldState<Scalar>& y) const {
    const Scalar c = Scalar(kLightSpeed);
    const Complex<Scalar> ic(Scalar(0), c);
    if (scheme == DerivScheme::Central) {
      const Scalar inv2d = Scalar(1) / (Scalar(2) * lattice.delta);
      FieldState<Scalar> shifted(x.lattice);
      for (Axis axis : {Axis::X, Axis::Y}) {
        const auto& table = axis == Axis::X ? kKineticX : kKineticY;
        for (const auto& [r, col, sign] : table) {
          // d/daxis via (psi(p+1) - psi(p-1)) / 2 delta on component col.
          shifted.amplitudes.col(col) = x.amplitudes.col(col);
          detail::shift_component(shifted, col, axis, -1);
          y.amplitudes.col(r) +=
              Scalar(sign) * ic * inv2d * shifted.amplitudes.col(col);
          shifted.amplitudes.col(col) = x.amplitudes.col(col);
          detail::shift_component(shifted, col, axis, +1);
          y.amplitudes.col(r) -=
              Scalar(sign) * ic * inv2d * shifted.amplitudes.col(col);
        }
      }
    } else {
      apply_spectral(x, y, dx_spectral, dy_spectral);
    }
    apply_potential(x, y);
  }

  void apply_potential(const FieldState<Scalar>& x,
                       FieldState<Scalar>& y) const {
    const Complex<Scalar> i_(Scalar(0), Scalar(1));
    auto wpi = profile.omega_pi.template cast<Complex<Scalar>>();
    auto wpe = profile.omega_pe.template cast<Complex<Scalar>>();
    for (int k = 0; k < 3; ++k) {
      y.amplitudes.col(kEx + k) -=
          (i_ * wpi * x.amplitudes.col(kJix + k).array()).matrix();
      y.amplitudes.col(kEx + k) -=
          (i_ * wpe * x.amplitudes.col(kJex + k).array()).matrix();
      y.amplitudes.col(kJix + k) +=
          (i_ * wpi * x.amplitudes.col(kEx + k).array()).matrix();
      y.amplitudes.col(kJex + k) +=
          (i_ * wpe * x.amplitudes.col(kEx + k).array()).matrix();
    }
    // omega_c S_z on each current block.
    y.amplitudes.col(kJix) -= i_ * profile.omega_ci * x.amplitudes.col(kJiy);
    y.amplitudes.col(kJiy) += i_ * profile.omega_ci * x.amplitudes.col(kJix);
    y.amplitudes.col(kJex) -= i_ * profile.omega_ce * x.amplitudes.col(kJey);
    y.amplitudes.col(kJey) += i_ * profile.omega_ce * x.amplitudes.col(kJex);
    if (include_collisions && profile.nu > Scalar(0))
      for (int j = kJix; j <= kJez; ++j)
        y.amplitudes.col(j) -= i_ * profile.nu * x.amplitudes.col(j);
  }

  void apply_spectral(const FieldState<Scalar>& x, FieldState<Scalar>& y,
                      const DenseMatrix<Scalar>& dx,
                      const DenseMatrix<Scalar>& dy) const {
    const Complex<Scalar> ic(Scalar(0), Scalar(kLightSpeed));
    const Eigen::Index nx = lattice.nx(), ny = lattice.ny();
    using CMat = DenseMatrix<Scalar>;
    for (const auto& [r, col, sign] : kKineticX) {
      Eigen::Map<const CMat> grid(x.amplitudes.col(col).data(), nx, ny);
      Eigen::Map<CMat> out(y.amplitudes.col(r).data(), nx, ny);
      out += Scalar(sign) * ic * (dx * grid);
    }
    for (const auto& [r, col, sign] : kKineticY) {
      Eigen::Map<const CMat> grid(x.amplitudes.col(col).data(), nx, ny);
      Eigen::Map<CMat> out(y.amplitudes.col(r).data(), nx, ny);
      out += Scalar(sign) * ic * (grid * dy.transpose());
    }
  }

  // Row-sum bound on ||H||_inf, used to slice the Taylor evolution.
  Scalar norm_bound() const {
    const Scalar c = Scalar(kLightSpeed);
    Scalar kin;
    if (scheme == DerivScheme::Central) {
      kin = Scalar(2) * c / lattice.delta;  // four entries of c / (2 delta)
    } else {
      kin = Scalar(2) * c * Scalar(EIGEN_PI) / lattice.delta;
    }
    const Scalar wp = profile.omega_pi.maxCoeff() + profile.omega_pe.maxCoeff();
    const Scalar wc =
        std::max(std::abs(profile.omega_ci), std::abs(profile.omega_ce));
    return kin + wp + wc + (include_collisions ? profile.nu : Scalar(0));
  }

  DenseMatrix<Scalar> materialize(Eigen::Index cap = kDenseCapDefault) const {
    return build_dense_operator<Scalar>(
        lattice,
        [&](FieldState<Scalar>& s) {
          FieldState<Scalar> out(lattice);
          apply(s, out);
          s = out;
        },
        cap);
  }
};

template <typename Scalar>
DenseGenerator<Scalar> build_generator(const LatticeSpec<Scalar>& lattice,
                                       const PlasmaProfile<Scalar>& profile,
                                       DerivScheme scheme = DerivScheme::Central,
                                       bool include_collisions = false) {
  if (profile.sites() != lattice.sites())
    throw ConfigError("build_generator: profile size mismatch");
  DenseGenerator<Scalar> gen{lattice, profile, scheme, include_collisions, {}, {}};
  if (scheme == DerivScheme::Spectral) {
    gen.dx_spectral =
        detail::spectral_derivative<Scalar>(lattice.nx(), lattice.delta);
    gen.dy_spectral =
        detail::spectral_derivative<Scalar>(lattice.ny(), lattice.delta);
  }
  return gen;
}

// exp(-i H T) psi by sliced Taylor summation.  Slices keep ||H|| dt <= 1/2 so
// the series reaches machine precision in ~20 terms; the truncation monitor
// aborts if it does not.
template <typename Scalar>
FieldState<Scalar> exact_evolve(const FieldState<Scalar>& state,
                                const DenseGenerator<Scalar>& gen, Scalar T) {
  if (T < Scalar(0)) throw ConfigError("exact_evolve: T >= 0 required");
  if (T == Scalar(0)) return state;
  const Scalar bound = gen.norm_bound();
  const int slices = std::max(1, int(std::ceil(double(bound * T) / 0.5)));
  const Complex<Scalar> step(-T / Scalar(slices));
  FieldState<Scalar> psi = state;
  const int max_terms = 64;
  for (int s = 0; s < slices; ++s) {
    FieldState<Scalar> sum = psi;
    FieldState<Scalar> term = psi;
    bool converged = false;
    for (int k = 1; k <= max_terms; ++k) {
      FieldState<Scalar> hterm(gen.lattice);
      gen.apply(term, hterm);
      term.amplitudes =
          (Complex<Scalar>(Scalar(0), Scalar(1)) * step / Scalar(k)) *
          hterm.amplitudes;
      sum.amplitudes += term.amplitudes;
      const Scalar tol = std::numeric_limits<Scalar>::epsilon() * Scalar(0.01);
      const Scalar tn = term.amplitudes.norm();
      if (tn <= tol * std::max(sum.amplitudes.norm(),
                               std::numeric_limits<Scalar>::min())) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericError("exact_evolve: Taylor tolerance not met");
    psi = sum;
  }
  return psi;
}

}  // namespace qla
