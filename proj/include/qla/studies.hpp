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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "qla/calibrate.hpp"
#include "qla/generator.hpp"
#include "qla/operators.hpp"

namespace qla {

// 12 x 12 plane-wave symbol of the discrete generator for uniform media.
template <typename Scalar>
DenseMatrix<Scalar> bloch_symbol(const LatticeSpec<Scalar>& lattice,
                                 Scalar omega_pi, Scalar omega_pe,
                                 Scalar omega_ci, Scalar omega_ce, Scalar kx,
                                 Scalar ky, DerivScheme scheme) {
  const Scalar c = Scalar(kLightSpeed);
  DenseMatrix<Scalar> h = DenseMatrix<Scalar>::Zero(kComponents, kComponents);
  const Scalar kx_eff = scheme == DerivScheme::Central
                            ? std::sin(kx * lattice.delta) / lattice.delta
                            : kx;
  const Scalar ky_eff = scheme == DerivScheme::Central
                            ? std::sin(ky * lattice.delta) / lattice.delta
                            : ky;
  // d/dx on a plane wave is i k_eff, so each kinetic entry is real.
  for (const auto& [r, col, sign] : kKineticX)
    h(r, col) += -Scalar(sign) * c * kx_eff;
  for (const auto& [r, col, sign] : kKineticY)
    h(r, col) += -Scalar(sign) * c * ky_eff;
  const Complex<Scalar> i_(Scalar(0), Scalar(1));
  for (int k = 0; k < 3; ++k) {
    h(kEx + k, kJix + k) = -i_ * omega_pi;
    h(kJix + k, kEx + k) = i_ * omega_pi;
    h(kEx + k, kJex + k) = -i_ * omega_pe;
    h(kJex + k, kEx + k) = i_ * omega_pe;
  }
  h(kJix, kJiy) = -i_ * omega_ci;
  h(kJiy, kJix) = i_ * omega_ci;
  h(kJex, kJey) = -i_ * omega_ce;
  h(kJey, kJex) = i_ * omega_ce;
  return h;
}

enum class WaveMode { Vacuum, OMode, XMode };

template <typename Scalar>
struct DispersionResult {
  Scalar omega_measured = Scalar(0);
  Scalar omega_analytic = Scalar(0);
  Scalar rel_error = Scalar(0);
  Scalar k_magnitude = Scalar(0);
};

namespace detail {

// Largest real root of the electron-only extraordinary-mode dispersion
// c^2 k^2 = omega^2 (S^2 - D^2) / S, cleared of denominators:
// W^3 - (2A+K) W^2 + (A^2 + K(A+C^2)) W - (B + K C^2 A) = 0,
// with W = omega^2, A = C^2 + P, B = C^2 P^2, P = omega_pe^2, C = omega_ce.
template <typename Scalar>
Scalar xmode_fast_root(Scalar omega_pe, Scalar omega_ce, Scalar ck) {
  const Scalar P = omega_pe * omega_pe;
  const Scalar C2 = omega_ce * omega_ce;
  const Scalar A = C2 + P;
  const Scalar B = C2 * P * P;
  const Scalar K = ck * ck;
  Eigen::Matrix<Scalar, 3, 3> companion;
  companion.setZero();
  companion(1, 0) = Scalar(1);
  companion(2, 1) = Scalar(1);
  companion(0, 2) = B + K * C2 * A;
  companion(1, 2) = -(A * A + K * (A + C2));
  companion(2, 2) = Scalar(2) * A + K;
  Eigen::EigenSolver<Eigen::Matrix<Scalar, 3, 3>> es(companion);
  Scalar best = Scalar(0);
  for (int i = 0; i < 3; ++i) {
    const auto w = es.eigenvalues()[i];
    if (std::abs(w.imag()) < Scalar(1e-9) * (Scalar(1) + std::abs(w.real())))
      best = std::max(best, w.real());
  }
  return std::sqrt(best);
}

template <typename Scalar>
Scalar polarization_weight(const DenseVector<Scalar>& v, WaveMode mode) {
  auto w = [&](int j) { return std::norm(v[j]); };
  switch (mode) {
    case WaveMode::Vacuum:
      return w(kEx) + w(kEy) + w(kEz) + w(kHx) + w(kHy) + w(kHz);
    case WaveMode::OMode:
      return w(kEz);
    case WaveMode::XMode:
      return w(kEx) + w(kEy) + w(kHz);
  }
  return Scalar(0);
}

}  // namespace detail

// Initializes the requested plane-wave eigenmode of the discrete symbol,
// evolves it with the exact reference, fits the oscillation frequency from
// the unwrapped overlap phase and compares against the analytic cold-plasma
// dispersion.  Electron-only X mode, fast branch.
template <typename Scalar>
DispersionResult<Scalar> dispersion_check(const LatticeSpec<Scalar>& lattice,
                                          const PlasmaProfile<Scalar>& profile,
                                          int mode_x, int mode_y, WaveMode mode,
                                          DerivScheme scheme =
                                              DerivScheme::Central) {
  if (!profile.uniform())
    throw ConfigError("dispersion_check: uniform profile required");
  if (mode_x != 0 && lattice.nx() / std::abs(mode_x) < 8)
    throw ConfigError("dispersion_check: fewer than 8 points per wavelength "
                      "along x");
  if (mode_y != 0 && lattice.ny() / std::abs(mode_y) < 8)
    throw ConfigError("dispersion_check: fewer than 8 points per wavelength "
                      "along y");
  const Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);
  const Scalar kx = two_pi * Scalar(mode_x) / (Scalar(lattice.nx()) * lattice.delta);
  const Scalar ky = two_pi * Scalar(mode_y) / (Scalar(lattice.ny()) * lattice.delta);
  const Scalar kmag = std::sqrt(kx * kx + ky * ky);
  const Scalar c = Scalar(kLightSpeed);

  DispersionResult<Scalar> result;
  result.k_magnitude = kmag;
  const Scalar wpe = profile.background_pe;
  switch (mode) {
    case WaveMode::Vacuum:
      result.omega_analytic = c * kmag;
      break;
    case WaveMode::OMode:
      result.omega_analytic = std::sqrt(wpe * wpe + c * c * kmag * kmag);
      break;
    case WaveMode::XMode:
      result.omega_analytic =
          detail::xmode_fast_root(wpe, profile.omega_ce, c * kmag);
      break;
  }

  // Eigenmode of the symbol with the right polarization.
  const DenseMatrix<Scalar> h =
      bloch_symbol(lattice, profile.background_pi, profile.background_pe,
                   profile.omega_ci, profile.omega_ce, kx, ky, scheme);
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(h);
  int pick = -1;
  Scalar best = Scalar(-1);
  for (int i = 0; i < kComponents; ++i) {
    const Scalar w = es.eigenvalues()[i];
    if (w <= Scalar(1e-12)) continue;
    DenseVector<Scalar> v = es.eigenvectors().col(i);
    Scalar weight = detail::polarization_weight(v, mode);
    if (mode == WaveMode::Vacuum) {
      // Keep the propagating branch: largest frequency wins.
      weight = w;
    } else if (mode == WaveMode::XMode) {
      // Two in-plane branches; take the one nearest the requested branch.
      weight -= std::abs(w - result.omega_analytic) /
                (Scalar(1) + result.omega_analytic);
    }
    if (weight > best) {
      best = weight;
      pick = i;
    }
  }
  if (pick < 0) throw NumericError("dispersion_check: no mode found");
  const DenseVector<Scalar> coin = es.eigenvectors().col(pick);
  const Scalar omega_est = std::max(es.eigenvalues()[pick], Scalar(1e-6));

  FieldState<Scalar> psi0(lattice);
  for (Eigen::Index p = 0; p < lattice.sites(); ++p) {
    auto [x, y] = lattice.position(p);
    const Complex<Scalar> phase =
        std::exp(Complex<Scalar>(Scalar(0), kx * x + ky * y));
    for (int j = 0; j < kComponents; ++j)
      psi0.amplitudes(p, j) = coin[j] * phase;
  }
  psi0.amplitudes /= std::sqrt(norm_squared(psi0));

  const DenseGenerator<Scalar> gen = build_generator(lattice, profile, scheme);
  const int samples = 16;
  const Scalar tau = Scalar(0.4) / omega_est;
  FieldState<Scalar> psi = psi0;
  std::vector<Scalar> phases(samples);
  phases[0] = Scalar(0);
  Scalar prev = Scalar(0);
  for (int m = 1; m < samples; ++m) {
    psi = exact_evolve(psi, gen, tau);
    const Complex<Scalar> overlap =
        (psi0.amplitudes.conjugate().cwiseProduct(psi.amplitudes)).sum();
    Scalar ph = std::arg(overlap);
    // Unwrap against the previous sample.
    while (ph - prev > Scalar(EIGEN_PI)) ph -= two_pi;
    while (ph - prev < -Scalar(EIGEN_PI)) ph += two_pi;
    phases[m] = ph;
    prev = ph;
  }
  // Least-squares slope of phase(t) = -omega t.
  Scalar st = 0, stt = 0, sp = 0, stp = 0;
  for (int m = 0; m < samples; ++m) {
    const Scalar t = Scalar(m) * tau;
    st += t;
    stt += t * t;
    sp += phases[m];
    stp += t * phases[m];
  }
  const Scalar slope =
      (Scalar(samples) * stp - st * sp) / (Scalar(samples) * stt - st * st);
  result.omega_measured = -slope;
  result.rel_error = std::abs(result.omega_measured - result.omega_analytic) /
                     std::max(result.omega_analytic, Scalar(1e-12));
  return result;
}

template <typename Scalar>
struct ConvergenceRow {
  Scalar delta;
  int n_px, n_py;
  long n_steps;
  Scalar error;
};

template <typename Scalar>
struct ConvergenceReport {
  std::vector<ConvergenceRow<Scalar>> rows;
  Scalar fitted_order = Scalar(0);
};

template <typename Scalar>
using ProfileFactory =
    std::function<PlasmaProfile<Scalar>(const LatticeSpec<Scalar>&)>;

// Runs the QLA to fixed physical time T for each delta in a halving sequence,
// refining the lattice so the physical box stays put, and measures the error
// against the matched central-difference reference.  Both evolutions share
// the spatial scheme, so the fitted order isolates the stepping error.
template <typename Scalar>
ConvergenceReport<Scalar> convergence_study(
    const LatticeSpec<Scalar>& base, const ProfileFactory<Scalar>& medium,
    Scalar T, int levels, Scalar kappa_kinetic, int mode_x = 1, int mode_y = 0,
    unsigned coin_seed = 7) {
  if (levels < 2) throw ConfigError("convergence_study: need >= 2 levels");
  // Fixed physical initial data: plane wave times a fixed coin vector.
  std::mt19937_64 rng(coin_seed);
  std::normal_distribution<Scalar> gauss(Scalar(0), Scalar(1));
  DenseVector<Scalar> coin(kComponents);
  for (int j = 0; j < kComponents; ++j)
    coin[j] = Complex<Scalar>(gauss(rng), gauss(rng));
  coin /= coin.norm();

  ConvergenceReport<Scalar> report;
  for (int level = 0; level < levels; ++level) {
    LatticeSpec<Scalar> lat(base.n_px + level, base.n_py + level,
                            base.delta / Scalar(1 << level), base.origin_x,
                            base.origin_y);
    const PlasmaProfile<Scalar> profile = medium(lat);
    const StepParams<Scalar> params =
        StepParams<Scalar>::defaults(lat.delta, profile, kappa_kinetic);
    const long n_steps = std::lround(double(T / params.dt));
    const Scalar t_eff = Scalar(n_steps) * params.dt;
    const Scalar two_pi = Scalar(2) * Scalar(EIGEN_PI);
    const Scalar kx = two_pi * Scalar(mode_x) / (Scalar(lat.nx()) * lat.delta);
    const Scalar ky = two_pi * Scalar(mode_y) / (Scalar(lat.ny()) * lat.delta);
    FieldState<Scalar> psi(lat);
    for (Eigen::Index p = 0; p < lat.sites(); ++p) {
      auto [x, y] = lat.position(p);
      const Complex<Scalar> phase =
          std::exp(Complex<Scalar>(Scalar(0), kx * x + ky * y));
      for (int j = 0; j < kComponents; ++j)
        psi.amplitudes(p, j) = coin[j] * phase;
    }
    psi.amplitudes /= std::sqrt(norm_squared(psi));

    FieldState<Scalar> ref = exact_evolve(
        psi, build_generator(lat, profile, DerivScheme::Central), t_eff);
    for (long s = 0; s < n_steps; ++s) qla_step(psi, profile, params);
    const Scalar err =
        (psi.amplitudes - ref.amplitudes).norm() / ref.amplitudes.norm();
    report.rows.push_back({lat.delta, lat.n_px, lat.n_py, n_steps, err});
  }
  // Least-squares order: ln(err) vs ln(delta).
  Scalar sx = 0, sxx = 0, sy = 0, sxy = 0;
  const Scalar n = Scalar(report.rows.size());
  for (const auto& row : report.rows) {
    const Scalar x = std::log(row.delta), y = std::log(row.error);
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
  }
  report.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return report;
}

}  // namespace qla
