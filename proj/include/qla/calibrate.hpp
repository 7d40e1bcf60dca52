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
#include <vector>

#include "qla/generator.hpp"
#include "qla/operators.hpp"
#include "qla/step_params.hpp"

namespace qla {

template <typename Scalar>
struct CalibrationReport {
  std::vector<Scalar> deltas;
  std::vector<Scalar> kappa_fits;     // per-delta least-squares fit
  std::vector<Scalar> residuals;      // relative Frobenius residual at fit
  Scalar kappa_kinetic = Scalar(0);   // Richardson extrapolate of the fits
  Scalar residual_order = Scalar(0);  // empirical order of the residual
};

namespace detail {

// H_eff = i (U - I) / dt for the step at coin scale kappa.
template <typename Scalar>
DenseMatrix<Scalar> effective_generator(const LatticeSpec<Scalar>& lattice,
                                        const PlasmaProfile<Scalar>& profile,
                                        const StepParams<Scalar>& params) {
  DenseMatrix<Scalar> u = build_dense_step(lattice, profile, params);
  const Eigen::Index dim = u.rows();
  u -= DenseMatrix<Scalar>::Identity(dim, dim);
  return Complex<Scalar>(Scalar(0), Scalar(1) / params.dt) * u;
}

}  // namespace detail

// Pins the constant kappa_kinetic in theta = kappa c delta / 4 by fitting the
// effective step generator against the central-difference discrete generator
// over a halving delta sequence, then Richardson-extrapolating the per-delta
// fits.  The residual and its empirical order are reported; a residual that
// fails to decrease with delta raises a diagnostic error.
template <typename Scalar>
CalibrationReport<Scalar> calibrate_generator(
    const LatticeSpec<Scalar>& lattice, const PlasmaProfile<Scalar>& profile,
    const StepParams<Scalar>& params, int levels = 3) {
  CalibrationReport<Scalar> report;
  Scalar delta = params.delta;
  for (int level = 0; level < levels; ++level, delta /= Scalar(2)) {
    LatticeSpec<Scalar> lat = lattice;
    lat.delta = delta;
    const DenseMatrix<Scalar> target =
        build_generator(lat, profile, DerivScheme::Central).materialize();
    const Scalar tnorm = target.norm();
    auto heff = [&](Scalar kappa) {
      StepParams<Scalar> sp = StepParams<Scalar>::defaults(
          delta, profile, kappa);
      return detail::effective_generator(lat, profile, sp);
    };
    // Pick the better-aligned sign, then iterate the projection
    // <H_eff, H_t> / <H_eff, H_eff>, which is a fixed point at the
    // least-squares scale.
    Scalar kappa = Scalar(1);
    {
      const Scalar rp = (heff(Scalar(1)) - target).norm();
      const Scalar rm = (heff(Scalar(-1)) - target).norm();
      if (rm < rp) kappa = Scalar(-1);
    }
    for (int it = 0; it < 6; ++it) {
      const DenseMatrix<Scalar> he = heff(kappa);
      const Scalar num = (he.conjugate().cwiseProduct(target)).sum().real();
      const Scalar den = he.squaredNorm();
      const Scalar next = kappa * num / den;
      if (std::abs(next - kappa) <= Scalar(1e-14) * std::abs(kappa)) {
        kappa = next;
        break;
      }
      kappa = next;
    }
    report.deltas.push_back(delta);
    report.kappa_fits.push_back(kappa);
    report.residuals.push_back((heff(kappa) - target).norm() / tnorm);
  }
  for (size_t i = 1; i < report.residuals.size(); ++i)
    if (!(report.residuals[i] < report.residuals[i - 1]))
      throw NumericError(
          "calibrate_generator: residual not decreasing with delta");
  const size_t last = report.kappa_fits.size() - 1;
  if (last >= 1) {
    // kappa(delta) = kappa0 + c delta^2 under halving.
    report.kappa_kinetic =
        (Scalar(4) * report.kappa_fits[last] - report.kappa_fits[last - 1]) /
        Scalar(3);
    Scalar order_sum = Scalar(0);
    for (size_t i = 0; i + 1 < report.residuals.size(); ++i)
      order_sum += std::log2(report.residuals[i] / report.residuals[i + 1]);
    report.residual_order = order_sum / Scalar(report.residuals.size() - 1);
  } else {
    report.kappa_kinetic = report.kappa_fits[0];
  }
  return report;
}

}  // namespace qla
