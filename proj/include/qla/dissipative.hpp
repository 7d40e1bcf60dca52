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
#include <optional>
#include <random>
#include <vector>

#include "qla/dense.hpp"
#include "qla/operators.hpp"

namespace qla {

// Collisional contraction parameters: cos(phi/2) = exp(-nu dt) links the
// contraction to the unitary phase pair realizing it, beta = 2 nu dt is the
// per-step norm decay rate of the current block.
template <typename Scalar>
struct DissipativeParams {
  Scalar nu = Scalar(0);
  Scalar dt = Scalar(1);

  DissipativeParams() = default;
  DissipativeParams(Scalar collision, Scalar step) : nu(collision), dt(step) {
    validate();
  }

  void validate() const {
    if (nu < Scalar(0)) throw ConfigError("dissipative: nu >= 0 required");
    if (!(dt > Scalar(0))) throw ConfigError("dissipative: dt > 0 required");
  }

  Scalar contraction() const { return std::exp(-nu * dt); }
  Scalar phi() const { return Scalar(2) * std::acos(contraction()); }
  Scalar beta() const { return Scalar(2) * nu * dt; }
};

// K = diag(I, e^{-nu dt} I): currents contract, fields pass through.
template <typename Scalar>
void apply_K(FieldState<Scalar>& state, const DissipativeParams<Scalar>& params) {
  const Scalar g = params.contraction();
  if (g == Scalar(1)) return;
  for (int j = kJix; j <= kJez; ++j) state.amplitudes.col(j) *= g;
}

// K_z = diag(I, e^{-i phi / 2} I), one of the two unitaries averaging to K.
template <typename Scalar>
void apply_Kz(FieldState<Scalar>& state, const DissipativeParams<Scalar>& params,
              bool adjoint = false) {
  const Scalar half = params.phi() / Scalar(2);
  const Complex<Scalar> phase =
      std::exp(Complex<Scalar>(Scalar(0), adjoint ? half : -half));
  if (phase == Complex<Scalar>(1)) return;
  for (int j = kJix; j <= kJez; ++j) state.amplitudes.col(j) *= phase;
}

template <typename Scalar>
struct LcuOutcome {
  FieldState<Scalar> kept;       // ancilla-0 branch, K psi, unnormalized
  FieldState<Scalar> discarded;  // ancilla-1 branch, (K_z - K_z^dag) psi / 2
  Scalar p_success = Scalar(0);
};

// One prepare-select-unprepare round: the ancilla-0 branch carries K psi and
// is kept with probability ||K psi||^2 / ||psi||^2.
template <typename Scalar>
LcuOutcome<Scalar> lcu_step(const FieldState<Scalar>& state,
                            const DissipativeParams<Scalar>& params) {
  const Scalar n2 = norm_squared(state);
  if (n2 <= Scalar(0)) throw ConfigError("lcu_step: zero input state");
  LcuOutcome<Scalar> out;
  out.kept = state;
  apply_K(out.kept, params);
  out.discarded = FieldState<Scalar>(state.lattice);
  const Scalar s = std::sin(params.phi() / Scalar(2));
  const Complex<Scalar> coeff(Scalar(0), -s);  // (e^{-i phi/2} - e^{i phi/2})/2
  for (int j = kJix; j <= kJez; ++j)
    out.discarded.amplitudes.col(j) = coeff * state.amplitudes.col(j);
  out.p_success = norm_squared(out.kept) / n2;
  return out;
}

// One-ancilla dilation of K: [[K, -sqrt(I-K^2)], [sqrt(I-K^2), K]] over the
// doubled 12N space (ancilla most significant).
template <typename Scalar>
DenseMatrix<Scalar> dilate_sznagy(const DissipativeParams<Scalar>& params,
                                  const LatticeSpec<Scalar>& lattice,
                                  Eigen::Index cap = kDenseCapDefault) {
  const Eigen::Index dim = lattice.sites() * kComponents;
  if (2 * dim > 2 * cap)
    throw NumericError("dilate_sznagy: dimension exceeds cap");
  const Scalar g = params.contraction();
  const Scalar root = std::sqrt(std::max(Scalar(0), Scalar(1) - g * g));
  DenseMatrix<Scalar> u = DenseMatrix<Scalar>::Zero(2 * dim, 2 * dim);
  for (Eigen::Index p = 0; p < lattice.sites(); ++p)
    for (int j = 0; j < kComponents; ++j) {
      const Eigen::Index g12 = dense_index(p, j);
      const Scalar kd = is_current_component(j) ? g : Scalar(1);
      const Scalar rd = is_current_component(j) ? root : Scalar(0);
      u(g12, g12) = kd;
      u(dim + g12, dim + g12) = kd;
      u(g12, dim + g12) = -rd;
      u(dim + g12, g12) = rd;
    }
  return u;
}

// Trotter step of the collisional evolution: contraction first, then the
// conservative step as the unitary factor.  Returns the success probability
// of the round on the normalized input.
template <typename Scalar>
Scalar trotter_dissipative_step(FieldState<Scalar>& state,
                                const PlasmaProfile<Scalar>& profile,
                                const StepParams<Scalar>& step_params,
                                const DissipativeParams<Scalar>& diss_params) {
  const Scalar before = norm_squared(state);
  if (before <= Scalar(0))
    throw ConfigError("trotter_dissipative_step: zero input state");
  apply_K(state, diss_params);
  const Scalar p = norm_squared(state) / before;
  qla_step(state, profile, step_params);
  return p;
}

template <typename Scalar>
struct TrajectoryRecord {
  long step = 0;
  Scalar time = Scalar(0);
  Scalar norm2 = Scalar(0);     // unnormalized running state
  Scalar p_step = Scalar(1);    // success probability of the producing step
  Scalar p_cumulative = Scalar(1);
  Scalar a_k = Scalar(0);       // current-block population, normalized state
  Scalar energy_value = Scalar(0);
};

template <typename Scalar>
struct Trajectory {
  std::vector<TrajectoryRecord<Scalar>> records;
  std::vector<FieldState<Scalar>> snapshots;
  std::vector<long> snapshot_steps;
  bool aborted = false;   // Monte-Carlo post-selection failed
  long aborted_at = -1;
};

template <typename Scalar>
Scalar current_population(const FieldState<Scalar>& state) {
  Scalar cur = Scalar(0);
  for (int j = kJix; j <= kJez; ++j)
    cur += state.amplitudes.col(j).squaredNorm();
  return cur / norm_squared(state);
}

struct RunOptions {
  long snapshot_every = 0;        // 0 disables snapshots
  bool sample_postselection = false;
  unsigned long long seed = 0;
};

// Iterates the Trotterized collisional step without renormalizing, recording
// per-step probabilities of the running normalized state and their product.
// The product telescopes to the squared norm of the unnormalized state.
template <typename Scalar>
Trajectory<Scalar> run_dissipative(const FieldState<Scalar>& initial,
                                   const PlasmaProfile<Scalar>& profile,
                                   const StepParams<Scalar>& step_params,
                                   const DissipativeParams<Scalar>& diss_params,
                                   long n_steps,
                                   const RunOptions& options = {}) {
  if (n_steps < 1) throw ConfigError("run_dissipative: n_steps >= 1 required");
  Trajectory<Scalar> traj;
  traj.records.reserve(n_steps + 1);
  FieldState<Scalar> state = initial;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto record = [&](long step, Scalar p_step, Scalar p_cum) {
    TrajectoryRecord<Scalar> r;
    r.step = step;
    r.time = Scalar(step) * step_params.dt;
    r.norm2 = norm_squared(state);
    if (!std::isfinite(double(r.norm2)))
      throw NumericError("run_dissipative: non-finite norm at step " +
                         std::to_string(step));
    r.p_step = p_step;
    r.p_cumulative = p_cum;
    r.a_k = current_population(state);
    r.energy_value = energy(state);
    traj.records.push_back(r);
    if (options.snapshot_every > 0 && step % options.snapshot_every == 0) {
      traj.snapshots.push_back(state);
      traj.snapshot_steps.push_back(step);
    }
  };

  record(0, Scalar(1), Scalar(1));
  Scalar p_cum = Scalar(1);
  for (long step = 1; step <= n_steps; ++step) {
    const Scalar p =
        trotter_dissipative_step(state, profile, step_params, diss_params);
    p_cum *= p;
    if (options.sample_postselection && unit(rng) > double(p)) {
      traj.aborted = true;
      traj.aborted_at = step;
      record(step, p, p_cum);
      break;
    }
    record(step, p, p_cum);
  }
  return traj;
}

// Asymptotic success-probability floor exp(-a0) of the idealized product
// prod_k (1 - beta a0 e^{-k beta});  exact finite product on request.
template <typename Scalar>
Scalar success_bound(Scalar a0, Scalar beta) {
  if (a0 < Scalar(0) || a0 >= Scalar(1))
    throw ConfigError("success_bound: 0 <= a0 < 1 required");
  if (!(beta > Scalar(0))) throw ConfigError("success_bound: beta > 0 required");
  return std::exp(-a0);
}

template <typename Scalar>
Scalar success_bound_finite(Scalar a0, Scalar beta, long n_steps) {
  if (a0 < Scalar(0) || a0 >= Scalar(1))
    throw ConfigError("success_bound_finite: 0 <= a0 < 1 required");
  if (!(beta > Scalar(0)))
    throw ConfigError("success_bound_finite: beta > 0 required");
  Scalar log_p = Scalar(0);
  for (long k = 0; k < n_steps; ++k)
    log_p += std::log1p(-beta * a0 * std::exp(-Scalar(k) * beta));
  return std::exp(log_p);
}

}  // namespace qla
