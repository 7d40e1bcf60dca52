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

#include <functional>

#include "qla/operators.hpp"
#include "qla/types.hpp"

namespace qla {

inline constexpr Eigen::Index kDenseCapDefault = 12 * 256;

// Dense state index convention is site-major: g = 12 p + j.
inline Eigen::Index dense_index(Eigen::Index site, int component) {
  return kComponents * site + component;
}

template <typename Scalar>
DenseVector<Scalar> flatten(const FieldState<Scalar>& state) {
  DenseVector<Scalar> v(state.sites() * kComponents);
  for (Eigen::Index p = 0; p < state.sites(); ++p)
    for (int j = 0; j < kComponents; ++j)
      v[dense_index(p, j)] = state.amplitudes(p, j);
  return v;
}

template <typename Scalar>
FieldState<Scalar> unflatten(const LatticeSpec<Scalar>& lattice,
                             const DenseVector<Scalar>& v) {
  FieldState<Scalar> state(lattice);
  for (Eigen::Index p = 0; p < lattice.sites(); ++p)
    for (int j = 0; j < kComponents; ++j)
      state.amplitudes(p, j) = v[dense_index(p, j)];
  return state;
}

// Materializes any state map as a 12N x 12N matrix, column by column.
template <typename Scalar>
DenseMatrix<Scalar> build_dense_operator(
    const LatticeSpec<Scalar>& lattice,
    const std::function<void(FieldState<Scalar>&)>& op,
    Eigen::Index cap = kDenseCapDefault) {
  const Eigen::Index dim = lattice.sites() * kComponents;
  if (dim > cap)
    throw NumericError("dense operator dimension " + std::to_string(dim) +
                       " exceeds cap " + std::to_string(cap));
  DenseMatrix<Scalar> U(dim, dim);
  for (Eigen::Index g = 0; g < dim; ++g) {
    FieldState<Scalar> basis(lattice);
    basis.amplitudes(g / kComponents, int(g % kComponents)) =
        Complex<Scalar>(1);
    op(basis);
    U.col(g) = flatten(basis);
  }
  return U;
}

template <typename Scalar>
DenseMatrix<Scalar> build_dense_step(const LatticeSpec<Scalar>& lattice,
                                     const PlasmaProfile<Scalar>& profile,
                                     const StepParams<Scalar>& params,
                                     Eigen::Index cap = kDenseCapDefault) {
  return build_dense_operator<Scalar>(
      lattice, [&](FieldState<Scalar>& s) { qla_step(s, profile, params); },
      cap);
}

// Embeds a 12N x 12N operator into the 16N circuit space: canonical coin
// states carry the operator, the excluded four are identity.
template <typename Scalar>
DenseMatrix<Scalar> embed_in_circuit_space(const LatticeSpec<Scalar>& lattice,
                                           const DenseMatrix<Scalar>& op12) {
  const Eigen::Index n = lattice.sites();
  const Eigen::Index dim = n * kCoinDim;
  DenseMatrix<Scalar> U = DenseMatrix<Scalar>::Identity(dim, dim);
  for (Eigen::Index pc = 0; pc < n; ++pc)
    for (int jc = 0; jc < kComponents; ++jc) {
      const Eigen::Index col16 = pc * kCoinDim + kCoinBasisOfComponent[jc];
      U(col16, col16) = Complex<Scalar>(0);
      for (Eigen::Index pr = 0; pr < n; ++pr)
        for (int jr = 0; jr < kComponents; ++jr) {
          const Complex<Scalar> v =
              op12(dense_index(pr, jr), dense_index(pc, jc));
          if (v != Complex<Scalar>(0))
            U(pr * kCoinDim + kCoinBasisOfComponent[jr], col16) = v;
        }
    }
  return U;
}

}  // namespace qla
