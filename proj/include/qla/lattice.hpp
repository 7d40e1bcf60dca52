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

#include <utility>

#include "qla/types.hpp"

namespace qla {

// Periodic x-y lattice with N_x = 2^n_px, N_y = 2^n_py sites and a single
// spacing delta shared by both axes.  Sites are stored row-major,
// p = p_y * N_x + p_x, with p0 the least significant bit of each axis
// register.
template <typename Scalar>
struct LatticeSpec {
  int n_px = 1;
  int n_py = 1;
  Scalar delta = Scalar(1);
  Scalar origin_x = Scalar(0);
  Scalar origin_y = Scalar(0);

  LatticeSpec() = default;
  LatticeSpec(int npx, int npy, Scalar d, Scalar ox = Scalar(0),
              Scalar oy = Scalar(0))
      : n_px(npx), n_py(npy), delta(d), origin_x(ox), origin_y(oy) {
    validate();
  }

  void validate() const {
    if (n_px < 1 || n_py < 1)
      throw ConfigError("lattice: n_px >= 1 and n_py >= 1 required");
    if (n_px + n_py > 30) throw ConfigError("lattice: register too large");
    if (!(delta > Scalar(0))) throw ConfigError("lattice: delta > 0 required");
  }

  Eigen::Index nx() const { return Eigen::Index(1) << n_px; }
  Eigen::Index ny() const { return Eigen::Index(1) << n_py; }
  Eigen::Index sites() const { return nx() * ny(); }
  int position_qubits() const { return n_px + n_py; }

  Eigen::Index site_index(Eigen::Index px, Eigen::Index py) const {
    return py * nx() + px;
  }
  std::pair<Eigen::Index, Eigen::Index> site_coords(Eigen::Index p) const {
    return {p % nx(), p / nx()};
  }
  // Physical coordinates of site p.
  std::pair<Scalar, Scalar> position(Eigen::Index p) const {
    auto [px, py] = site_coords(p);
    return {origin_x + Scalar(px) * delta, origin_y + Scalar(py) * delta};
  }

  bool operator==(const LatticeSpec& o) const {
    return n_px == o.n_px && n_py == o.n_py && delta == o.delta &&
           origin_x == o.origin_x && origin_y == o.origin_y;
  }
};

}  // namespace qla
