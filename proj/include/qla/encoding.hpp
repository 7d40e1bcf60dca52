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
#include <string_view>

#include "qla/types.hpp"

namespace qla {

// Field components in storage order.
enum Component : int {
  kEx = 0,
  kEy,
  kEz,
  kHx,
  kHy,
  kHz,
  kJix,
  kJiy,
  kJiz,
  kJex,
  kJey,
  kJez,
};

inline constexpr std::array<std::string_view, kComponents> kComponentNames = {
    "Ex", "Ey", "Ez", "Hx", "Hy", "Hz",
    "Jix", "Jiy", "Jiz", "Jex", "Jey", "Jez"};

// The twelve canonical 4-qubit product states carrying the field amplitudes.
// The four basis states 0001, 0010, 0011, 0111 are excluded and must stay
// unpopulated through every operator.
inline constexpr std::array<int, kComponents> kCoinBasisOfComponent = {
    0b0000, 0b0100, 0b0101, 0b0110, 0b1000, 0b1001,
    0b1010, 0b1011, 0b1100, 0b1101, 0b1110, 0b1111};

// Inverse map; -1 marks an excluded coin basis state.
inline constexpr std::array<int, kCoinDim> component_of_coin_basis_table() {
  std::array<int, kCoinDim> t{};
  for (int b = 0; b < kCoinDim; ++b) t[b] = -1;
  for (int j = 0; j < kComponents; ++j) t[kCoinBasisOfComponent[j]] = j;
  return t;
}

inline constexpr std::array<int, kCoinDim> kComponentOfCoinBasis =
    component_of_coin_basis_table();

inline constexpr bool is_canonical_coin_basis(int b) {
  return b >= 0 && b < kCoinDim && kComponentOfCoinBasis[b] >= 0;
}

inline constexpr bool is_current_component(int j) { return j >= kJix; }

}  // namespace qla
