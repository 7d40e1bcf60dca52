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

#include <random>

#include "doctest.h"
#include "qla/field_state.hpp"
#include "qla/plasma_profile.hpp"

using namespace qla;

namespace {

FieldTriplet<double> zeros(Eigen::Index n) {
  return FieldTriplet<double>::Zero(n, 3);
}

}  // namespace

TEST_CASE("lattice indexing is a row-major bijection") {
  LatticeSpec<double> lat(2, 3, 0.5);
  CHECK(lat.nx() == 4);
  CHECK(lat.ny() == 8);
  CHECK(lat.sites() == 32);
  for (Eigen::Index p = 0; p < lat.sites(); ++p) {
    auto [px, py] = lat.site_coords(p);
    CHECK(lat.site_index(px, py) == p);
  }
  CHECK_THROWS_AS(LatticeSpec<double>(0, 1, 0.5), ConfigError);
  CHECK_THROWS_AS(LatticeSpec<double>(1, 1, -1.0), ConfigError);
}

TEST_CASE("encode: zero inputs give the zero state") {
  LatticeSpec<double> lat(2, 1, 1.0);
  auto profile = PlasmaProfile<double>::uniform_medium(lat, 1.0, 1.0, 0, 0);
  auto state = encode_fields(lat, zeros(lat.sites()), zeros(lat.sites()),
                             zeros(lat.sites()), zeros(lat.sites()), profile);
  CHECK(norm_squared(state) == 0.0);
}

TEST_CASE("encode: unit Ex lands in psi_0 with unit scale") {
  LatticeSpec<double> lat(2, 1, 1.0);
  auto profile = PlasmaProfile<double>::vacuum(lat);
  auto E = zeros(lat.sites());
  E(3, 0) = 1.0;
  auto state = encode_fields(lat, E, zeros(lat.sites()), zeros(lat.sites()),
                             zeros(lat.sites()), profile);
  CHECK(state.amplitudes(3, kEx) == Complex<double>(1.0));
  CHECK(norm_squared(state) == doctest::Approx(1.0));
}

TEST_CASE("encode: current scaling J/(omega_p) and its inverse") {
  LatticeSpec<double> lat(2, 1, 1.0);
  auto profile = PlasmaProfile<double>::uniform_medium(lat, 4.0, 2.0, 0, 0);
  auto J_ci = zeros(lat.sites());
  const Eigen::Index p = 5;
  J_ci(p, 1) = 2.0;  // J_ciy
  auto state = encode_fields(lat, zeros(lat.sites()), zeros(lat.sites()), J_ci,
                             zeros(lat.sites()), profile);
  CHECK(state.amplitudes(p, kJiy).real() == doctest::Approx(0.5));

  auto [E, H, Jci, Jce] = decode_fields(state, profile);
  CHECK(Jci(p, 1).real() == doctest::Approx(2.0));
}

TEST_CASE("encode rejects currents where the plasma frequency vanishes") {
  LatticeSpec<double> lat(1, 1, 1.0);
  auto profile = PlasmaProfile<double>::vacuum(lat);
  auto J = zeros(lat.sites());
  J(0, 0) = 1.0;
  CHECK_THROWS_AS(encode_fields(lat, zeros(lat.sites()), zeros(lat.sites()), J,
                                zeros(lat.sites()), profile),
                  ConfigError);
  auto bad = zeros(lat.sites() + 1);
  CHECK_THROWS_AS(encode_fields(lat, bad, zeros(lat.sites()), zeros(lat.sites()),
                                zeros(lat.sites()), profile),
                  ConfigError);
}

TEST_CASE("decode composed with encode is the identity") {
  LatticeSpec<double> lat(2, 2, 0.7);
  auto profile = PlasmaProfile<double>::uniform_medium(lat, 1.3, 0.4, 0.2, -0.6);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  FieldTriplet<double> E(lat.sites(), 3), H(lat.sites(), 3),
      Jci(lat.sites(), 3), Jce(lat.sites(), 3);
  for (Eigen::Index p = 0; p < lat.sites(); ++p)
    for (int k = 0; k < 3; ++k) {
      E(p, k) = {gauss(rng), gauss(rng)};
      H(p, k) = {gauss(rng), gauss(rng)};
      Jci(p, k) = {gauss(rng), gauss(rng)};
      Jce(p, k) = {gauss(rng), gauss(rng)};
    }
  auto state = encode_fields(lat, E, H, Jci, Jce, profile);
  auto [E2, H2, Jci2, Jce2] = decode_fields(state, profile);
  CHECK((E2 - E).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((H2 - H).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((Jci2 - Jci).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((Jce2 - Jce).cwiseAbs().maxCoeff() < 1e-12);

  SUBCASE("zero state decodes to zero fields") {
    FieldState<double> zero(lat);
    auto [Ez, Hz, Jcz, Jez] = decode_fields(zero, profile);
    CHECK(Ez.cwiseAbs().maxCoeff() == 0.0);
    CHECK(Jez.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("norm_squared matches the brute-force double loop") {
  LatticeSpec<double> lat(3, 2, 1.0);
  auto state = random_state(lat, 42, false);
  double brute = 0.0;
  for (int j = 0; j < kComponents; ++j)
    for (Eigen::Index p = 0; p < lat.sites(); ++p)
      brute += std::norm(state.amplitudes(p, j));
  CHECK(norm_squared(state) == doctest::Approx(brute).epsilon(1e-13));

  FieldState<double> single(lat);
  single.amplitudes(2, kEy) = 0.6;
  CHECK(norm_squared(single) == doctest::Approx(0.36));
  CHECK(norm_squared(FieldState<double>(lat)) == 0.0);
}

TEST_CASE("energy is exactly delta^2 times norm_squared") {
  LatticeSpec<double> lat(2, 2, 0.5);
  FieldState<double> state(lat);
  state.amplitudes(0, kEx) = 1.0;
  CHECK(energy(state, lat) == 0.25);
  CHECK(energy(FieldState<double>(lat)) == 0.0);

  auto rnd = random_state(lat, 5, false);
  CHECK(energy(rnd, lat) == lat.delta * lat.delta * norm_squared(rnd));
}

TEST_CASE("coin-register lift round-trips and excluded states stay empty") {
  LatticeSpec<double> lat(2, 1, 1.0);
  auto state = random_state(lat, 3);
  auto lifted = lift_to_coin_register(state);
  for (Eigen::Index p = 0; p < lat.sites(); ++p)
    for (int b = 0; b < kCoinDim; ++b)
      if (!is_canonical_coin_basis(b))
        CHECK(lifted[p * kCoinDim + b] == Complex<double>(0));
  auto back = project_from_coin_register(lat, lifted);
  CHECK((back.amplitudes - state.amplitudes).norm() == 0.0);
}

TEST_CASE("gaussian blob profile") {
  LatticeSpec<double> lat(3, 3, 1.0);
  SUBCASE("zero amplitude gives the uniform background") {
    auto p = make_gaussian_blob_profile<double>(lat, 0.7, 0.3, {4.0, 4.0}, 1.5,
                                               0.0, 0.0, 3.0);
    CHECK((p.omega_pi == 0.7).all());
    CHECK((p.omega_pe == 0.3).all());
    CHECK(p.support.empty());
  }
  SUBCASE("center value is background plus amplitude") {
    auto p = make_gaussian_blob_profile<double>(lat, 0.7, 0.3, {4.0, 4.0}, 1.5,
                                               0.25, 0.5, 3.0);
    const auto center = lat.site_index(4, 4);
    CHECK(p.omega_pi[center] == doctest::Approx(0.95));
    CHECK(p.omega_pe[center] == doctest::Approx(0.8));
  }
  SUBCASE("support set matches a brute-force membership scan") {
    const double radius = 2.5;
    auto p = make_gaussian_blob_profile<double>(lat, 0.7, 0.3, {3.0, 5.0}, 1.5,
                                               0.25, 0.0, radius);
    std::vector<Eigen::Index> expected;
    for (Eigen::Index s = 0; s < lat.sites(); ++s) {
      auto [x, y] = lat.position(s);
      if ((x - 3.0) * (x - 3.0) + (y - 5.0) * (y - 5.0) <= radius * radius)
        expected.push_back(s);
    }
    CHECK(p.support == expected);
  }
  SUBCASE("negative resulting frequency is rejected") {
    CHECK_THROWS_AS(make_gaussian_blob_profile<double>(
                        lat, 0.1, 0.1, {4.0, 4.0}, 1.5, -0.5, 0.0, 3.0),
                    ConfigError);
  }
}
