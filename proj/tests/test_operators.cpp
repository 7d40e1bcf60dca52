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

#include <functional>
#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "qla/dense.hpp"
#include "qla/operators.hpp"

using namespace qla;

namespace {

double max_abs_diff(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Independent per-site oracle: materialize the 12x12 rotation for each site
// and apply it by plain matrix-vector products.
FieldState<double> sitewise_rotation_oracle(
    const FieldState<double>& state,
    const std::function<Eigen::Matrix<Complex<double>, 12, 12>(Eigen::Index)>&
        block) {
  FieldState<double> out(state.lattice);
  for (Eigen::Index p = 0; p < state.sites(); ++p)
    out.amplitudes.row(p) = (block(p) * state.amplitudes.row(p).transpose())
                                .transpose();
  return out;
}

}  // namespace

TEST_CASE("streaming moves a delta along the requested axis and wraps") {
  LatticeSpec<double> lat(3, 2, 1.0);
  FieldState<double> state(lat);
  state.amplitudes(lat.site_index(3, 0), kEy) = 1.0;
  apply_stream_pair(state, kEy, kHy, Axis::X, +1);
  CHECK(state.amplitudes(lat.site_index(4, 0), kEy) == Complex<double>(1.0));
  CHECK(state.amplitudes(lat.site_index(3, 0), kEy) == Complex<double>(0.0));

  SUBCASE("periodic wrap at the x edge") {
    FieldState<double> edge(lat);
    edge.amplitudes(lat.site_index(lat.nx() - 1, 1), kEz) = 1.0;
    apply_stream_pair(edge, kEz, kHz, Axis::X, +1);
    CHECK(edge.amplitudes(lat.site_index(0, 1), kEz) == Complex<double>(1.0));
  }
  SUBCASE("y shift moves whole rows") {
    FieldState<double> s(lat);
    s.amplitudes(lat.site_index(2, lat.ny() - 1), kEx) = 1.0;
    apply_stream_pair(s, kEx, kHx, Axis::Y, +1);
    CHECK(s.amplitudes(lat.site_index(2, 0), kEx) == Complex<double>(1.0));
  }
  SUBCASE("forward then backward is the exact identity") {
    auto rnd = random_state(lat, 1);
    auto copy = rnd;
    apply_stream_pair(rnd, kEz, kHz, Axis::X, +1);
    apply_stream_pair(rnd, kEz, kHz, Axis::X, -1);
    CHECK((rnd.amplitudes - copy.amplitudes).norm() == 0.0);
  }
  CHECK_THROWS_AS(apply_stream_pair(state, 0, 12, Axis::X, 1), ConfigError);
  CHECK_THROWS_AS(apply_stream_pair(state, 3, 3, Axis::X, 1), ConfigError);
}

TEST_CASE("coin rotations realize the printed sign pattern") {
  LatticeSpec<double> lat(1, 1, 1.0);
  const double half_pi = EIGEN_PI / 2;

  SUBCASE("angle zero is the identity") {
    auto rnd = random_state(lat, 2);
    auto copy = rnd;
    apply_coin(rnd, Axis::X, 0.0);
    apply_coin(rnd, Axis::Y, 0.0);
    CHECK((rnd.amplitudes - copy.amplitudes).norm() == 0.0);
  }
  SUBCASE("C_x(pi/2) sends unit psi_1 to unit psi_5") {
    FieldState<double> s(lat);
    s.amplitudes(0, kEy) = 1.0;
    apply_coin(s, Axis::X, half_pi);
    CHECK(s.amplitudes(0, kHz).real() == doctest::Approx(1.0));
    CHECK(std::abs(s.amplitudes(0, kEy)) < 1e-15);
  }
  SUBCASE("C_y(pi/2) sends unit psi_0 to minus psi_5") {
    FieldState<double> s(lat);
    s.amplitudes(0, kEx) = 1.0;
    apply_coin(s, Axis::Y, half_pi);
    CHECK(s.amplitudes(0, kHz).real() == doctest::Approx(-1.0));
  }
  SUBCASE("adjoint inverts") {
    auto rnd = random_state(lat, 3);
    auto copy = rnd;
    apply_coin(rnd, Axis::X, 0.3);
    apply_coin(rnd, Axis::X, 0.3, true);
    CHECK((rnd.amplitudes - copy.amplitudes).norm() < 1e-15);
  }
}

TEST_CASE("cyclotron rotation examples and additivity") {
  LatticeSpec<double> lat(2, 1, 1.0);
  SUBCASE("zero angles are the identity") {
    auto rnd = random_state(lat, 4);
    auto copy = rnd;
    apply_cyclotron(rnd, 0.0, 0.0);
    CHECK((rnd.amplitudes - copy.amplitudes).norm() == 0.0);
  }
  SUBCASE("theta_ci = pi/2 rotates psi_6 into psi_7") {
    FieldState<double> s(lat);
    s.amplitudes(1, kJix) = 1.0;
    apply_cyclotron(s, EIGEN_PI / 2, 0.0);
    CHECK(s.amplitudes(1, kJiy).real() == doctest::Approx(1.0));
  }
  SUBCASE("angles compose additively") {
    auto a = random_state(lat, 5);
    auto b = a;
    apply_cyclotron(a, 0.3, -0.4);
    apply_cyclotron(a, 0.5, 0.9);
    apply_cyclotron(b, 0.8, 0.5);
    CHECK((a.amplitudes - b.amplitudes).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("plasma potential matches the per-site dense rotation oracle") {
  LatticeSpec<double> lat(2, 2, 1.0);
  auto profile = make_gaussian_blob_profile<double>(lat, 0.4, 0.9, {1.5, 2.0},
                                                   1.0, 0.6, 0.5, 4.0);
  profile.omega_ci = 0.0;
  profile.omega_ce = 0.0;
  const double dt = 0.17;

  SUBCASE("uniform zero frequency is the identity") {
    auto vac = PlasmaProfile<double>::vacuum(lat);
    auto rnd = random_state(lat, 6);
    auto copy = rnd;
    apply_plasma_potential(rnd, Species::Ion, vac, dt);
    CHECK((rnd.amplitudes - copy.amplitudes).norm() == 0.0);
  }
  SUBCASE("pi/2 site rotation sends psi_0 to psi_6 (ion)") {
    auto p = PlasmaProfile<double>::uniform_medium(lat, EIGEN_PI / 2, 0, 0, 0);
    FieldState<double> s(lat);
    s.amplitudes(2, kEx) = 1.0;
    apply_plasma_potential(s, Species::Ion, p, 1.0);
    CHECK(s.amplitudes(2, kJix).real() == doctest::Approx(1.0));
  }
  for (Species species : {Species::Ion, Species::Electron}) {
    auto state = random_state(lat, 7);
    auto expected = sitewise_rotation_oracle(state, [&](Eigen::Index p) {
      Eigen::Matrix<Complex<double>, 12, 12> r;
      r.setIdentity();
      const auto& w = species == Species::Ion ? profile.omega_pi
                                              : profile.omega_pe;
      const int jb = species == Species::Ion ? kJix : kJex;
      const double c = std::cos(w[p] * dt), s = std::sin(w[p] * dt);
      for (int k = 0; k < 3; ++k) {
        r(kEx + k, kEx + k) = c;
        r(kEx + k, jb + k) = -s;
        r(jb + k, kEx + k) = s;
        r(jb + k, jb + k) = c;
      }
      return r;
    });
    apply_plasma_potential(state, species, profile, dt);
    CHECK((state.amplitudes - expected.amplitudes).cwiseAbs().maxCoeff() <
          1e-13);
  }
}

TEST_CASE("axis sweeps: identity at theta = 0 and exact norm preservation") {
  LatticeSpec<double> lat(3, 1, 0.5);
  auto profile = PlasmaProfile<double>::vacuum(lat);
  auto params = StepParams<double>::defaults(lat.delta, profile, 0.0);
  auto rnd = random_state(lat, 8);
  auto copy = rnd;
  apply_ux(rnd, params);
  apply_uy(rnd, params);
  CHECK((rnd.amplitudes - copy.amplitudes).norm() == 0.0);

  params = StepParams<double>::defaults(lat.delta, profile, -1.0);
  const double n0 = norm_squared(rnd);
  apply_ux(rnd, params);
  CHECK(std::abs(norm_squared(rnd) - n0) < 1e-13 * n0);
  apply_uy(rnd, params);
  CHECK(std::abs(norm_squared(rnd) - n0) < 1e-13 * n0);
}

TEST_CASE("axis sweep equals the dense product of its printed factors") {
  LatticeSpec<double> lat(2, 1, 0.5);
  auto profile = PlasmaProfile<double>::vacuum(lat);
  auto params = StepParams<double>::defaults(lat.delta, profile, -1.0);
  const double theta = params.theta;

  auto dense_of = [&](const std::function<void(FieldState<double>&)>& op) {
    return build_dense_operator<double>(lat, op);
  };
  const auto coin = dense_of([&](auto& s) { apply_coin(s, Axis::X, theta); });
  const auto coin_dag =
      dense_of([&](auto& s) { apply_coin(s, Axis::X, theta, true); });
  const auto sp14 =
      dense_of([&](auto& s) { apply_stream_pair(s, kEy, kHy, Axis::X, +1); });
  const auto sm14 =
      dense_of([&](auto& s) { apply_stream_pair(s, kEy, kHy, Axis::X, -1); });
  const auto sp25 =
      dense_of([&](auto& s) { apply_stream_pair(s, kEz, kHz, Axis::X, +1); });
  const auto sm25 =
      dense_of([&](auto& s) { apply_stream_pair(s, kEz, kHz, Axis::X, -1); });

  // The printed product, rightmost factor applied first.
  const DenseMatrix<double> expected = sp25 * coin_dag * sm25 * coin * sm14 *
                                       coin_dag * sp14 * coin * sm25 * coin *
                                       sp25 * coin_dag * sp14 * coin * sm14 *
                                       coin_dag;
  const auto actual = dense_of([&](auto& s) { apply_ux(s, params); });
  CHECK(max_abs_diff(actual, expected) < 1e-13);
}

TEST_CASE("qla_step: order of factors and unitarity") {
  LatticeSpec<double> lat(2, 2, 0.5);
  auto profile = PlasmaProfile<double>::uniform_medium(lat, 0.4, 0.8, 0.3, -0.9);
  auto params = StepParams<double>::defaults(lat.delta, profile, -1.0);

  SUBCASE("vacuum with theta = 0 is the identity") {
    auto vac = PlasmaProfile<double>::vacuum(lat);
    auto p0 = StepParams<double>::defaults(lat.delta, vac, 0.0);
    auto rnd = random_state(lat, 9);
    auto copy = rnd;
    qla_step(rnd, vac, p0);
    CHECK((rnd.amplitudes - copy.amplitudes).norm() == 0.0);
  }
  SUBCASE("norm is preserved to 1e-12") {
    auto rnd = random_state(lat, 10);
    const double n0 = norm_squared(rnd);
    qla_step(rnd, profile, params);
    CHECK(std::abs(norm_squared(rnd) - n0) < 1e-12 * n0);
  }
  SUBCASE("equals the dense product of all factor operators") {
    auto dense_of = [&](const std::function<void(FieldState<double>&)>& op) {
      return build_dense_operator<double>(lat, op);
    };
    const auto ux = dense_of([&](auto& s) { apply_ux(s, params); });
    const auto uy = dense_of([&](auto& s) { apply_uy(s, params); });
    const auto vc = dense_of(
        [&](auto& s) { apply_cyclotron(s, params.theta_ci, params.theta_ce); });
    const auto vpi = dense_of([&](auto& s) {
      apply_plasma_potential(s, Species::Ion, profile, params.dt);
    });
    const auto vpe = dense_of([&](auto& s) {
      apply_plasma_potential(s, Species::Electron, profile, params.dt);
    });
    const DenseMatrix<double> expected = vpe * vpi * vc * uy * ux;
    const auto actual = build_dense_step(lat, profile, params);
    CHECK(max_abs_diff(actual, expected) < 1e-12);
  }
  SUBCASE("dense step is unitary") {
    const auto u = build_dense_step(lat, profile, params);
    const auto gram = (u.adjoint() * u).eval();
    CHECK(max_abs_diff(gram,
                       DenseMatrix<double>::Identity(u.rows(), u.cols())) <
          1e-12);
  }
}

TEST_CASE("dense step cap is enforced") {
  LatticeSpec<double> lat(4, 4, 0.5);  // 12 * 256 = 3072 at the cap
  auto profile = PlasmaProfile<double>::vacuum(lat);
  auto params = StepParams<double>::defaults(lat.delta, profile, -1.0);
  CHECK_THROWS_AS(build_dense_step(lat, profile, params, 128), NumericError);
}

TEST_CASE("potential factors exactly exponentiate their generators") {
  // For uniform profiles each potential factor is the matrix exponential of
  // -i dt times its term in the Pauli decomposition, restricted to the
  // 12-dimensional space.  The two cyclotron terms commute, so their product
  // is a single exponential as well.
  LatticeSpec<double> lat(1, 1, 0.6);
  const double dt = lat.delta * lat.delta;
  const double wpi = 0.83, wpe = 1.41, wci = 0.37, wce = -1.2;
  auto profile = PlasmaProfile<double>::uniform_medium(lat, wpi, wpe, wci, wce);

  using M12 = Eigen::Matrix<Complex<double>, 12, 12>;
  const Complex<double> i_(0, 1);
  M12 d_pi = M12::Zero(), d_pe = M12::Zero(), d_c = M12::Zero();
  for (int k = 0; k < 3; ++k) {
    d_pi(kEx + k, kJix + k) = -i_ * wpi;
    d_pi(kJix + k, kEx + k) = i_ * wpi;
    d_pe(kEx + k, kJex + k) = -i_ * wpe;
    d_pe(kJex + k, kEx + k) = i_ * wpe;
  }
  d_c(kJix, kJiy) = -i_ * wci;
  d_c(kJiy, kJix) = i_ * wci;
  d_c(kJex, kJey) = -i_ * wce;
  d_c(kJey, kJex) = i_ * wce;

  auto dense_of = [&](const std::function<void(FieldState<double>&)>& op) {
    return build_dense_operator<double>(lat, op);
  };
  auto per_site = [&](const M12& block) {
    const Eigen::Index dim = lat.sites() * kComponents;
    DenseMatrix<double> m = DenseMatrix<double>::Zero(dim, dim);
    for (Eigen::Index p = 0; p < lat.sites(); ++p)
      m.block(12 * p, 12 * p, 12, 12) = block;
    return m;
  };
  const M12 exp_pi = ((-i_ * dt) * d_pi).exp();
  const M12 exp_pe = ((-i_ * dt) * d_pe).exp();
  const M12 exp_c = ((-i_ * dt) * d_c).exp();

  const auto vpi = dense_of(
      [&](auto& s) { apply_plasma_potential(s, Species::Ion, profile, dt); });
  const auto vpe = dense_of([&](auto& s) {
    apply_plasma_potential(s, Species::Electron, profile, dt);
  });
  const auto vc = dense_of(
      [&](auto& s) { apply_cyclotron(s, wci * dt, wce * dt); });

  CHECK(max_abs_diff(vpi, per_site(exp_pi)) < 1e-12);
  CHECK(max_abs_diff(vpe, per_site(exp_pe)) < 1e-12);
  CHECK(max_abs_diff(vc, per_site(exp_c)) < 1e-12);
}
