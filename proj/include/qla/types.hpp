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

#include <Eigen/Core>
#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qla {

inline constexpr int kComponents = 12;
inline constexpr int kCoinDim = 16;
inline constexpr int kCoinQubits = 4;

// Lattice units throughout: c = eps0 = mu0 = 1.
inline constexpr double kLightSpeed = 1.0;

template <typename Scalar> using Complex = std::complex<Scalar>;

// Field amplitudes, sites x 12.  Column j holds component j over all sites,
// so per-component streaming shifts touch contiguous memory.
template <typename Scalar>
using AmpMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, kComponents>;

template <typename Scalar>
using DenseMatrix =
    Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Complex<Scalar>, 3, 1>;

// Error taxonomy mirrors the CLI exit codes: config 2, numeric 3, verify 4.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct VerifyError : std::runtime_error {
  explicit VerifyError(const std::string& what) : std::runtime_error(what) {}
};

enum class Axis { X, Y };

enum class Species { Ion, Electron };

}  // namespace qla
