// Copyright 2026 The bjorth Authors
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

#ifndef BJORTH_TYPES_HPP
#define BJORTH_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bjorth {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree with each other or with the space.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (zero vector, bad p, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A witness construction was asked to run on a configuration where its
/// hypotheses do not hold (or cannot be verified numerically).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Absolute tolerance `eps` and the indeterminate band `band`.
///
/// A signed margin m is read as: m >= -eps holds, m <= -band fails, anything
/// in between is indeterminate. The same `eps` is used (relative to the norm
/// of the point) when deciding which pieces of a non-smooth norm are active.
struct Tolerance {
  double eps = 1e-9;
  double band = 1e-6;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Unit Euclidean vector at angle theta. Quarter turns (as computed in
/// double, e.g. mesh angles 2pi*k/n) map to exact axis vectors, since
/// cos(pi/2) ~ 6e-17 is far from harmless under |t|^(p-1) with p < 2.
inline Vec2 direction(double theta) {
  const double q = std::round(theta / (0.5 * std::numbers::pi));
  if (theta == q * (0.5 * std::numbers::pi) && std::abs(q) < 1e6) {
    switch (((static_cast<long long>(q) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return {std::cos(theta), std::sin(theta)};
}

/// Angle of a planar vector in [0, 2pi).
inline double angle_of(const Vec& v) {
  double a = std::atan2(v(1), v(0));
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

/// Euclidean angle between two nonzero vectors, in [0, pi].
inline double angle_between(const Vec& a, const Vec& b) {
  // atan2 of (|a^b|, a.b) keeps precision for nearly parallel vectors
  const Vec ua = a / a.norm();
  const Vec ub = b / b.norm();
  const double cross = (ua - ub * ua.dot(ub)).norm();
  return std::atan2(cross, ua.dot(ub));
}

/// Angle between the lines spanned by a and b, in [0, pi/2].
inline double line_angle(const Vec& a, const Vec& b) {
  const double t = angle_between(a, b);
  return std::min(t, kPi - t);
}

inline void require_same_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace bjorth

#endif  // BJORTH_TYPES_HPP
