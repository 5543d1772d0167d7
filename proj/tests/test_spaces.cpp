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

#include "bjorth/space.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace {

using namespace bjorth;

const double kH = std::sqrt(3.0) / 2.0;

std::vector<Space> sample_spaces() {
  return {Space::lp(2, 1.0), Space::lp(2, 1.5), Space::lp(2, 2.0), Space::lp(2, 3.0),
          Space::lp(2, std::numeric_limits<double>::infinity()), Space::lp(3, 2.0), Space::lp(3, 3.0),
          Space::lp(4, 1.0), Space::hexagon()};
}

Vec random_vec(std::mt19937_64& gen, Eigen::Index n) {
  std::normal_distribution<double> nd;
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = nd(gen);
  return v;
}

TEST(Norm, HexagonVertexHasUnitNorm) { EXPECT_NEAR(norm(Space::hexagon(), Vec2(1.0, 0.0)), 1.0, 1e-15); }

TEST(Norm, ZeroVector) { EXPECT_EQ(norm(Space::lp(2, 3.0), Vec2(0.0, 0.0)), 0.0); }

TEST(Norm, HexagonEdgeMidpoint) {
  const Vec v = Vec2(0.75, std::sqrt(3.0) / 4.0);
  EXPECT_NEAR(norm(Space::hexagon(), v), 1.0, 1e-14);
  EXPECT_NEAR(oracle::norm(Space::hexagon(), v), 1.0, 1e-14);
}

TEST(Norm, StandardValues) {
  EXPECT_NEAR(norm(Space::lp(2, 2.0), Vec2(3.0, 4.0)), 5.0, 1e-14);
  EXPECT_NEAR(norm(Space::lp(2, 1.0), Vec2(3.0, -4.0)), 7.0, 1e-14);
  EXPECT_NEAR(norm(Space::lp(2, std::numeric_limits<double>::infinity()), Vec2(3.0, -4.0)), 4.0, 1e-14);
}

TEST(Norm, MatchesOracleOnRandomVectors) {
  std::mt19937_64 gen(1);
  for (const auto& s : sample_spaces()) {
    for (int i = 0; i < 500; ++i) {
      const Vec v = random_vec(gen, s.dim());
      EXPECT_NEAR(norm(s, v), oracle::norm(s, v), 1e-12 * (1.0 + v.norm())) << s.describe();
    }
  }
}

TEST(Norm, HomogeneousAndSubadditive) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> ud(-100.0, 100.0);
  for (const auto& s : sample_spaces()) {
    for (int i = 0; i < 500; ++i) {
      const Vec a = random_vec(gen, s.dim());
      const Vec b = random_vec(gen, s.dim());
      const double c = ud(gen);
      EXPECT_NEAR(norm(s, c * a), std::abs(c) * norm(s, a), 1e-10 * std::abs(c) * norm(s, a));
      EXPECT_LE(norm(s, a + b), norm(s, a) + norm(s, b) + 1e-10);
    }
  }
}

TEST(Norm, LargeExponentDoesNotOverflow) {
  const Space s = Space::lp(2, 400.0);
  const double v = norm(s, Vec2(1e200, 1e200));
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v / 1e200, std::pow(2.0, 1.0 / 400.0), 1e-12);
}

TEST(Norm, DimensionMismatchThrows) {
  EXPECT_THROW(norm(Space::lp(3, 2.0), Vec2(1.0, 0.0)), DimensionError);
  EXPECT_THROW(norm(Space::hexagon(), Vec3(1.0, 0.0, 0.0)), DimensionError);
}

TEST(SpaceDescriptor, RejectsInvalidInput) {
  EXPECT_THROW(Space::lp(0, 2.0), PreconditionError);
  EXPECT_THROW(Space::lp(2, 0.5), PreconditionError);
  // not centrally symmetric
  EXPECT_THROW(Space::polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -2}}), PreconditionError);
  // clockwise
  EXPECT_THROW(Space::polygon({{1, 0}, {0, -1}, {-1, 0}, {0, 1}}), PreconditionError);
  // too few vertices
  EXPECT_THROW(Space::polygon({{1, 0}, {-1, 0}}), PreconditionError);
  // not convex
  EXPECT_THROW(Space::polygon({{1, 0}, {0.1, 0.1}, {0, 1}, {-1, 0}, {-0.1, -0.1}, {0, -1}}), PreconditionError);
}

TEST(SpaceDescriptor, Flags) {
  EXPECT_TRUE(Space::lp(2, 3.0).smooth());
  EXPECT_TRUE(Space::lp(2, 3.0).strictly_convex());
  EXPECT_FALSE(Space::lp(2, 1.0).smooth());
  EXPECT_FALSE(Space::lp(2, std::numeric_limits<double>::infinity()).strictly_convex());
  EXPECT_FALSE(Space::hexagon().smooth());
  EXPECT_FALSE(Space::hexagon().strictly_convex());
}

TEST(DerivativeInterval, EuclideanOrthogonalDirection) {
  const auto d = derivative_interval(Space::lp(2, 2.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0));
  EXPECT_NEAR(d.lo, 0.0, 1e-15);
  EXPECT_NEAR(d.hi, 0.0, 1e-15);
}

TEST(DerivativeInterval, L1Kink) {
  const Space s = Space::lp(2, 1.0);
  const Vec x = Vec2(1.0, 0.0);
  const Vec y = Vec2(0.0, 1.0);
  const auto d = derivative_interval(s, x, y);
  EXPECT_DOUBLE_EQ(d.lo, -1.0);
  EXPECT_DOUBLE_EQ(d.hi, 1.0);
  // phi is flat at its minimum and grows with slope 1 on both sides
  const auto m = oracle::dense_min([&](double t) { return oracle::norm(s, x + t * y); }, -2.0, 2.0);
  EXPECT_NEAR(m.value, 1.0, 1e-12);
  EXPECT_NEAR(oracle::quotient(s, x, y, 1e-6), 1.0, 1e-9);
  EXPECT_NEAR(-oracle::quotient(s, x, -y, 1e-6), -1.0, 1e-9);
}

TEST(DerivativeInterval, EuclideanDiagonal) {
  const Space s = Space::lp(2, 2.0);
  const auto d = derivative_interval(s, Vec2(1.0, 0.0), Vec2(1.0, 1.0));
  EXPECT_NEAR(d.lo, 1.0, 1e-15);
  EXPECT_NEAR(d.hi, 1.0, 1e-15);
  EXPECT_NEAR(oracle::quotient(s, Vec2(1.0, 0.0), Vec2(1.0, 1.0), 1e-7), 1.0, 1e-6);
}

TEST(DerivativeInterval, ZeroBaseRejected) {
  EXPECT_THROW(derivative_interval(Space::lp(2, 2.0), Vec2(0.0, 0.0), Vec2(1.0, 0.0)), PreconditionError);
}

// hi is the limit of the nonincreasing difference quotient as h decreases to 0
TEST(DerivativeInterval, AgreesWithDifferenceQuotients) {
  std::mt19937_64 gen(3);
  for (const auto& s : sample_spaces()) {
    for (int i = 0; i < 400; ++i) {
      Vec x = random_vec(gen, s.dim());
      const Vec y = random_vec(gen, s.dim());
      if (i % 4 == 0 && s.is_lp()) x(0) = 0.0;                          // l_1 kinks
      if (i % 4 == 1 && s.is_lp()) x(1) = std::abs(x(0));               // l_inf ties
      if (i % 4 == 2 && s.is_polygon()) x = Vec2(0.5, kH) * 1.7;        // vertex
      const auto d = derivative_interval(s, x, y);
      EXPECT_LE(d.lo, d.hi + 1e-15);
      EXPECT_LE(std::abs(d.hi), norm(s, y) + 1e-12);
      EXPECT_LE(std::abs(d.lo), norm(s, y) + 1e-12);
      const double q3 = oracle::quotient(s, x, y, 1e-3);
      const double q5 = oracle::quotient(s, x, y, 1e-5);
      const double q7 = oracle::quotient(s, x, y, 1e-7);
      EXPECT_GE(q3, q5 - 1e-8);
      EXPECT_GE(q5, q7 - 1e-7);
      // for p < 2 the second derivative is unbounded near zero coordinates,
      // where the quotient converges like h^(p-1)
      double curvature = 1e-7;
      if (s.smooth()) curvature = s.p() < 2.0 ? 1e-2 : 1e-5 * (1.0 + y.squaredNorm() / x.norm());
      EXPECT_GE(q7 - d.hi, -1e-6) << s.describe();
      EXPECT_LE(q7 - d.hi, curvature + 1e-6) << s.describe();
      const double l7 = -oracle::quotient(s, x, Vec(-y), 1e-7);
      EXPECT_LE(l7 - d.lo, 1e-6) << s.describe();
      EXPECT_GE(l7 - d.lo, -curvature - 1e-6) << s.describe();
    }
  }
}

TEST(DerivativeInterval, ScalesWithDirection) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> ud(0.01, 10.0);
  for (const auto& s : sample_spaces()) {
    for (int i = 0; i < 200; ++i) {
      Vec x = random_vec(gen, s.dim());
      if (i % 2 == 0 && s.is_lp()) x(0) = 0.0;
      const Vec y = random_vec(gen, s.dim());
      const double c = ud(gen);
      const auto d = derivative_interval(s, x, y);
      const auto dp = derivative_interval(s, x, Vec(c * y));
      const auto dn = derivative_interval(s, x, Vec(-c * y));
      EXPECT_NEAR(dp.lo, c * d.lo, 1e-12 * c);
      EXPECT_NEAR(dp.hi, c * d.hi, 1e-12 * c);
      EXPECT_NEAR(dn.lo, -c * d.hi, 1e-12 * c);
      EXPECT_NEAR(dn.hi, -c * d.lo, 1e-12 * c);
    }
  }
}

TEST(SupportFace, EuclideanAxis) {
  const auto f = support_face(Space::lp(3, 2.0), Vec3(1.0, 0.0, 0.0));
  ASSERT_TRUE(f.unique());
  EXPECT_NEAR((f.functionals[0] - Vec3(1.0, 0.0, 0.0)).norm(), 0.0, 1e-15);
}

TEST(SupportFace, L1AxisHasTwoVertices) {
  const auto f = support_face(Space::lp(2, 1.0), Vec2(1.0, 0.0));
  ASSERT_EQ(f.functionals.size(), 2u);
  auto has = [&](const Vec2& g) {
    return std::any_of(f.functionals.begin(), f.functionals.end(), [&](const Vec& h) { return (h - g).norm() < 1e-15; });
  };
  EXPECT_TRUE(has({1.0, 1.0}));
  EXPECT_TRUE(has({1.0, -1.0}));
}

TEST(SupportFace, HexagonEdgeFacet) {
  const auto f = support_face(Space::hexagon(), Vec2(0.75, std::sqrt(3.0) / 4.0));
  ASSERT_TRUE(f.unique());
  // the supporting line of the edge through (1,0) and (1/2, sqrt3/2)
  EXPECT_NEAR(f.functionals[0].dot(Vec2(1.0, 0.0)), 1.0, 1e-14);
  EXPECT_NEAR(f.functionals[0].dot(Vec2(0.5, kH)), 1.0, 1e-14);
}

TEST(SupportFace, FunctionalsNormX) {
  std::mt19937_64 gen(5);
  for (const auto& s : sample_spaces()) {
    for (int i = 0; i < 300; ++i) {
      Vec x = random_vec(gen, s.dim());
      if (i % 3 == 0 && s.is_lp()) x(0) = 0.0;
      if (i % 3 == 1 && s.is_lp()) x(1) = -x(0);
      if (i % 3 == 1 && s.is_polygon()) x = Vec2(-0.5, kH);
      for (const auto& f : support_face(s, x).functionals) {
        EXPECT_NEAR(f.dot(x), norm(s, x), 1e-9 * (1.0 + norm(s, x)));
        EXPECT_LE(dual_norm(s, f), 1.0 + 1e-9);
        // sup of f over the unit ball checked by sampling the sphere directly
        for (int k = 0; k < 50; ++k) {
          const Vec u = random_vec(gen, s.dim());
          EXPECT_LE(f.dot(u) / oracle::norm(s, u), 1.0 + 1e-9);
        }
      }
    }
  }
}

TEST(SphereMesh, EuclideanAxes) {
  const auto m = sphere_mesh(Space::lp(2, 2.0), 4);
  ASSERT_EQ(m.size(), 4u);
  const Vec2 expected[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR((m[k] - expected[k]).norm(), 0.0, 1e-15);
}

TEST(SphereMesh, HexagonVertices) {
  const auto m = sphere_mesh(Space::hexagon(), 6);
  const Space hex = Space::hexagon();
  const auto& v = hex.polygon_data().vertices;
  ASSERT_EQ(m.size(), 6u);
  for (int k = 0; k < 6; ++k) EXPECT_NEAR((m[k] - v[k]).norm(), 0.0, 1e-14);
}

TEST(SphereMesh, PointsAreUnit) {
  for (const auto& s : sample_spaces()) {
    for (const auto& v : sphere_mesh(s, 8)) EXPECT_NEAR(norm(s, v), 1.0, 1e-12);
    for (const auto& v : sphere_mesh(s, 1000)) EXPECT_NEAR(norm(s, v), 1.0, 1e-12);
  }
  EXPECT_EQ(sphere_mesh(Space::lp(5, 3.0), 100).size(), 100u);
}

}  // namespace
