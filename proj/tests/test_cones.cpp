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

#include "bjorth/catalog.hpp"
#include "bjorth/cones.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace {

using namespace bjorth;

const double kInf = std::numeric_limits<double>::infinity();

Space l(int n, double p) { return Space::lp(n, p); }

TEST(Classify, Thresholds) {
  const Tolerance tol;
  EXPECT_TRUE(classify(0.0, tol).holds());
  EXPECT_TRUE(classify(-1e-9, tol).holds());
  EXPECT_TRUE(classify(-2e-9, tol).indeterminate());
  EXPECT_TRUE(classify(-9.9e-7, tol).indeterminate());
  EXPECT_TRUE(classify(-1e-6, tol).fails());
  EXPECT_TRUE(classify(1.0, tol).holds());
}

TEST(InPlus, Examples) {
  EXPECT_TRUE(in_plus(l(2, 2), Vec2(1, 0), Vec2(1, 0)).holds());
  EXPECT_TRUE(in_plus(l(2, 2), Vec2(1, 0), Vec2(-1, 0)).fails());
  EXPECT_TRUE(in_plus(l(2, 1), Vec2(1, 0), Vec2(0, 1)).holds());
  EXPECT_DOUBLE_EQ(in_plus(l(2, 1), Vec2(1, 0), Vec2(0, 1)).margin, 1.0);
}

TEST(InMinus, Examples) {
  EXPECT_TRUE(in_minus(l(2, 2), Vec2(1, 0), Vec2(1, 0)).fails());
  EXPECT_TRUE(in_minus(l(2, 2), Vec2(1, 0), Vec2(0, 1)).holds());
  EXPECT_TRUE(in_minus(l(2, 1), Vec2(1, 0), Vec2(0, 1)).holds());
  EXPECT_DOUBLE_EQ(in_minus(l(2, 1), Vec2(1, 0), Vec2(0, 1)).margin, 1.0);
}

TEST(VectorOrthogonality, Examples) {
  EXPECT_TRUE(bj_orthogonal_vectors(l(2, 2), Vec2(1, 0), Vec2(0, 1)).holds());
  for (double p : {2.0, 3.0, 4.0}) {
    const double c = std::pow(2.0, -1.0 / p);
    EXPECT_TRUE(bj_orthogonal_vectors(l(2, p), Vec2(c, c), Vec2(c, -c)).holds()) << p;
    EXPECT_TRUE(bj_orthogonal_vectors(l(2, p), Vec2(c, -c), Vec2(c, c)).holds()) << p;
  }
  const auto f = bj_orthogonal_vectors(l(2, 3), Vec2(1, 0), Vec2(1, 1));
  EXPECT_TRUE(f.fails());
  EXPECT_NEAR(f.margin, -1.0, 1e-15);
}

TEST(VectorOrthogonality, ZeroBaseHolds) {
  const auto t = bj_orthogonal_vectors(l(2, 3), Vec2(0, 0), Vec2(1, 2));
  EXPECT_TRUE(t.holds());
  EXPECT_EQ(t.margin, kInf);
}

TEST(LineMinOracle, Examples) {
  auto r = line_min_oracle(l(2, 2), Vec2(1, 0), Vec2(0, 1));
  EXPECT_NEAR(r.lambda_star, 0.0, 1e-9);
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  r = line_min_oracle(l(2, 2), Vec2(1, 1), Vec2(0, 1));
  EXPECT_NEAR(r.lambda_star, -1.0, 1e-8);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_LE(std::abs(r.lambda_star), r.bracket.second);
  // l_1: |1 + 2t| + |t| bottoms out at t = -1/2 with value 1/2
  r = line_min_oracle(l(2, 1), Vec2(1, 0), Vec2(2, 1));
  EXPECT_NEAR(r.value, 0.5, 1e-9);
  EXPECT_NEAR(r.lambda_star, -0.5, 1e-6);
  const auto dense =
      oracle::dense_min([](double t) { return oracle::lp_norm(Vec2(1.0 + 2.0 * t, t), 1.0); }, -2.0, 2.0);
  EXPECT_NEAR(r.value, dense.value, 1e-9);
  EXPECT_THROW(line_min_oracle(l(2, 2), Vec2(1, 0), Vec2(0, 0)), PreconditionError);
}

TEST(OrthogonalDirections, Euclidean) {
  const auto d = orthogonal_directions_2d(l(2, 2), Vec2(1, 0), 4096);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_LT(line_angle(d[0], Vec2(0, 1)), 1e-10);
}

TEST(OrthogonalDirections, L1AxisCone) {
  const Space s = l(2, 1);
  const auto cones = orthogonal_cones_2d(s, Vec2(1, 0), 4096);
  ASSERT_EQ(cones.size(), 1u);
  const auto reps = orthogonal_directions_2d(s, Vec2(1, 0), 4096);
  ASSERT_EQ(reps.size(), 3u);
  // edges (1,1) and (-1,1), middle (0,1)
  EXPECT_LT(line_angle(reps[0], Vec2(1, 1)), 1e-10);
  EXPECT_LT(line_angle(reps[1], Vec2(0, 1)), 1e-10);
  EXPECT_LT(line_angle(reps[2], Vec2(-1, 1)), 1e-10);
  for (const auto& y : reps) {
    const auto m = oracle::dense_min([&](double t) { return oracle::lp_norm(Vec2(1.0 + t * y(0), t * y(1)), 1.0); }, -3, 3);
    EXPECT_GE(m.value, 1.0 - 1e-12);
  }
  // just outside the cone orthogonality fails
  const Vec outside = direction(kPi / 4 - 1e-3);
  EXPECT_TRUE(bj_orthogonal_vectors(s, Vec2(1, 0), outside).fails());
}

TEST(OrthogonalDirections, L3Diagonal) {
  const double c = std::pow(2.0, -1.0 / 3.0);
  const auto d = orthogonal_directions_2d(l(2, 3), Vec2(c, c), 4096);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_LT(line_angle(d[0], Vec2(c, -c)), 1e-10);
}

TEST(OrthogonalDirections, RequiresPlane) {
  EXPECT_THROW(orthogonal_directions_2d(l(3, 2), Vec3(1, 0, 0), 64), DimensionError);
}

TEST(OrthogonalDirections, AlwaysNonEmptyAndOrthogonal) {
  const std::vector<Space> spaces{l(2, 1), l(2, 1.5), l(2, 3), l(2, kInf), Space::hexagon()};
  for (const auto& s : spaces) {
    for (int k = 0; k < 64; ++k) {
      const Vec x = direction(0.1 + kTwoPi * k / 64);
      const auto reps = orthogonal_directions_2d(s, x, 512);
      ASSERT_FALSE(reps.empty());
      for (const auto& y : reps) {
        const auto m = oracle::dense_min([&](double t) { return oracle::norm(s, Vec(x + t * y)); }, -4, 4, 4001);
        EXPECT_GE(m.value, oracle::norm(s, x) - 1e-9) << s.describe() << " k=" << k;
      }
    }
  }
}

TEST(MakeOrthogonal, ProducesOrthogonalVector) {
  Rng rng(9);
  const std::vector<Space> spaces{l(2, 1), l(3, 1.5), l(3, 3), l(4, kInf), Space::hexagon()};
  for (const auto& s : spaces) {
    for (int i = 0; i < 100; ++i) {
      const Vec z = rng.normal_vec(s.dim());
      const Vec w = rng.normal_vec(s.dim());
      const Vec v = make_orthogonal_to(s, z, w);
      EXPECT_FALSE(bj_orthogonal_vectors(s, v, w).fails()) << s.describe();
    }
  }
}

TEST(OrthogonalSample, IsOrthogonal) {
  Rng rng(10);
  const std::vector<Space> spaces{l(2, 1), l(3, 1.5), l(3, 3), l(4, kInf), Space::hexagon()};
  for (const auto& s : spaces) {
    for (int i = 0; i < 200; ++i) {
      Vec x = rng.normal_vec(s.dim());
      if (i % 2 && s.is_lp()) x(0) = 0.0;
      const Vec y = orthogonal_sample(s, x, rng);
      EXPECT_TRUE(bj_orthogonal_vectors(s, x, y).holds()) << s.describe();
    }
  }
}

// The derivative route and the direct line search agree on random pairs. A
// fail verdict must come with an actual decrease of phi; a hold verdict
// with none beyond 1e-8.
TEST(VectorOrthogonality, AgreesWithLineSearch) {
  const std::vector<Space> spaces{l(2, 1), l(2, 1.5), l(2, 2), l(2, 3), l(2, 4), l(3, 2), l(3, 3), Space::hexagon()};
  for (const auto& s : spaces) {
    int holds = 0;
    for (int i = 0; i < 10000; ++i) {
      Rng rng = Rng::stream(77, static_cast<std::uint64_t>(i));
      const Vec x = rng.normal_vec(s.dim());
      const Vec y = i % 2 ? orthogonal_sample(s, x, rng) : rng.normal_vec(s.dim());
      const auto v = bj_orthogonal_vectors(s, x, y);
      if (v.indeterminate()) continue;
      const double nx = norm(s, x);
      const auto r = line_min_oracle(s, x, y);
      if (v.holds()) {
        ++holds;
        EXPECT_GE(r.value, nx - 1e-8 * nx) << s.describe() << " i=" << i;
      } else {
        EXPECT_LT(r.value, nx) << s.describe() << " i=" << i << " margin " << v.margin;
      }
    }
    EXPECT_GT(holds, 4000);
  }
}

TEST(ConeProperties, SmallRandomSuite) {
  for (const auto& s : {l(2, 1), l(2, 3), l(3, 2), Space::hexagon()}) {
    const auto r = cone_property_suite(s, 2000, 5);
    EXPECT_TRUE(r.passed()) << r.summary();
  }
}

}  // namespace
