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
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace {

using namespace bjorth;

Mat diag(std::initializer_list<double> d) {
  Vec v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

// A counterexample operator re-checked from scratch.
void expect_left_counterexample(const Space& s, const Mat& T, const Mat& A) {
  EXPECT_TRUE(bj_orthogonal_operators(s, T, A).verdict.holds());
  EXPECT_TRUE(bj_orthogonal_operators(s, A, T).verdict.fails());
}

void expect_right_counterexample(const Space& s, const Mat& T, const Mat& A) {
  EXPECT_TRUE(bj_orthogonal_operators(s, A, T).verdict.holds());
  EXPECT_TRUE(bj_orthogonal_operators(s, T, A).verdict.fails());
}

TEST(LeftSymmetricPoint, EuclideanPointsAreSymmetric) {
  const Space s = Space::lp(2, 2);
  for (double t : {0.0, 0.3, 1.1, 2.5}) {
    const auto v = is_left_symmetric_point(s, direction(t), 1024);
    EXPECT_TRUE(v.symmetric);
    EXPECT_GT(v.tested, 0);
  }
  const auto v3 = is_left_symmetric_point(Space::lp(3, 2), Vec3(0.6, 0.0, 0.8), 500, {}, 3);
  EXPECT_TRUE(v3.symmetric);
}

TEST(LeftSymmetricPoint, AxisOfL3) { EXPECT_TRUE(is_left_symmetric_point(Space::lp(2, 3), Vec2(1, 0), 4096).symmetric); }

TEST(LeftSymmetricPoint, GenericPointOfL3) {
  const Space s = Space::lp(2, 3);
  const Vec x = normalize(s, Vec2(2, 1));
  const auto v = is_left_symmetric_point(s, x, 4096);
  ASSERT_FALSE(v.symmetric);
  ASSERT_TRUE(v.counterexample_vector);
  const Vec& y = *v.counterexample_vector;
  EXPECT_TRUE(bj_orthogonal_vectors(s, x, y).holds());
  EXPECT_TRUE(bj_orthogonal_vectors(s, y, x).fails());
  // the reverse failure is a real decrease of ||y + t x||
  const auto m = oracle::dense_min([&](double t) { return oracle::lp_norm(Vec(y + t * x), 3.0); }, -3, 3);
  EXPECT_LT(m.value, oracle::lp_norm(y, 3.0) - 1e-6);
}

TEST(LeftSymmetricPoint, RequiresUnitVector) {
  EXPECT_THROW(is_left_symmetric_point(Space::lp(2, 3), Vec2(2, 0), 64), PreconditionError);
}

TEST(RightSymmetricPoint, Examples) {
  EXPECT_TRUE(is_right_symmetric_point(Space::lp(2, 2), direction(0.7), 1024).symmetric);
  EXPECT_TRUE(is_right_symmetric_point(Space::lp(2, 4), Vec2(0, 1), 4096).symmetric);
  const Space s = Space::lp(2, 4);
  const Vec x = normalize(s, Vec2(1, 2));
  const auto v = is_right_symmetric_point(s, x, 4096);
  ASSERT_FALSE(v.symmetric);
  ASSERT_TRUE(v.counterexample_vector);
  EXPECT_TRUE(bj_orthogonal_vectors(s, *v.counterexample_vector, x).holds());
  EXPECT_TRUE(bj_orthogonal_vectors(s, x, *v.counterexample_vector).fails());
}

TEST(SymmetricScan, HilbertPlaneIsAllSymmetric) {
  const auto s = scan_symmetric_points_2d(Space::lp(2, 2), SymmetryKind::left, 256);
  EXPECT_TRUE(s.all_symmetric);
  EXPECT_EQ(s.mesh_symmetric, 256);
}

TEST(SymmetricScan, LpPlaneRightPointsMatchLeftPoints) {
  for (double p : {1.5, 4.0}) {
    const Space sp = Space::lp(2, p);
    const auto s = scan_symmetric_points_2d(sp, SymmetryKind::right, 4096);
    ASSERT_EQ(s.points.size(), 8u) << p;
    const auto listed = lp_plane_symmetric_points(p);
    for (const auto& pt : s.points) {
      EXPECT_TRUE(pt.verified);
      double best = kPi;
      for (const auto& q : listed) best = std::min(best, angle_between(pt.point, q));
      EXPECT_LE(best, kTwoPi / 4096) << p;
    }
  }
}

// The regular hexagon is a Radon curve: orthogonality is symmetric everywhere.
TEST(SymmetricScan, RegularHexagonIsAllSymmetric) {
  for (auto kind : {SymmetryKind::left, SymmetryKind::right}) {
    const auto s = scan_symmetric_points_2d(Space::hexagon(), kind, 2048);
    EXPECT_TRUE(s.all_symmetric);
    EXPECT_EQ(s.indeterminate, 0);
  }
}

TEST(SymmetricScan, PolygonPointsAreVerified) {
  const Space sq = Space::lp(2, 1);
  // (1,0) is orthogonal to (1,1) in l_1 but not conversely
  EXPECT_TRUE(bj_orthogonal_vectors(sq, Vec2(1, 0), Vec2(1, 1)).holds());
  EXPECT_TRUE(bj_orthogonal_vectors(sq, Vec2(1, 1), Vec2(1, 0)).fails());
  for (auto kind : {SymmetryKind::left, SymmetryKind::right}) {
    const auto s = scan_symmetric_points_2d(sq, kind, 2048);
    EXPECT_FALSE(s.all_symmetric);
    for (const auto& pt : s.points) {
      EXPECT_TRUE(pt.verified);
      EXPECT_TRUE(is_symmetric_point(kind, sq, pt.point, 4096).symmetric);
    }
  }
}

TEST(NormingHyperplane, Examples) {
  auto h = norming_hyperplane(Space::lp(3, 2), Vec3(1, 0, 0));
  ASSERT_EQ(h.basis.size(), 2u);
  Mat B(3, 2);
  B << h.basis[0], h.basis[1];
  EXPECT_EQ(Eigen::FullPivLU<Mat>(B).rank(), 2);
  EXPECT_NEAR(B.row(0).norm(), 0.0, 1e-15);

  const double c = std::pow(2.0, -1.0 / 3.0);
  const Space l3 = Space::lp(2, 3);
  h = norming_hyperplane(l3, Vec2(c, c));
  ASSERT_EQ(h.basis.size(), 1u);
  EXPECT_LT(line_angle(h.basis[0], Vec2(1, -1)), 1e-12);
  EXPECT_TRUE(bj_orthogonal_vectors(l3, Vec2(c, c), h.basis[0]).holds());

  h = norming_hyperplane(Space::lp(2, 4), Vec2(1, 0));
  ASSERT_EQ(h.basis.size(), 1u);
  EXPECT_LT(line_angle(h.basis[0], Vec2(0, 1)), 1e-15);

  EXPECT_THROW(norming_hyperplane(Space::lp(2, 1), Vec2(1, 0)), PreconditionError);
}

TEST(LeftWitnessFromHyperplane, RandomPlaneOperators) {
  const Space s = Space::lp(2, 3);
  const OperatorNormSolver solver(s);
  int built = 0;
  for (int i = 0; i < 20; ++i) {
    Rng rng = Rng::stream(21, static_cast<std::uint64_t>(i));
    const Mat T = rng.normal_mat(2);
    const Vec x1 = solver.attainment(T).witnesses.front();
    const Vec tx = T * x1;
    const Vec y1 = orthogonal_directions_2d(s, tx, 1024).front();
    if (!bj_orthogonal_vectors(s, y1, tx).fails()) continue;  // Tx1 happens to be symmetric
    const auto H = norming_hyperplane(s, x1);
    const Mat A = left_witness_from_hyperplane(s, T, x1, y1, H);
    EXPECT_NEAR((A * x1 - y1).norm(), 0.0, 1e-12);
    EXPECT_NEAR((A * H.basis[0]).norm(), 0.0, 1e-12);
    expect_left_counterexample(s, T, A);
    ++built;
  }
  EXPECT_GT(built, 15);
}

TEST(LeftWitnessFromHyperplane, StandardBasisPoint) {
  const Space s = Space::lp(3, 3);
  Mat T = Mat::Zero(3, 3);
  T.col(0) = normalize(s, Vec3(2, 1, 0));
  const Vec e1 = Vec::Unit(3, 0);
  const Vec y1 = Vec3(1, -4, 0);
  ASSERT_TRUE(bj_orthogonal_vectors(s, T * e1, y1).holds());
  ASSERT_TRUE(bj_orthogonal_vectors(s, y1, T * e1).fails());
  const Mat A = left_witness_from_hyperplane(s, T, e1, y1, norming_hyperplane(s, e1));
  EXPECT_NEAR((A - y1 * e1.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  expect_left_counterexample(s, T, A);
}

TEST(LeftWitnessFromHyperplane, Preconditions) {
  const Space hex = Space::hexagon();
  EXPECT_THROW(left_witness_from_hyperplane(hex, Mat::Identity(2, 2), Vec2(1, 0), Vec2(0, 1), Hyperplane{}),
               PreconditionError);
  // Hilbert space: the reverse orthogonality holds, so there is nothing to build
  const Space l2 = Space::lp(3, 2);
  const Vec e1 = Vec::Unit(3, 0);
  EXPECT_THROW(left_witness_from_hyperplane(l2, diag({1, 0.5, 0.25}), e1, Vec::Unit(3, 1), norming_hyperplane(l2, e1)),
               HypothesisError);
}

TEST(LeftWitnessFromImage, DiagonalExample) {
  const Space s = Space::lp(3, 2);
  const Mat T = diag({1, 0.5, 1.0 / 3.0});
  const Mat A = left_witness_from_image(s, T, Vec::Unit(3, 0), Vec::Unit(3, 1));
  EXPECT_NEAR((A - diag({0, 0.5, 0})).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  expect_left_counterexample(s, T, A);
  // <A e2, T e2> = 1/4
  EXPECT_NEAR((A * Vec::Unit(3, 1)).dot(T * Vec::Unit(3, 1)), 0.25, 1e-15);
}

TEST(LeftWitnessFromImage, Preconditions) {
  const Space s = Space::lp(3, 2);
  EXPECT_THROW(left_witness_from_image(s, diag({1, 0, 1.0 / 3.0}), Vec::Unit(3, 0), Vec::Unit(3, 1)), HypothesisError);
  EXPECT_THROW(left_witness_from_image(Space::lp(2, 1), Mat::Identity(2, 2), Vec2(1, 0), Vec2(0, 1)), PreconditionError);
}

TEST(LeftWitnessFromImage, InvertibleOperators) {
  for (double p : {3.0, 4.0}) {
    const auto r = invertible_left_witness_suite(p, 50, 22);
    EXPECT_TRUE(r.passed()) << r.summary();
  }
}

TEST(RightWitnessFromEigenvector, EuclideanExamples) {
  const OperatorNormSolver s3(Space::lp(3, 2));
  const Mat A3 = right_witness_from_eigenvector(s3, diag({1, 0, 0}));
  EXPECT_NEAR((A3 - diag({0.5, 1, 0.5})).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  expect_right_counterexample(s3.space(), diag({1, 0, 0}), A3);
  const OperatorNormSolver s4(Space::lp(4, 2));
  const Mat A4 = right_witness_from_eigenvector(s4, diag({1, 0, 0, 0}));
  EXPECT_NEAR((A4 - diag({0.5, 1, 0.5, 0.5})).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  expect_right_counterexample(s4.space(), diag({1, 0, 0, 0}), A4);
}

TEST(RightWitnessFromEigenvector, Preconditions) {
  EXPECT_THROW(right_witness_from_eigenvector(OperatorNormSolver(Space::lp(2, 2)), diag({1, 0})), HypothesisError);
  // no left symmetric point known for l_3^3 unless the caller asserts one
  EXPECT_THROW(right_witness_from_eigenvector(OperatorNormSolver(Space::lp(3, 3)), diag({1, 0, 0})), HypothesisError);
  // full rank: no kernel to work with
  EXPECT_THROW(right_witness_from_eigenvector(OperatorNormSolver(Space::lp(3, 2)), diag({1, 0.5, 0.5})), HypothesisError);
}

TEST(RightDichotomy, Examples) {
  const OperatorNormSolver s(Space::lp(3, 2));
  const Vec e1 = Vec::Unit(3, 0);
  for (const Mat& T : {diag({0, 1, 0.5}), diag({0, 1, 0})}) {
    const auto d = right_dichotomy(s, T, e1);
    EXPECT_TRUE(d.identity_orth_t.holds());
    EXPECT_FALSE(d.mutual);
    ASSERT_TRUE(d.witness);
    EXPECT_NEAR((*d.witness - diag({1, 0.5, 0.5})).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    expect_right_counterexample(s.space(), T, *d.witness);
  }
  Mat shift = Mat::Zero(3, 3);
  shift(2, 1) = 1.0;
  const auto d = right_dichotomy(s, shift, e1);
  EXPECT_TRUE(d.mutual);
  EXPECT_TRUE(d.identity_orth_t.holds());
  EXPECT_TRUE(d.t_orth_identity.holds());
  EXPECT_FALSE(d.witness);
}

TEST(FalsifyLeft, InvertibleOnL3) {
  const OperatorNormSolver s(Space::lp(2, 3));
  const Mat T = mat2(2, 1, -0.5, 1);
  const auto v = falsify_left_symmetry(s, T, 100, 1);
  ASSERT_FALSE(v.symmetric);
  EXPECT_EQ(v.method, "rank-one-witness");
  ASSERT_TRUE(v.counterexample_operator);
  expect_left_counterexample(s.space(), T, *v.counterexample_operator);
}

TEST(FalsifyLeft, L1OperatorSurvives) {
  const OperatorNormSolver s(Space::lp(2, 1));
  const auto v = falsify_left_symmetry(s, mat2(0.5, 0, 0.5, 0), 300, 2);
  EXPECT_TRUE(v.symmetric);
  EXPECT_EQ(v.tested, 300);
  EXPECT_EQ(v.indeterminate, 0);
}

TEST(FalsifyLeft, HilbertOperatorsAreNotSymmetric) {
  for (int n : {2, 3}) {
    const OperatorNormSolver s(Space::lp(n, 2));
    for (int i = 0; i < 10; ++i) {
      Rng rng = Rng::stream(23, static_cast<std::uint64_t>(i));
      const Mat T = i == 0 ? Mat(diag({1, 0, 0}).topLeftCorner(n, n)) : rng.normal_mat(n);
      const auto v = falsify_left_symmetry(s, T, 200, 3);
      ASSERT_FALSE(v.symmetric) << n << " " << i;
      expect_left_counterexample(s.space(), T, *v.counterexample_operator);
    }
  }
}

TEST(FalsifyLeft, ZeroOperatorIsSymmetric) {
  const auto v = falsify_left_symmetry(OperatorNormSolver(Space::lp(2, 3)), Mat::Zero(2, 2), 10, 0);
  EXPECT_TRUE(v.symmetric);
  EXPECT_EQ(v.method, "zero-operator");
}

TEST(FalsifyRight, Examples) {
  const OperatorNormSolver s3(Space::lp(3, 2));
  const auto a = falsify_right_symmetry(s3, diag({1, 0, 0}), 100, 4);
  ASSERT_FALSE(a.symmetric);
  EXPECT_EQ(a.method, "eigenvector-witness");
  expect_right_counterexample(s3.space(), diag({1, 0, 0}), *a.counterexample_operator);

  const OperatorNormSolver s2(Space::lp(2, 2));
  const auto b = falsify_right_symmetry(s2, Mat::Identity(2, 2), 300, 5);
  EXPECT_TRUE(b.symmetric);
  EXPECT_GT(b.tested, 0);

  const auto c = falsify_right_symmetry(s2, diag({1, 0.5}), 300, 6);
  ASSERT_FALSE(c.symmetric);
  expect_right_counterexample(s2.space(), diag({1, 0.5}), *c.counterexample_operator);
}

// If no counterexample turns up for T in a strictly convex plane, then every
// image of a point of M_T must be a left symmetric point.
TEST(FalsifyLeft, SurvivorsMapNormingPointsToSymmetricPoints) {
  const Space s = Space::lp(2, 3);
  const OperatorNormSolver solver(s);
  const double c = std::pow(2.0, -1.0 / 3.0);
  std::vector<Mat> ops{mat2(1, 0, 0, 0), mat2(c, 0, c, 0), mat2(0, 0, 1, 0), mat2(0.3, 0, 0, 0)};
  for (int i = 0; i < 6; ++i) ops.push_back(Rng::stream(24, static_cast<std::uint64_t>(i)).normal_mat(2));
  for (const auto& T : ops) {
    const auto v = falsify_left_symmetry(solver, T, 1000, 7);
    if (!v.symmetric) {
      expect_left_counterexample(s, T, *v.counterexample_operator);
      continue;
    }
    for (const auto& w : solver.attainment(T).witnesses) {
      EXPECT_TRUE(is_left_symmetric_point(s, normalize(s, T * w), 4096).symmetric);
    }
  }
}

TEST(Falsifiers, Deterministic) {
  const OperatorNormSolver s(Space::hexagon());
  Rng rng(25);
  const Mat T = rng.normal_mat(2);
  for (auto kind : {SymmetryKind::left, SymmetryKind::right}) {
    const auto a = falsify_symmetry(kind, s, T, 200, 8);
    const auto b = falsify_symmetry(kind, s, T, 200, 8);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    if (!a.symmetric && kind == SymmetryKind::left) expect_left_counterexample(s.space(), T, *a.counterexample_operator);
    if (!a.symmetric && kind == SymmetryKind::right) expect_right_counterexample(s.space(), T, *a.counterexample_operator);
  }
}

}  // namespace
