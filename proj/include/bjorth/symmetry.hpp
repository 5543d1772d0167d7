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

/**
 * @file
 *
 * Left and right symmetric points of a space, and falsifiers for left and
 * right symmetry of operators.
 *
 * x is left symmetric when x orthogonal to y always forces y orthogonal to
 * x, and right symmetric when y orthogonal to x forces x orthogonal to y. For
 * operators the same definitions are read with operator orthogonality. A
 * "symmetric" verdict only means no counterexample was found at the given
 * resolution or trial count.
 */

#ifndef BJORTH_SYMMETRY_HPP
#define BJORTH_SYMMETRY_HPP

#include "bjorth/operators.hpp"
#include "bjorth/parallel.hpp"

#include <Eigen/LU>

#include <cstdint>
#include <string>

namespace bjorth {

enum class SymmetryKind { left, right };

inline std::string_view to_string(SymmetryKind k) { return k == SymmetryKind::left ? "left" : "right"; }

struct SymmetryVerdict {
  SymmetryKind kind = SymmetryKind::left;
  bool symmetric = true;
  std::optional<Vec> counterexample_vector;
  std::optional<Mat> counterexample_operator;
  int trials_or_resolution = 0;
  int tested = 0;         // candidates actually checked in the reverse direction
  int indeterminate = 0;  // reverse checks inside the tolerance band
  int rejected = 0;       // sampled operators failing the forward condition
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string method;
};

inline void require_unit(const Space& space, const Vec& x, const char* what) {
  require_dim(space, x, what);
  if (std::abs(norm(space, x) - 1.0) > 1e-6) throw PreconditionError(std::string(what) + ": x must be a unit vector");
}

namespace detail {

inline void record_reverse(SymmetryVerdict& out, const Vec& y, const TriState& r) {
  ++out.tested;
  if (r.indeterminate()) ++out.indeterminate;
  if (r.margin < out.worst_margin) out.worst_margin = r.margin;
  if (r.fails() && (!out.counterexample_vector || r.margin <= out.worst_margin)) {
    out.counterexample_vector = y;
    out.symmetric = false;
  }
}

}  // namespace detail

/// Left symmetry of a unit vector. In the plane every cone of directions
/// orthogonal to x is checked at its edges and middle; in higher dimension
/// `resolution` random directions orthogonal to x are drawn.
inline SymmetryVerdict is_left_symmetric_point(const Space& space, const Vec& x, int resolution,
                                               const Tolerance& tol = {}, std::uint64_t seed = 0) {
  require_unit(space, x, "is_left_symmetric_point");
  SymmetryVerdict out;
  out.kind = SymmetryKind::left;
  out.trials_or_resolution = resolution;
  std::vector<Vec> ys;
  if (space.dim() == 2) {
    out.method = "cone-scan";
    ys = orthogonal_directions_2d(space, x, resolution, tol);
  } else {
    out.method = "sampled";
    Rng rng(seed);
    for (int k = 0; k < resolution; ++k) ys.push_back(normalize(space, orthogonal_sample(space, x, rng, tol)));
  }
  for (const Vec& y : ys) detail::record_reverse(out, y, bj_orthogonal_vectors(space, y, x, tol));
  return out;
}

/// Right symmetry of a unit vector: every y with y orthogonal to x must
/// satisfy x orthogonal to y.
inline SymmetryVerdict is_right_symmetric_point(const Space& space, const Vec& x, int resolution,
                                                const Tolerance& tol = {}, std::uint64_t seed = 0) {
  require_unit(space, x, "is_right_symmetric_point");
  SymmetryVerdict out;
  out.kind = SymmetryKind::right;
  out.trials_or_resolution = resolution;
  std::vector<Vec> ys;
  if (space.dim() == 2) {
    out.method = "cone-scan";
    ys = reverse_orthogonal_directions_2d(space, x, resolution, tol);
  } else {
    out.method = "sampled";
    Rng rng(seed);
    for (int k = 0; k < resolution; ++k) {
      const Vec y = make_orthogonal_to(space, rng.normal_vec(x.size()), x, tol);
      if (norm(space, y) > 1e-9) ys.push_back(normalize(space, y));
    }
  }
  for (const Vec& y : ys) detail::record_reverse(out, y, bj_orthogonal_vectors(space, x, y, tol));
  return out;
}

inline SymmetryVerdict is_symmetric_point(SymmetryKind kind, const Space& space, const Vec& x, int resolution,
                                          const Tolerance& tol = {}, std::uint64_t seed = 0) {
  return kind == SymmetryKind::left ? is_left_symmetric_point(space, x, resolution, tol, seed)
                                    : is_right_symmetric_point(space, x, resolution, tol, seed);
}

/// A group of nearby symmetric points found by a sphere scan; begin/end are
/// angles in [0, 2pi) (end may exceed 2pi when the group wraps around).
struct LocatedPoint {
  double begin = 0.0;
  double end = 0.0;
  Vec point;            // representative unit vector
  double margin = 0.0;  // worst reverse margin at the representative
  bool verified = false;
};

struct SymmetricScan {
  SymmetryKind kind = SymmetryKind::left;
  int resolution = 0;
  int inner_resolution = 0;
  std::vector<LocatedPoint> points;
  int mesh_symmetric = 0;
  int indeterminate = 0;
  bool all_symmetric = false;
};

namespace detail {

// For a smooth plane norm, x has a single orthogonal direction y = J(x)
// rotated by 90 degrees; x is left symmetric iff the derivative of the norm at
// y along x vanishes. The sign is continuous in the angle of x.
inline double left_defect(const Space& space, double theta, const Tolerance& tol) {
  const Vec x = normalize(space, direction(theta));
  const Vec f = support_face(space, x, tol).functionals.front();
  const Vec y = Vec2(-f(1), f(0));
  return derivative_interval(space, y, x, tol).hi;
}

}  // namespace detail

/// Scans `resolution` equally spaced points of the unit circle for left or
/// right symmetric points and groups the hits. For smooth norms, left scans
/// also locate zeros of the symmetry defect between mesh points by bisection.
inline SymmetricScan scan_symmetric_points_2d(const Space& space, SymmetryKind kind, int resolution,
                                              int inner_resolution = 256, const Tolerance& tol = {}) {
  if (space.dim() != 2) throw DimensionError("scan_symmetric_points_2d: plane only");
  if (resolution < 8) throw PreconditionError("scan_symmetric_points_2d: resolution must be >= 8");
  SymmetricScan out;
  out.kind = kind;
  out.resolution = resolution;
  out.inner_resolution = inner_resolution;
  const double h = kTwoPi / resolution;
  const std::size_t r = static_cast<std::size_t>(resolution);

  std::vector<SymmetryVerdict> verdicts(r);
  parallel_for(r, [&](std::size_t k) {
    verdicts[k] = is_symmetric_point(kind, space, normalize(space, direction(h * static_cast<double>(k))),
                                     inner_resolution, tol);
  });
  std::vector<double> hits;
  for (std::size_t k = 0; k < r; ++k) {
    out.indeterminate += verdicts[k].indeterminate;
    if (verdicts[k].symmetric) {
      ++out.mesh_symmetric;
      hits.push_back(h * static_cast<double>(k));
    }
  }
  out.all_symmetric = out.mesh_symmetric == resolution;

  std::vector<double> refined;
  if (kind == SymmetryKind::left && space.smooth() && !out.all_symmetric) {
    std::vector<double> defect(r);
    parallel_for(r, [&](std::size_t k) { defect[k] = detail::left_defect(space, h * static_cast<double>(k), tol); });
    for (std::size_t k = 0; k < r; ++k) {
      const double a = defect[k];
      const double b = defect[(k + 1) % r];
      const double t0 = h * static_cast<double>(k);
      if (a == 0.0) {
        refined.push_back(t0);
      } else if ((a < 0.0) != (b < 0.0) && b != 0.0) {
        const bool neg = a < 0.0;
        const auto br = bisect([&](double t) { return (detail::left_defect(space, t, tol) < 0.0) != neg; }, t0, t0 + h,
                               1e-14);
        refined.push_back(std::fmod(0.5 * (br.first + br.second), kTwoPi));
      }
    }
  }
  if (out.all_symmetric) return out;

  // group candidates lying within two mesh steps of each other, around the circle
  struct Cand {
    double angle;
    bool refined;
  };
  std::vector<Cand> cands;
  for (double t : hits) cands.push_back({t, false});
  for (double t : refined) cands.push_back({t, true});
  if (cands.empty()) return out;
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.angle < b.angle; });
  const double gap = 2.0 * h + 1e-12;
  std::size_t first = 0;
  // start grouping after the largest circular gap so no group straddles the start
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const double prev = i == 0 ? cands.back().angle - kTwoPi : cands[i - 1].angle;
    if (cands[i].angle - prev > gap) {
      first = i;
      break;
    }
  }
  std::vector<std::vector<Cand>> groups;
  for (std::size_t step = 0; step < cands.size(); ++step) {
    const std::size_t i = (first + step) % cands.size();
    Cand c = cands[i];
    if (i < first) c.angle += kTwoPi;
    if (groups.empty() || c.angle - groups.back().back().angle > gap) groups.emplace_back();
    groups.back().push_back(c);
  }
  for (const auto& g : groups) {
    LocatedPoint p;
    p.begin = g.front().angle;
    p.end = g.back().angle;
    const double mid = 0.5 * (p.begin + p.end);
    double rep = g[g.size() / 2].angle;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : g) {
      if (c.refined && std::abs(c.angle - mid) < best) best = std::abs(c.angle - mid), rep = c.angle;
    }
    p.point = normalize(space, direction(rep));
    const auto v = is_symmetric_point(kind, space, p.point, std::max(inner_resolution, 1024), tol);
    p.margin = v.worst_margin;
    p.verified = v.symmetric && v.indeterminate == 0;
    if (p.begin >= kTwoPi) p.begin -= kTwoPi, p.end -= kTwoPi;
    out.points.push_back(std::move(p));
  }
  std::sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) { return a.begin < b.begin; });
  return out;
}

/// H = ker f with f the unique norming functional of x, so x is orthogonal
/// to every vector of H.
struct Hyperplane {
  std::vector<Vec> basis;
  Vec normal_functional;
};

inline Hyperplane norming_hyperplane(const Space& space, const Vec& x, const Tolerance& tol = {}) {
  require_dim(space, x, "norming_hyperplane");
  if (!space.smooth()) throw PreconditionError("norming_hyperplane: space is not smooth");
  Hyperplane h;
  h.normal_functional = support_face(space, x, tol).functionals.front();
  const Vec& f = h.normal_functional;
  Eigen::Index pivot = 0;
  f.cwiseAbs().maxCoeff(&pivot);
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    if (j == pivot) continue;
    Vec b = Vec::Zero(f.size());
    b(j) = 1.0;
    b(pivot) = -f(j) / f(pivot);
    h.basis.push_back(std::move(b));
  }
  return h;
}

/// Rank-one A with A x1 = y1 and A = 0 on H. When x1 is in M_T, Tx1 is
/// orthogonal to y1 but not conversely, and the space is strictly convex,
/// T is orthogonal to A while A is not orthogonal to T.
inline Mat left_witness_from_hyperplane(const Space& space, const Mat& T, const Vec& x1, const Vec& y1,
                                        const Hyperplane& H, const Tolerance& tol = {}) {
  require_operator(space, T, "left_witness_from_hyperplane");
  require_dim(space, x1, "left_witness_from_hyperplane");
  require_dim(space, y1, "left_witness_from_hyperplane");
  if (!space.strictly_convex()) throw PreconditionError("left_witness_from_hyperplane: space is not strictly convex");
  const Vec tx = T * x1;
  if (!bj_orthogonal_vectors(space, tx, y1, tol).holds()) {
    throw HypothesisError("left_witness_from_hyperplane: Tx1 is not orthogonal to y1");
  }
  if (!bj_orthogonal_vectors(space, y1, tx, tol).fails()) {
    throw HypothesisError("left_witness_from_hyperplane: y1 is orthogonal to Tx1");
  }
  const Vec& f = H.normal_functional;
  const double fx = f.dot(x1);
  if (std::abs(fx) <= 1e-9 * f.norm() * x1.norm()) throw HypothesisError("left_witness_from_hyperplane: x1 lies in H");
  return y1 * f.transpose() / fx;
}

/// Rank-one A with A y = Ty and A = 0 on the norming hyperplane of y. For x
/// in M_T and y orthogonal to x (so x lies in that hyperplane) this gives T
/// orthogonal to A and A not orthogonal to T in smooth strictly convex
/// spaces.
inline Mat left_witness_from_image(const Space& space, const Mat& T, const Vec& x, const Vec& y,
                                   const Tolerance& tol = {}) {
  require_operator(space, T, "left_witness_from_image");
  require_dim(space, x, "left_witness_from_image");
  require_dim(space, y, "left_witness_from_image");
  if (!space.smooth() || !space.strictly_convex()) {
    throw PreconditionError("left_witness_from_image: space must be smooth and strictly convex");
  }
  const Vec ty = T * y;
  if (norm(space, ty) <= 1e-12 * norm(space, y) * T.cwiseAbs().maxCoeff()) {
    throw HypothesisError("left_witness_from_image: Ty = 0");
  }
  if (!bj_orthogonal_vectors(space, y, x, tol).holds()) {
    throw HypothesisError("left_witness_from_image: y is not orthogonal to x");
  }
  const Vec g = support_face(space, y, tol).functionals.front();
  return ty * g.transpose() / g.dot(y);
}

namespace detail {

// Kernel basis of T with rank decided on singular values (relative 1e-8).
inline Mat kernel_basis(const Mat& T) {
  const Eigen::Index n = T.cols();
  Eigen::JacobiSVD<Mat> svd(T, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = 1e-8 * (s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  Eigen::FullPivLU<Mat> lu(T);
  lu.setThreshold(1e-8);
  Mat k = lu.kernel();
  if (lu.dimensionOfKernel() != n - rank || (n - rank > 0 && (T * k).norm() > 1e-7 * std::max(1.0, s(0)) * k.norm())) {
    k = svd.matrixV().rightCols(n - rank);
  }
  if (n - rank == 0) return Mat(n, 0);
  return k;
}

// 1/2 I + 1/2 u g^T / g(u): fixes u and halves the norming hyperplane of u.
inline Mat half_plus_projection(const Space& space, const Vec& u, const Tolerance& tol) {
  const Eigen::Index n = u.size();
  const Vec g = support_face(space, u, tol).functionals.front();
  return 0.5 * Mat::Identity(n, n) + 0.5 * u * g.transpose() / g.dot(u);
}

inline Vec single_attainment_point(const OperatorNormSolver& solver, const Mat& T, const char* what) {
  const auto att = solver.attainment(T);
  if (att.value == 0.0 || att.witnesses.size() != 1 || att.subspace ||
      (att.arcs_2d && !att.arcs_2d->front().is_point())) {
    throw HypothesisError(std::string(what) + ": M_T is not a single antipodal pair");
  }
  return att.witnesses.front();
}

inline void require_known_left_symmetric(const Space& space, bool assumed, const char* what) {
  if (!space.is_euclidean() && !assumed) {
    throw HypothesisError(std::string(what) + ": no left symmetric point is known for this space");
  }
}

}  // namespace detail

/// Right-symmetry witness for T whose norm is attained only at an eigenvector
/// x0 and whose rank is below n - 1: A fixes a unit u0 in ker T orthogonal to
/// x0 and halves its norming hyperplane. Then A is orthogonal to T but T is
/// not orthogonal to A. x0 must be left symmetric; that is automatic in
/// Euclidean spaces and must otherwise be asserted by the caller.
inline Mat right_witness_from_eigenvector(const OperatorNormSolver& solver, const Mat& T,
                                          bool x0_left_symmetric = false, const Tolerance& tol = {}) {
  const Space& space = solver.space();
  const char* what = "right_witness_from_eigenvector";
  require_operator(space, T, what);
  const Eigen::Index n = T.cols();
  if (n <= 2) throw HypothesisError("right_witness_from_eigenvector: needs dimension > 2");
  if (!space.smooth() || !space.strictly_convex()) throw PreconditionError("right_witness_from_eigenvector: space must be smooth and strictly convex");
  detail::require_known_left_symmetric(space, x0_left_symmetric, what);
  const Vec x0 = detail::single_attainment_point(solver, T, what);
  const Vec f0 = support_face(space, x0, tol).functionals.front();
  const Vec tx = T * x0;
  const double lambda = f0.dot(tx);
  const double scale = T.norm();
  if (std::abs(lambda) <= 1e-8 * scale || (tx - lambda * x0).norm() > 1e-8 * scale) {
    throw HypothesisError("right_witness_from_eigenvector: x0 is not an eigenvector with nonzero eigenvalue");
  }
  const Mat K = detail::kernel_basis(T);
  if (K.cols() < 2) throw HypothesisError("right_witness_from_eigenvector: rank of T must be below n - 1");
  // u0 = K c with f0(K c) = 0
  const Vec r = (f0.transpose() * K).transpose();
  Vec c = Vec::Zero(K.cols());
  Eigen::Index pivot = 0;
  if (r.cwiseAbs().maxCoeff(&pivot) <= 1e-12 * f0.norm()) {
    c(0) = 1.0;
  } else {
    const Eigen::Index j = pivot == 0 ? 1 : 0;
    c(j) = 1.0;
    c(pivot) = -r(j) / r(pivot);
  }
  const Vec u0 = normalize(space, K * c);
  if (!bj_orthogonal_vectors(space, u0, x0, tol).holds()) {
    throw HypothesisError("right_witness_from_eigenvector: u0 is not orthogonal to x0");
  }
  return detail::half_plus_projection(space, u0, tol);
}

/// Outcome of the right-symmetry dichotomy for T with M_T = {+-x0} and a left
/// symmetric unit u0 in ker T: either I and T are mutually orthogonal, or
/// the returned witness A satisfies A orthogonal to T and T not orthogonal
/// to A.
struct RightDichotomy {
  TriState identity_orth_t;
  TriState t_orth_identity;
  bool mutual = false;  // first alternative
  std::optional<Mat> witness;
  TriState witness_orth_t;
  TriState t_orth_witness;
};

inline RightDichotomy right_dichotomy(const OperatorNormSolver& solver, const Mat& T, const Vec& u0,
                                      bool u0_left_symmetric = false, const Tolerance& tol = {}) {
  const Space& space = solver.space();
  const char* what = "right_dichotomy";
  require_operator(space, T, what);
  require_unit(space, u0, what);
  if (!space.smooth() || !space.strictly_convex()) throw PreconditionError("right_dichotomy: space must be smooth and strictly convex");
  detail::require_known_left_symmetric(space, u0_left_symmetric, what);
  if (norm(space, T * u0) > 1e-8 * T.norm()) throw HypothesisError("right_dichotomy: u0 is not in ker T");
  detail::single_attainment_point(solver, T, what);
  const Eigen::Index n = T.cols();
  const Mat I = Mat::Identity(n, n);
  RightDichotomy out;
  out.identity_orth_t = bj_orthogonal_operators(solver, I, T, tol).verdict;
  out.t_orth_identity = bj_orthogonal_operators(solver, T, I, tol).verdict;
  out.mutual = out.identity_orth_t.holds() && out.t_orth_identity.holds();
  if (!out.mutual) {
    const Mat A = detail::half_plus_projection(space, u0, tol);
    out.witness_orth_t = bj_orthogonal_operators(solver, A, T, tol).verdict;
    out.t_orth_witness = bj_orthogonal_operators(solver, T, A, tol).verdict;
    out.witness = A;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operator symmetry falsifiers

/// A random A with T orthogonal to A by construction: for a point x of M_T,
/// Ax is a multiple of a direction orthogonal to Tx; A is Gaussian elsewhere.
inline Mat sample_left_partner(const Space& space, const Mat& T, const NormAttainment& att, Rng& rng,
                               const Tolerance& tol = {}) {
  const Eigen::Index n = T.cols();
  const Vec& x = att.support[rng.below(att.support.size())];
  const Vec v = orthogonal_sample(space, T * x, rng, tol);
  const double c = rng.normal();
  const Mat G = rng.normal_mat(n) / std::sqrt(static_cast<double>(n));
  const Vec xt = x / x.squaredNorm();
  return G + (c * v / v.norm() - G * x) * xt.transpose();
}

/// A random A with A orthogonal to T: A u = z with z orthogonal to Tu, and u
/// norming for A. The rank-one part z g^T (g a norming functional of u) has
/// norm one at u. In Euclidean spaces a block from u-perp into z-perp of
/// norm below one is added; elsewhere half of the draws add a small Gaussian
/// part vanishing at u, which may lift the norm off u (callers re-check).
inline Mat sample_right_partner(const Space& space, const Mat& T, Rng& rng, const Tolerance& tol = {}) {
  const Eigen::Index n = T.cols();
  Vec u = rng.normal_vec(n);
  u = normalize(space, u);
  const auto face = support_face(space, u, tol);
  Vec g = Vec::Zero(n);
  double total = 0.0;
  for (const auto& f : face.functionals) {
    const double w = face.unique() ? 1.0 : rng.uniform();
    g += w * f;
    total += w;
  }
  g /= total;
  const Vec tu = T * u;
  Vec z = rng.normal_vec(n);
  if (norm(space, tu) > 0.0) z = make_orthogonal_to(space, z, tu, tol);
  if (norm(space, z) == 0.0) z = rng.normal_vec(n);
  z = normalize(space, z);
  const Mat I = Mat::Identity(n, n);
  Mat G = rng.normal_mat(n);
  if (space.is_euclidean()) {
    Mat B = (I - z * z.transpose()) * G * (I - u * u.transpose());
    const double sb = Eigen::JacobiSVD<Mat>(B).singularValues()(0);
    if (sb > 0.0) B *= rng.uniform(0.0, 1.0) / sb;
    return z * u.transpose() + B;
  }
  G /= G.norm();
  const double eta = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, 0.5);
  return z * g.transpose() + eta * G * (I - u * g.transpose());
}

namespace detail {

struct TrialOutcome {
  bool accepted = false;
  TriState reverse;
  Mat A;
};

template <class Trial>
void run_trials(SymmetryVerdict& out, int trials, Trial&& trial) {
  constexpr int kChunk = 32;
  for (int start = 0; start < trials && out.symmetric; start += kChunk) {
    const int count = std::min(kChunk, trials - start);
    std::vector<TrialOutcome> results(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count),
                 [&](std::size_t i) { results[i] = trial(static_cast<std::uint64_t>(start) + i); });
    for (auto& r : results) {
      if (!r.accepted) {
        ++out.rejected;
        continue;
      }
      ++out.tested;
      if (r.reverse.indeterminate()) ++out.indeterminate;
      out.worst_margin = std::min(out.worst_margin, r.reverse.margin);
      if (r.reverse.fails() && out.symmetric) {
        out.symmetric = false;
        out.counterexample_operator = std::move(r.A);
      }
    }
  }
}

}  // namespace detail

/// Searches for A with T orthogonal to A but A not orthogonal to T. In smooth
/// strictly convex spaces the rank-one witness built from a point of M_T is
/// tried first; otherwise (or if it does not verify) conditioned random
/// operators are drawn, each trial with its own stream derived from `seed`.
inline SymmetryVerdict falsify_left_symmetry(const OperatorNormSolver& solver, const Mat& T, int trials,
                                             std::uint64_t seed, const Tolerance& tol = {}) {
  const Space& space = solver.space();
  require_operator(space, T, "falsify_left_symmetry");
  SymmetryVerdict out;
  out.kind = SymmetryKind::left;
  out.trials_or_resolution = trials;
  if (T.isZero(0.0)) {
    out.method = "zero-operator";
    return out;
  }
  const auto att = solver.attainment(T);
  const Eigen::Index n = T.cols();

  if (space.smooth() && space.strictly_convex()) {
    const Vec x = att.witnesses.front();
    std::vector<Vec> ys;
    if (n == 2) {
      ys = reverse_orthogonal_directions_2d(space, x, 256, tol);
    } else {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trials) + 1);
      for (int k = 0; k < 8; ++k) {
        const Vec y = make_orthogonal_to(space, rng.normal_vec(n), x, tol);
        if (norm(space, y) > 1e-9) ys.push_back(normalize(space, y));
      }
    }
    for (const Vec& y : ys) {
      Mat A;
      try {
        A = left_witness_from_image(space, T, x, y, tol);
      } catch (const HypothesisError&) {
        continue;
      }
      const auto forward = bj_orthogonal_operators(solver, T, A, tol);
      const auto reverse = bj_orthogonal_operators(solver, A, T, tol);
      if (forward.verdict.holds() && reverse.verdict.fails()) {
        out.symmetric = false;
        out.counterexample_operator = A;
        out.tested = 1;
        out.worst_margin = reverse.verdict.margin;
        out.method = "rank-one-witness";
        return out;
      }
    }
  }

  out.method = "conditioned-sampling";
  detail::run_trials(out, trials, [&](std::uint64_t t) {
    Rng rng = Rng::stream(seed, t);
    detail::TrialOutcome r;
    r.A = sample_left_partner(space, T, att, rng, tol);
    if (!bj_orthogonal_operators(solver, T, r.A, tol).verdict.holds()) return r;
    r.accepted = true;
    r.reverse = bj_orthogonal_operators(solver, r.A, T, tol).verdict;
    return r;
  });
  return out;
}

/// Searches for A with A orthogonal to T but T not orthogonal to A. In
/// Euclidean spaces of dimension > 2 the eigenvector witness and the
/// dichotomy witness are tried first; then random operators are drawn and
/// kept only when A orthogonal to T holds.
inline SymmetryVerdict falsify_right_symmetry(const OperatorNormSolver& solver, const Mat& T, int trials,
                                              std::uint64_t seed, const Tolerance& tol = {}) {
  const Space& space = solver.space();
  require_operator(space, T, "falsify_right_symmetry");
  SymmetryVerdict out;
  out.kind = SymmetryKind::right;
  out.trials_or_resolution = trials;
  if (T.isZero(0.0)) {
    out.method = "zero-operator";
    return out;
  }
  auto accept = [&](const Mat& A, const char* method) {
    const auto forward = bj_orthogonal_operators(solver, A, T, tol);
    const auto reverse = bj_orthogonal_operators(solver, T, A, tol);
    if (forward.verdict.holds() && reverse.verdict.fails()) {
      out.symmetric = false;
      out.counterexample_operator = A;
      out.tested = 1;
      out.worst_margin = reverse.verdict.margin;
      out.method = method;
      return true;
    }
    return false;
  };
  if (space.is_euclidean() && T.cols() > 2) {
    try {
      if (accept(right_witness_from_eigenvector(solver, T, false, tol), "eigenvector-witness")) return out;
    } catch (const HypothesisError&) {
    }
    const Mat K = detail::kernel_basis(T);
    if (K.cols() > 0) {
      try {
        const auto d = right_dichotomy(solver, T, normalize(space, K.col(0)), false, tol);
        if (d.witness && accept(*d.witness, "kernel-witness")) return out;
      } catch (const HypothesisError&) {
      }
    }
  }
  out.method = "conditioned-sampling";
  detail::run_trials(out, trials, [&](std::uint64_t t) {
    Rng rng = Rng::stream(seed, t);
    detail::TrialOutcome r;
    r.A = sample_right_partner(space, T, rng, tol);
    if (!bj_orthogonal_operators(solver, r.A, T, tol).verdict.holds()) return r;
    r.accepted = true;
    r.reverse = bj_orthogonal_operators(solver, T, r.A, tol).verdict;
    return r;
  });
  return out;
}

inline SymmetryVerdict falsify_symmetry(SymmetryKind kind, const OperatorNormSolver& solver, const Mat& T, int trials,
                                        std::uint64_t seed, const Tolerance& tol = {}) {
  return kind == SymmetryKind::left ? falsify_left_symmetry(solver, T, trials, seed, tol)
                                    : falsify_right_symmetry(solver, T, trials, seed, tol);
}

}  // namespace bjorth

#endif  // BJORTH_SYMMETRY_HPP
