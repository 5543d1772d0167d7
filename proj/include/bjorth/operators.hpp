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
 * Operator norms, norm-attainment sets and operator orthogonality.
 *
 * Operators are square matrices acting on coordinate vectors of a Space.
 * M_T (the unit vectors where ||Tx|| = ||T||) is computed exactly for
 * polyhedral and Euclidean norms and approximated by a refined mesh search
 * for the other l_p norms.
 */

#ifndef BJORTH_OPERATORS_HPP
#define BJORTH_OPERATORS_HPP

#include "bjorth/cones.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <numeric>
#include <optional>
#include <vector>

namespace bjorth {

inline void require_operator(const Space& space, const Mat& T, const char* what) {
  if (T.rows() != space.dim() || T.cols() != space.dim()) {
    throw DimensionError(std::string(what) + ": operator is " + std::to_string(T.rows()) + "x" +
                         std::to_string(T.cols()) + " in a space of dimension " + std::to_string(space.dim()));
  }
  if (!T.allFinite()) throw PreconditionError(std::string(what) + ": operator has non-finite entries");
}

inline Vec apply(const Mat& T, const Vec& v) {
  if (T.cols() != v.size()) throw DimensionError("apply: operator and vector dimensions differ");
  return T * v;
}

struct NormOptions {
  int resolution = 4096;     // plane mesh, directions over a half circle
  int resolution_nd = 20000;  // mesh size in dimension >= 3
  double rel_tol = 1e-7;     // relative value tolerance defining M_T
  int cluster_steps = 10;    // cluster radius in mesh steps
  int multistart = 16;       // refined mesh candidates
};

struct NormAttainment {
  double value = 0.0;
  std::vector<Vec> witnesses;  // one unit vector per antipodal cluster of M_T
  bool exact = false;
  std::optional<std::vector<AngularInterval>> arcs_2d;  // clusters as angle intervals mod pi
  bool connected = false;       // the clusters form a single arc (plane only)
  std::vector<Vec> support;     // every sampled point of M_T (up to sign) used for decisions
  std::optional<Mat> subspace;  // Euclidean case: orthonormal basis of a multi-dimensional M_T
};

/// Computes ||T|| and M_T for a fixed space; the sphere mesh is built once
/// and reused across operators.
class OperatorNormSolver {
 public:
  explicit OperatorNormSolver(Space space, NormOptions options = {})
      : space_(std::move(space)), options_(options) {
    if (options_.resolution < 8) throw PreconditionError("operator norm: resolution must be >= 8");
    const int n = space_.dim();
    if (!polyhedral_cycle_2d(space_).empty()) {
      method_ = Method::polyhedral_2d;
      cycle_ = polyhedral_cycle_2d(space_);
    } else if (space_.is_euclidean()) {
      method_ = Method::euclidean;
    } else if (space_.p() == 1.0) {
      method_ = Method::l1;
    } else if (std::isinf(space_.p())) {
      if (n > 20) throw PreconditionError("operator norm: l_inf operator norm limited to dimension <= 20");
      method_ = Method::linf;
    } else if (n == 1) {
      method_ = Method::l1;
    } else if (n == 2) {
      method_ = Method::mesh_2d;
      const int r = options_.resolution;
      angles_.resize(static_cast<std::size_t>(r));
      mesh_.reserve(static_cast<std::size_t>(r));
      for (int k = 0; k < r; ++k) {
        angles_[static_cast<std::size_t>(k)] = kPi * k / r;
        mesh_.push_back(normalize(space_, direction(angles_[static_cast<std::size_t>(k)])));
      }
    } else {
      method_ = Method::mesh_nd;
      for (const Vec& v : sphere_mesh(space_, options_.resolution_nd)) mesh_.push_back(v / v.norm());
      const double area = 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
      spacing_nd_ = std::pow(area / options_.resolution_nd, 1.0 / (n - 1));
    }
  }

  const Space& space() const { return space_; }
  const NormOptions& options() const { return options_; }
  bool exact() const { return method_ != Method::mesh_2d && method_ != Method::mesh_nd; }

  /// ||T|| only (no clustering).
  double value(const Mat& T) const {
    require_operator(space_, T, "operator_norm");
    switch (method_) {
      case Method::polyhedral_2d: {
        double best = 0.0;
        for (const auto& v : cycle_) best = std::max(best, norm(space_, T * Vec(v)));
        return best;
      }
      case Method::euclidean:
        return T.size() == 0 ? 0.0 : Eigen::JacobiSVD<Mat>(T).singularValues()(0);
      case Method::l1:
        return T.cwiseAbs().colwise().sum().maxCoeff();
      case Method::linf:
        return linf_scan(T).first;
      case Method::mesh_2d: {
        const auto values = mesh_values_2d(T);
        return refine_peaks_2d(T, values).first;
      }
      case Method::mesh_nd:
        return attainment(T).value;
    }
    return 0.0;
  }

  NormAttainment attainment(const Mat& T) const {
    require_operator(space_, T, "operator_norm");
    NormAttainment out;
    out.exact = exact();
    if (T.isZero(0.0)) {
      if (space_.dim() == 2) out.arcs_2d.emplace();
      return out;
    }
    switch (method_) {
      case Method::polyhedral_2d:
        polyhedral_attainment(T, out);
        break;
      case Method::euclidean:
        euclidean_attainment(T, out);
        break;
      case Method::l1:
        l1_attainment(T, out);
        break;
      case Method::linf:
        linf_attainment(T, out);
        break;
      case Method::mesh_2d:
        mesh_2d_attainment(T, out);
        break;
      case Method::mesh_nd:
        mesh_nd_attainment(T, out);
        break;
    }
    if (out.arcs_2d) out.connected = out.arcs_2d->size() == 1;
    return out;
  }

 private:
  enum class Method { polyhedral_2d, euclidean, l1, linf, mesh_2d, mesh_nd };

  static constexpr double kExactTol = 1e-10;

  double ratio(const Mat& T, const Vec& z) const { return norm(space_, T * z) / norm(space_, z); }

  // -- polyhedral plane: vertices of the unit ball, edges by midpoint test --

  void polyhedral_attainment(const Mat& T, NormAttainment& out) const {
    const std::size_t n = cycle_.size();
    std::vector<double> vals(n);
    for (std::size_t k = 0; k < n; ++k) vals[k] = norm(space_, T * Vec(cycle_[k]));
    out.value = *std::max_element(vals.begin(), vals.end());
    const double floor = out.value * (1.0 - kExactTol);
    std::vector<bool> hit(n), edge(n);
    for (std::size_t k = 0; k < n; ++k) hit[k] = vals[k] >= floor;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (k + 1) % n;
      edge[k] = hit[k] && hit[j] && norm(space_, T * Vec(0.5 * (cycle_[k] + cycle_[j]))) >= floor;
    }
    out.arcs_2d.emplace();
    if (std::all_of(edge.begin(), edge.end(), [](bool e) { return e; })) {
      out.arcs_2d->push_back({0.0, kPi});
      out.witnesses.push_back(Vec(cycle_[0]));
      for (std::size_t k = 0; k < n / 2; ++k) out.support.push_back(Vec(cycle_[k]));
      return;
    }
    // runs of attaining vertices joined by attaining edges; each run has an
    // antipodal twin starting n/2 positions later
    for (std::size_t k = 0; k < n; ++k) {
      if (!hit[k] || edge[(k + n - 1) % n]) continue;
      const std::size_t twin = (k + n / 2) % n;
      if (twin < k) continue;
      std::size_t j = k;
      double begin = angle_of(Vec(cycle_[k]));
      double end = begin;
      out.witnesses.push_back(Vec(cycle_[k]));
      out.support.push_back(Vec(cycle_[k]));
      while (edge[j]) {
        const std::size_t next = (j + 1) % n;
        end += angle_between(Vec(cycle_[j]), Vec(cycle_[next]));
        out.support.push_back(Vec(cycle_[next]));
        j = next;
      }
      if (begin >= kPi) begin -= kPi, end -= kPi;
      out.arcs_2d->push_back({begin, end});
    }
    sort_arcs(out);
  }

  // -- Euclidean: singular value decomposition --

  void euclidean_attainment(const Mat& T, NormAttainment& out) const {
    Eigen::JacobiSVD<Mat> svd(T, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    out.value = s(0);
    Eigen::Index k = 1;
    while (k < s.size() && s(k) >= s(0) * (1.0 - options_.rel_tol)) ++k;
    const Mat V = svd.matrixV().leftCols(k);
    out.witnesses.push_back(canonical_sign(V.col(0)));
    for (Eigen::Index i = 0; i < k; ++i) out.support.push_back(canonical_sign(V.col(i)));
    if (k > 1) out.subspace = V;
    if (space_.dim() == 2) {
      out.arcs_2d.emplace();
      if (k == 2) {
        out.arcs_2d->push_back({0.0, kPi});
      } else {
        const double a = std::fmod(angle_of(out.witnesses[0]), kPi);
        out.arcs_2d->push_back({a, a});
      }
    }
  }

  // -- l_1: extreme points are the signed basis vectors --

  void l1_attainment(const Mat& T, NormAttainment& out) const {
    const Vec cols = T.cwiseAbs().colwise().sum().transpose();
    out.value = cols.maxCoeff();
    for (Eigen::Index j = 0; j < cols.size(); ++j) {
      if (cols(j) >= out.value * (1.0 - kExactTol)) {
        Vec e = Vec::Zero(cols.size());
        e(j) = 1.0;
        out.witnesses.push_back(e);
        out.support.push_back(e);
      }
    }
  }

  // -- l_inf: extreme points are the sign vectors --

  std::pair<double, std::vector<Vec>> linf_scan(const Mat& T, bool collect = false) const {
    const Eigen::Index n = T.cols();
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    std::vector<double> vals(count);
    double best = 0.0;
    Vec s(n);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      s(0) = 1.0;
      for (Eigen::Index i = 1; i < n; ++i) s(i) = (mask >> (i - 1)) & 1U ? -1.0 : 1.0;
      vals[mask] = (T * s).cwiseAbs().maxCoeff();
      best = std::max(best, vals[mask]);
    }
    std::vector<Vec> hits;
    if (collect) {
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        if (vals[mask] < best * (1.0 - kExactTol)) continue;
        s(0) = 1.0;
        for (Eigen::Index i = 1; i < n; ++i) s(i) = (mask >> (i - 1)) & 1U ? -1.0 : 1.0;
        hits.push_back(s);
      }
    }
    return {best, hits};
  }

  void linf_attainment(const Mat& T, NormAttainment& out) const {
    auto [value, hits] = linf_scan(T, true);
    out.value = value;
    out.witnesses = hits;
    out.support = std::move(hits);
  }

  // -- smooth l_p in the plane: mesh over a half circle, refined peaks --

  std::vector<double> mesh_values_2d(const Mat& T) const {
    const LpNorm& lp = space_.lp_data();
    const double a = T(0, 0), b = T(0, 1), c = T(1, 0), d = T(1, 1);
    std::vector<double> vals(mesh_.size());
    for (std::size_t k = 0; k < mesh_.size(); ++k) {
      const Vec& u = mesh_[k];
      const double w[2] = {a * u(0) + b * u(1), c * u(0) + d * u(1)};
      vals[k] = detail::lp_norm(lp, w, 2);
    }
    return vals;
  }

  double ratio_at(const Mat& T, double theta) const {
    const Vec d = direction(theta);
    return norm(space_, T * d) / norm(space_, d);
  }

  // sign of the derivative of theta -> ||T d(theta)|| / ||d(theta)||
  double slope_at(const Mat& T, double theta) const {
    const Vec d = direction(theta);
    const Vec dd = direction(theta + 0.5 * kPi);
    const Vec td = T * d;
    const double ntd = norm(space_, td);
    if (ntd == 0.0) return 0.0;
    const double num = derivative_interval(space_, td, T * dd).hi;
    return norm(space_, d) * num - ntd * derivative_interval(space_, d, dd).hi;
  }

  // Refined local maxima of the mesh values: (angle, value) pairs, best first.
  std::vector<std::pair<double, double>> peaks_2d(const Mat& T, const std::vector<double>& vals) const {
    const int r = static_cast<int>(vals.size());
    const double h = kPi / r;
    double top = 0.0;
    double max_step = 0.0;
    for (int k = 0; k < r; ++k) {
      top = std::max(top, vals[static_cast<std::size_t>(k)]);
      max_step = std::max(max_step, std::abs(vals[static_cast<std::size_t>(k)] - vals[static_cast<std::size_t>((k + 1) % r)]));
    }
    std::vector<int> cand;
    for (int k = 0; k < r; ++k) {
      const double v = vals[static_cast<std::size_t>(k)];
      if (v >= vals[static_cast<std::size_t>((k + r - 1) % r)] && v >= vals[static_cast<std::size_t>((k + 1) % r)] &&
          v >= top - 4.0 * max_step) {
        cand.push_back(k);
      }
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [&](int i, int j) { return vals[static_cast<std::size_t>(i)] > vals[static_cast<std::size_t>(j)]; });
    if (cand.size() > static_cast<std::size_t>(options_.multistart)) cand.resize(static_cast<std::size_t>(options_.multistart));

    std::vector<std::pair<double, double>> out;
    for (int k : cand) {
      const double t0 = angles_[static_cast<std::size_t>(k)];
      double best_t = t0;
      double best_v = vals[static_cast<std::size_t>(k)];
      const double lo = t0 - h;
      const double hi = t0 + h;
      double t;
      if (slope_at(T, lo) >= 0.0 && slope_at(T, hi) <= 0.0) {
        const auto br = bisect([&](double s) { return slope_at(T, s) < 0.0; }, lo, hi, 1e-15);
        t = 0.5 * (br.first + br.second);
      } else {
        t = golden_section_minimize([&](double s) { return -ratio_at(T, s); }, lo, hi, 1e-12).x;
      }
      const double v = ratio_at(T, t);
      if (v > best_v) best_v = v, best_t = t;
      out.emplace_back(best_t, best_v);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
    return out;
  }

  std::pair<double, std::vector<std::pair<double, double>>> refine_peaks_2d(const Mat& T,
                                                                            const std::vector<double>& vals) const {
    auto peaks = peaks_2d(T, vals);
    double value = *std::max_element(vals.begin(), vals.end());
    if (!peaks.empty()) value = std::max(value, peaks.front().second);
    return {value, std::move(peaks)};
  }

  void mesh_2d_attainment(const Mat& T, NormAttainment& out) const {
    const auto vals = mesh_values_2d(T);
    auto [value, peaks] = refine_peaks_2d(T, vals);
    out.value = value;
    out.arcs_2d.emplace();
    const int r = static_cast<int>(vals.size());
    const double h = kPi / r;
    const double radius = options_.cluster_steps * h;
    const double floor = value * (1.0 - options_.rel_tol);
    std::vector<bool> hit(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) hit[static_cast<std::size_t>(k)] = vals[static_cast<std::size_t>(k)] >= floor;

    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
      out.arcs_2d->push_back({0.0, kPi});
      out.witnesses.push_back(mesh_[0]);
      out.support = mesh_;
      return;
    }
    // flat runs longer than the cluster radius are arcs of M_T
    for (int k = 0; k < r; ++k) {
      if (!hit[static_cast<std::size_t>(k)] || hit[static_cast<std::size_t>((k + r - 1) % r)]) continue;
      int len = 0;
      while (hit[static_cast<std::size_t>((k + len) % r)]) ++len;
      if (len <= options_.cluster_steps) continue;
      double begin = k * h;
      double end = (k + len - 1) * h;
      if (begin >= kPi) begin -= kPi, end -= kPi;
      out.arcs_2d->push_back({begin, end});
      const int mid = (k + len / 2) % r;
      // indices past r wrap to the antipode; the sign is irrelevant for M_T
      out.witnesses.push_back(mesh_[static_cast<std::size_t>(mid)]);
      for (int i = 0; i < len; ++i) out.support.push_back(mesh_[static_cast<std::size_t>((k + i) % r)]);
    }
    for (const auto& [t, v] : peaks) {
      if (v < floor) continue;
      bool near = false;
      for (const auto& a : *out.arcs_2d) {
        const double lo = a.begin - radius;
        const double hi = a.end + radius;
        for (double s : {t - kPi, t, t + kPi}) near = near || (s >= lo && s <= hi);
      }
      if (near) continue;
      double a = std::fmod(t, kPi);
      if (a < 0.0) a += kPi;
      out.arcs_2d->push_back({a, a});
      const Vec w = normalize(space_, direction(a));
      out.witnesses.push_back(w);
      out.support.push_back(w);
    }
    sort_arcs(out);
  }

  // -- smooth l_p in dimension >= 3: mesh plus coordinate ascent --

  Vec ascend(const Mat& T, Vec z) const {
    const Eigen::Index n = z.size();
    z.normalize();
    double best = ratio(T, z);
    double step = 0.5 * spacing_nd_;
    for (int sweep = 0; sweep < 400 && step > 1e-11; ++sweep) {
      bool moved = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        Vec t = -z(i) * z;
        t(i) += 1.0;
        const double tn = t.norm();
        if (tn < 1e-8) continue;
        t /= tn;
        for (double s : {step, -step}) {
          const Vec c = std::cos(s) * z + std::sin(s) * t;
          const double v = ratio(T, c);
          if (v > best) {
            best = v;
            z = c / c.norm();
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    return z;
  }

  void mesh_nd_attainment(const Mat& T, NormAttainment& out) const {
    const std::size_t m = mesh_.size();
    std::vector<double> vals(m);
    for (std::size_t k = 0; k < m; ++k) vals[k] = ratio(T, mesh_[k]);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return vals[i] > vals[j]; });
    const double radius = options_.cluster_steps * spacing_nd_;

    std::vector<Vec> starts;
    for (std::size_t k : order) {
      if (starts.size() >= static_cast<std::size_t>(options_.multistart)) break;
      bool near = false;
      for (const auto& s : starts) near = near || line_angle(s, mesh_[k]) < radius;
      if (!near) starts.push_back(mesh_[k]);
    }
    std::vector<std::pair<Vec, double>> refined;
    double value = vals[order.front()];
    for (const auto& s : starts) {
      Vec z = ascend(T, s);
      const double v = ratio(T, z);
      value = std::max(value, v);
      refined.emplace_back(std::move(z), v);
    }
    std::stable_sort(refined.begin(), refined.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    out.value = value;
    const double floor = value * (1.0 - options_.rel_tol);
    auto add = [&](const Vec& z) {
      for (const auto& w : out.witnesses) {
        if (line_angle(w, z) < radius) return;
      }
      const Vec w = canonical_sign(normalize(space_, z));
      out.witnesses.push_back(w);
      out.support.push_back(w);
    };
    for (const auto& [z, v] : refined) {
      if (v >= floor) add(z);
    }
    for (std::size_t k : order) {
      if (vals[k] < floor) break;
      add(mesh_[k]);
    }
  }

  static Vec canonical_sign(Vec v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    return v;
  }

  static void sort_arcs(NormAttainment& out) {
    std::vector<std::size_t> idx(out.arcs_2d->size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (idx.size() != out.witnesses.size()) return;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return (*out.arcs_2d)[a].begin < (*out.arcs_2d)[b].begin; });
    std::vector<AngularInterval> arcs;
    std::vector<Vec> wit;
    for (std::size_t i : idx) {
      arcs.push_back((*out.arcs_2d)[i]);
      wit.push_back(out.witnesses[i]);
    }
    *out.arcs_2d = std::move(arcs);
    out.witnesses = std::move(wit);
  }

  Space space_;
  NormOptions options_;
  Method method_ = Method::euclidean;
  std::vector<Vec2> cycle_;
  std::vector<Vec> mesh_;
  std::vector<double> angles_;
  double spacing_nd_ = 0.0;
};

inline NormAttainment operator_norm(const Space& space, const Mat& T, const NormOptions& options = {}) {
  return OperatorNormSolver(space, options).attainment(T);
}

/// Result of the witness route for T orthogonal to A: some w in M_T with
/// Aw in (Tw)+ and some (possibly different) w' in M_T with Aw' in (Tw')-.
struct OrthDecision {
  TriState verdict;
  std::optional<Vec> witness_plus;
  std::optional<Vec> witness_minus;
  double margin_plus = 0.0;   // max over M_T of the right derivative
  double margin_minus = 0.0;  // max over M_T of minus the left derivative
  NormAttainment attainment;
};

inline OrthDecision bj_orthogonal_operators(const OperatorNormSolver& solver, const Mat& T, const Mat& A,
                                            const Tolerance& tol = {}) {
  const Space& space = solver.space();
  require_operator(space, T, "bj_orthogonal_operators");
  require_operator(space, A, "bj_orthogonal_operators");
  OrthDecision out;
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (T.isZero(0.0)) {
    out.verdict = {Verdict::holds, inf};
    out.margin_plus = out.margin_minus = inf;
    return out;
  }
  out.attainment = solver.attainment(T);
  std::vector<Vec> candidates = out.attainment.support;
  if (out.attainment.subspace) {
    // M_T is the unit sphere of span(V); for the Euclidean norm the right
    // derivative at w = Vc is c^T S c with S the symmetric part below, so the
    // extreme eigenvectors of S are the best witnesses.
    const Mat& V = *out.attainment.subspace;
    const Mat M = V.transpose() * T.transpose() * A * V / out.attainment.value;
    const Mat S = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> eig(S);
    const Eigen::Index k = S.rows();
    candidates.push_back(V * eig.eigenvectors().col(0));
    candidates.push_back(V * eig.eigenvectors().col(k - 1));
  }
  out.margin_plus = -inf;
  out.margin_minus = -inf;
  Vec best_plus;
  Vec best_minus;
  for (const Vec& w : candidates) {
    const Vec tw = T * w;
    if (norm(space, tw) == 0.0) continue;
    const auto d = derivative_interval(space, tw, A * w, tol);
    if (d.hi > out.margin_plus) out.margin_plus = d.hi, best_plus = w;
    if (-d.lo > out.margin_minus) out.margin_minus = -d.lo, best_minus = w;
  }
  out.verdict = classify(std::min(out.margin_plus, out.margin_minus), tol);
  if (classify(out.margin_plus, tol).holds()) out.witness_plus = best_plus;
  if (classify(out.margin_minus, tol).holds()) out.witness_minus = best_minus;
  return out;
}

inline OrthDecision bj_orthogonal_operators(const Space& space, const Mat& T, const Mat& A, const Tolerance& tol = {},
                                            const NormOptions& options = {}) {
  return bj_orthogonal_operators(OperatorNormSolver(space, options), T, A, tol);
}

/// Thresholds on the relative drop (||T|| - min psi) / ||T|| used by the
/// line-search oracle.
struct OracleTolerance {
  double holds = 1e-12;
  double fails = 1e-8;
};

struct OperatorLineSearch {
  TriState verdict;  // margin = minus the relative drop
  double lambda_star = 0.0;
  double min_value = 0.0;
  double norm_T = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
};

/// Direct check of ||T|| <= ||T + t A|| for all t: grid plus golden-section
/// search of the convex psi(t) = ||T + t A|| over |t| <= 2||T||/||A||.
inline OperatorLineSearch bj_orthogonal_operators_oracle(const OperatorNormSolver& solver, const Mat& T, const Mat& A,
                                                         const OracleTolerance& tol = {}) {
  require_operator(solver.space(), T, "bj_orthogonal_operators_oracle");
  require_operator(solver.space(), A, "bj_orthogonal_operators_oracle");
  OperatorLineSearch out;
  out.norm_T = solver.value(T);
  out.min_value = out.norm_T;
  const double na = solver.value(A);
  if (out.norm_T == 0.0 || na == 0.0) {
    out.verdict = {Verdict::holds, 0.0};
    return out;
  }
  const double reach = 2.0 * out.norm_T / na;
  out.bracket = {-reach, reach};
  auto psi = [&](double t) { return solver.value(T + t * A); };
  constexpr int kGrid = 64;
  int best = kGrid / 2;
  double best_value = out.norm_T;
  for (int j = 0; j <= kGrid; ++j) {
    if (j == kGrid / 2) continue;
    const double v = psi(-reach + 2.0 * reach * j / kGrid);
    if (v < best_value) best_value = v, best = j;
  }
  const double lo = -reach + 2.0 * reach * std::max(best - 1, 0) / kGrid;
  const double hi = -reach + 2.0 * reach * std::min(best + 1, kGrid) / kGrid;
  const auto gs = golden_section_minimize(psi, lo, hi, 1e-10);
  out.lambda_star = best == kGrid / 2 ? 0.0 : -reach + 2.0 * reach * best / kGrid;
  out.min_value = best_value;
  if (gs.value < out.min_value) out.min_value = gs.value, out.lambda_star = gs.x;
  const double drop = (out.norm_T - out.min_value) / out.norm_T;
  if (drop <= tol.holds) {
    out.verdict = {Verdict::holds, -drop};
  } else if (drop >= tol.fails) {
    out.verdict = {Verdict::fails, -drop};
  } else {
    out.verdict = {Verdict::indeterminate, -drop};
  }
  return out;
}

inline OperatorLineSearch bj_orthogonal_operators_oracle(const Space& space, const Mat& T, const Mat& A,
                                                         const OracleTolerance& tol = {},
                                                         const NormOptions& options = {}) {
  return bj_orthogonal_operators_oracle(OperatorNormSolver(space, options), T, A, tol);
}

/// A point x of a connected arc D of M_T (with M_T = D u -D) such that
/// Tx is orthogonal to Ax, found by bisection between the plus and minus
/// witnesses. Plane only.
///
/// Throws PreconditionError when T is not orthogonal to A or M_T is not a
/// single arc; returns nullopt when the search fails.
inline std::optional<Vec> orthogonal_point_on_arc(const OperatorNormSolver& solver, const Mat& T, const Mat& A,
                                                  const Tolerance& tol = {}) {
  const Space& space = solver.space();
  if (space.dim() != 2) throw PreconditionError("orthogonal_point_on_arc: plane only");
  const auto dec = bj_orthogonal_operators(solver, T, A, tol);
  if (!dec.verdict.holds()) throw PreconditionError("orthogonal_point_on_arc: T is not orthogonal to A");
  if (T.isZero(0.0)) return Vec(normalize(space, direction(0.0)));
  const auto& att = dec.attainment;
  if (!att.arcs_2d || !att.connected) throw PreconditionError("orthogonal_point_on_arc: M_T is not a single arc");
  const AngularInterval arc = att.arcs_2d->front();
  const bool full = arc.end - arc.begin >= kPi - 1e-12;

  // place a witness angle inside the arc, modulo pi
  auto angle_in_arc = [&](const Vec& w) {
    double a = angle_of(w);
    for (double s : {a - 2 * kPi, a - kPi, a, a + kPi, a + 2 * kPi}) {
      if (s >= arc.begin - 1e-9 && s <= arc.end + 1e-9) return std::clamp(s, arc.begin, arc.end);
    }
    return full ? std::fmod(a, kPi) : arc.begin;
  };
  auto point = [&](double t) { return Vec(normalize(space, direction(t))); };
  auto state = [&](double t) {
    const Vec x = point(t);
    return detail::interval_state(derivative_interval(space, T * x, A * x, tol));
  };
  const double tp = angle_in_arc(*dec.witness_plus);
  const double tm = angle_in_arc(*dec.witness_minus);
  auto accept = [&](double t) -> std::optional<Vec> {
    const Vec x = point(t);
    if (bj_orthogonal_vectors(space, T * x, A * x, tol).holds()) return x;
    return std::nullopt;
  };
  if (auto x = accept(tp)) return x;
  if (auto x = accept(tm)) return x;
  // state is +1 or 0 at tp (right derivative >= 0) and -1 or 0 at tm
  const auto br = bisect([&](double t) { return (state(t) >= 0) == (tp > tm); }, std::min(tp, tm), std::max(tp, tm),
                         1e-14);
  for (double t : {br.first, br.second, 0.5 * (br.first + br.second)}) {
    if (auto x = accept(t)) return x;
  }
  return std::nullopt;
}

}  // namespace bjorth

#endif  // BJORTH_OPERATORS_HPP
