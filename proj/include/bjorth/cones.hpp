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
 * Birkhoff-James orthogonality of vectors and the x+ / x- cones.
 *
 * For a nonzero x, y lies in x+ when ||x + t y|| >= ||x|| for every t >= 0,
 * and in x- when the same holds for every t <= 0. The map
 * t -> ||x + t y|| is convex, so both conditions reduce to the sign of a
 * one-sided derivative at t = 0: y in x+ iff the right derivative is >= 0,
 * y in x- iff the left derivative is <= 0. x is orthogonal to y iff both hold.
 */

#ifndef BJORTH_CONES_HPP
#define BJORTH_CONES_HPP

#include "bjorth/line_search.hpp"
#include "bjorth/random.hpp"
#include "bjorth/space.hpp"

#include <limits>
#include <string_view>
#include <utility>
#include <vector>

namespace bjorth {

enum class Verdict { holds, fails, indeterminate };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

/// A verdict together with the signed scalar that decided it. Positive
/// margins lean towards `holds`.
struct TriState {
  Verdict verdict = Verdict::indeterminate;
  double margin = 0.0;

  bool holds() const { return verdict == Verdict::holds; }
  bool fails() const { return verdict == Verdict::fails; }
  bool indeterminate() const { return verdict == Verdict::indeterminate; }
};

inline TriState classify(double margin, const Tolerance& tol) {
  if (margin >= -tol.eps) return {Verdict::holds, margin};
  if (margin <= -tol.band) return {Verdict::fails, margin};
  return {Verdict::indeterminate, margin};
}

/// y in x+ ; margin is the right derivative.
inline TriState in_plus(const Space& space, const Vec& x, const Vec& y, const Tolerance& tol = {}) {
  return classify(derivative_interval(space, x, y, tol).hi, tol);
}

/// y in x- ; margin is minus the left derivative.
inline TriState in_minus(const Space& space, const Vec& x, const Vec& y, const Tolerance& tol = {}) {
  return classify(-derivative_interval(space, x, y, tol).lo, tol);
}

/// x orthogonal to y in the sense of Birkhoff-James. The zero vector is
/// orthogonal to everything (margin +inf).
inline TriState bj_orthogonal_vectors(const Space& space, const Vec& x, const Vec& y, const Tolerance& tol = {}) {
  require_dim(space, x, "bj_orthogonal_vectors");
  require_dim(space, y, "bj_orthogonal_vectors");
  if (norm(space, x) == 0.0) return {Verdict::holds, std::numeric_limits<double>::infinity()};
  const auto d = derivative_interval(space, x, y, tol);
  return classify(std::min(d.hi, -d.lo), tol);
}

struct LineSearchResult {
  double lambda_star = 0.0;
  double value = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
};

/// Minimizes phi(t) = ||x + t y|| directly: a 65-point grid over
/// [-2||x||/||y||, 2||x||/||y||] (which must contain the minimizer since
/// phi(t) >= |t| ||y|| - ||x||) followed by golden-section search on the
/// best grid cell. Independent of the derivative machinery.
inline LineSearchResult line_min_oracle(const Space& space, const Vec& x, const Vec& y) {
  require_dim(space, x, "line_min_oracle");
  require_dim(space, y, "line_min_oracle");
  const double ny = norm(space, y);
  if (ny == 0.0) throw PreconditionError("line_min_oracle: y must be nonzero");
  const double nx = norm(space, x);
  LineSearchResult out;
  out.value = nx;
  if (nx == 0.0) return out;
  const double reach = 2.0 * nx / ny;
  out.bracket = {-reach, reach};
  auto phi = [&](double t) { return norm(space, x + t * y); };

  constexpr int kGrid = 64;
  int best = kGrid / 2;
  double best_value = nx;
  for (int j = 0; j <= kGrid; ++j) {
    const double t = -reach + 2.0 * reach * j / kGrid;
    const double v = j == kGrid / 2 ? nx : phi(t);
    if (v < best_value) best_value = v, best = j;
  }
  const double lo = -reach + 2.0 * reach * std::max(best - 1, 0) / kGrid;
  const double hi = -reach + 2.0 * reach * std::min(best + 1, kGrid) / kGrid;
  const auto gs = golden_section_minimize(phi, lo, hi, 1e-10);
  out.lambda_star = best == kGrid / 2 ? 0.0 : -reach + 2.0 * reach * best / kGrid;
  out.value = best_value;
  if (gs.value < out.value) {
    out.value = gs.value;
    out.lambda_star = gs.x;
  }
  return out;
}

/// z + t w with t chosen so that the result is orthogonal to w (James's
/// existence argument made constructive). Uses bisection on the sign of the
/// one-sided derivatives of t -> ||z + t w||.
inline Vec make_orthogonal_to(const Space& space, const Vec& z, const Vec& w, const Tolerance& tol = {}) {
  require_dim(space, z, "make_orthogonal_to");
  require_dim(space, w, "make_orthogonal_to");
  const double nw = norm(space, w);
  if (nw == 0.0) throw PreconditionError("make_orthogonal_to: w must be nonzero");
  const double reach = 2.0 * norm(space, z) / nw + 1.0;
  // -1: minimizer lies to the right of t, +1: to the left, 0: t is a minimizer
  auto side = [&](double t) {
    const Vec v = z + t * w;
    if (norm(space, v) == 0.0) return 0;
    const auto d = derivative_interval(space, v, w, tol);
    if (d.hi < 0.0) return -1;
    if (d.lo > 0.0) return 1;
    return 0;
  };
  double lo = -reach;
  double hi = reach;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const int s = side(mid);
    if (s == 0 || mid == lo || mid == hi) return z + mid * w;
    if (s < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return z + 0.5 * (lo + hi) * w;
}

/// A random v with x orthogonal to v: a random norming functional f of x
/// (convex combination of the extreme points of J(x)) and a Gaussian vector
/// projected onto ker f.
inline Vec orthogonal_sample(const Space& space, const Vec& x, Rng& rng, const Tolerance& tol = {}) {
  const auto face = support_face(space, x, tol);
  Vec f = Vec::Zero(x.size());
  double total = 0.0;
  for (const auto& g : face.functionals) {
    const double w = face.unique() ? 1.0 : rng.uniform();
    f += w * g;
    total += w;
  }
  f /= total;
  const double fx = f.dot(x);
  for (;;) {
    const Vec g = rng.normal_vec(x.size());
    Vec v = g - (f.dot(g) / fx) * x;
    if (v.norm() > 1e-8 * g.norm()) return v;
  }
}

/// An angular interval [begin, end] of directions (radians). begin == end
/// for a single direction.
struct AngularInterval {
  double begin = 0.0;
  double end = 0.0;

  double mid() const { return 0.5 * (begin + end); }
  bool is_point() const { return end - begin <= 1e-9; }
};

namespace detail {

// Zero set of a three-valued state function on the circle, located by a mesh
// scan and refined by bisection. state(theta) is -1, 0 or +1. Assumes
// state(theta + pi) == -state(theta), so zero components come in antipodal
// pairs; one interval per pair is returned, with its midpoint in [0, pi).
template <class State>
std::vector<AngularInterval> zero_set_on_circle(State&& state, int resolution, double precision) {
  const int n = resolution;
  const double h = kTwoPi / n;
  std::vector<int> states(static_cast<std::size_t>(n));
  int start = -1;
  for (int k = 0; k < n; ++k) {
    states[static_cast<std::size_t>(k)] = state(k * h);
    if (start < 0 && states[static_cast<std::size_t>(k)] != 0) start = k;
  }
  std::vector<AngularInterval> found;
  if (start < 0) return {{0.0, kPi}};

  bool in_run = false;
  double run_begin = 0.0;
  for (int step = 1; step <= n; ++step) {
    const double t0 = (start + step - 1) * h;
    const double t1 = (start + step) * h;
    const int s0 = states[static_cast<std::size_t>((start + step - 1) % n)];
    const int s1 = states[static_cast<std::size_t>((start + step) % n)];
    if (!in_run) {
      if (s1 == 0) {
        run_begin = bisect([&](double t) { return state(t) == 0; }, t0, t1, precision).second;
        in_run = true;
      } else if (s1 != s0) {
        const auto [a, b] = bisect([&](double t) { return state(t) != s0; }, t0, t1, precision);
        if (state(b) == 0) {
          const double e = bisect([&](double t) { return state(t) != 0; }, b, t1, precision).first;
          found.push_back({b, e});
        } else {
          found.push_back({0.5 * (a + b), 0.5 * (a + b)});
        }
      }
    } else if (s1 != 0) {
      const double e = bisect([&](double t) { return state(t) != 0; }, t0, t1, precision).first;
      found.push_back({run_begin, e});
      in_run = false;
    }
  }

  std::vector<AngularInterval> kept;
  for (auto c : found) {
    double m = std::fmod(c.mid(), kTwoPi);
    if (m < 0.0) m += kTwoPi;
    const double shift = m - c.mid() + (m >= kPi ? -kPi : 0.0);
    c.begin += shift;
    c.end += shift;
    bool duplicate = false;
    for (const auto& k : kept) {
      const double d = std::abs(std::remainder(c.mid() - k.mid(), kPi));
      if (d < 1e-7) duplicate = true;
    }
    if (!duplicate) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.mid() < b.mid(); });
  return kept;
}

inline int interval_state(const DerivativeInterval& d) {
  if (d.hi < 0.0) return -1;
  if (d.lo > 0.0) return 1;
  return 0;
}

inline void require_plane(const Space& space, const Vec& x, const char* what) {
  require_dim(space, x, what);
  if (space.dim() != 2) throw DimensionError(std::string(what) + ": only available in dimension 2");
  if (norm(space, x) == 0.0) throw PreconditionError(std::string(what) + ": x must be nonzero");
}

}  // namespace detail

inline constexpr double kAngularPrecision = 1e-12;

/// The directions y (up to sign) with x orthogonal to y, as angular cones.
inline std::vector<AngularInterval> orthogonal_cones_2d(const Space& space, const Vec& x, int resolution,
                                                        const Tolerance& tol = {}) {
  detail::require_plane(space, x, "orthogonal_cones_2d");
  auto state = [&](double t) {
    return detail::interval_state(derivative_interval(space, x, Vec(direction(t)), tol));
  };
  return detail::zero_set_on_circle(state, std::max(resolution, 8), kAngularPrecision);
}

/// The directions y (up to sign) with y orthogonal to x.
inline std::vector<AngularInterval> reverse_orthogonal_cones_2d(const Space& space, const Vec& x, int resolution,
                                                                const Tolerance& tol = {}) {
  detail::require_plane(space, x, "reverse_orthogonal_cones_2d");
  auto state = [&](double t) {
    return detail::interval_state(derivative_interval(space, Vec(direction(t)), x, tol));
  };
  return detail::zero_set_on_circle(state, std::max(resolution, 8), kAngularPrecision);
}

/// Unit vectors representing each cone: the single direction of a point
/// cone, or both edges and the middle of a proper one.
inline std::vector<Vec> cone_representatives(const Space& space, const std::vector<AngularInterval>& cones) {
  std::vector<Vec> out;
  for (const auto& c : cones) {
    if (c.is_point()) {
      out.push_back(normalize(space, direction(c.mid())));
    } else {
      out.push_back(normalize(space, direction(c.begin)));
      out.push_back(normalize(space, direction(c.mid())));
      out.push_back(normalize(space, direction(c.end)));
    }
  }
  return out;
}

namespace detail {

// In a smooth plane both relations have a single direction in closed form:
// J(x) turned by 90 degrees, and for the reverse relation the dual duality
// map applied to x turned by 90 degrees. Located angles would leave ~1e-13
// in coordinates that are exactly zero, which |t|^(p-1) blows up for p < 2.
inline Vec rot90(const Vec& v) { return Vec2(-v(1), v(0)); }

}  // namespace detail

/// Unit vectors y (up to sign) with x orthogonal to y; never empty.
inline std::vector<Vec> orthogonal_directions_2d(const Space& space, const Vec& x, int resolution,
                                                 const Tolerance& tol = {}) {
  if (space.smooth() && space.dim() == 2) {
    detail::require_plane(space, x, "orthogonal_directions_2d");
    return {normalize(space, detail::rot90(support_face(space, x, tol).functionals.front()))};
  }
  return cone_representatives(space, orthogonal_cones_2d(space, x, resolution, tol));
}

/// Unit vectors y (up to sign) with y orthogonal to x; never empty.
inline std::vector<Vec> reverse_orthogonal_directions_2d(const Space& space, const Vec& x, int resolution,
                                                         const Tolerance& tol = {}) {
  if (space.smooth() && space.dim() == 2) {
    detail::require_plane(space, x, "reverse_orthogonal_directions_2d");
    const double q = space.p() / (space.p() - 1.0);
    const Vec g = detail::rot90(x);
    Vec y(2);
    for (int i = 0; i < 2; ++i) y(i) = detail::sign(g(i)) * detail::pow_abs(std::abs(g(i)), q - 1.0);
    return {normalize(space, y)};
  }
  return cone_representatives(space, reverse_orthogonal_cones_2d(space, x, resolution, tol));
}

}  // namespace bjorth

#endif  // BJORTH_CONES_HPP
