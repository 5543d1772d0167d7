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
 * Finite-dimensional real normed spaces with analytic norm data.
 *
 * Two families are supported: l_p^n (1 <= p <= inf) and planar norms whose
 * unit ball is a centrally symmetric convex polygon. Every space exposes the
 * norm, the one-sided directional derivatives of the norm, the face of
 * norming functionals J(x) and a deterministic mesh of its unit sphere.
 */

#ifndef BJORTH_SPACE_HPP
#define BJORTH_SPACE_HPP

#include "bjorth/types.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <variant>
#include <vector>

namespace bjorth {

struct LpNorm {
  int dim = 2;
  double p = 2.0;  // +inf for the max norm
};

struct PolygonNorm {
  std::vector<Vec2> vertices;  // counterclockwise, centrally symmetric
  std::vector<Vec2> facets;    // facets[k] equals 1 on vertices[k] and vertices[k+1]
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

class Space {
 public:
  static Space lp(int dim, double p) {
    if (dim < 1) throw PreconditionError("lp space: dim must be >= 1");
    if (!(p >= 1.0)) throw PreconditionError("lp space: p must be >= 1 or inf");
    return Space(LpNorm{dim, p});
  }

  static Space polygon(std::vector<Vec2> vertices) {
    validate_polygon(vertices);
    PolygonNorm poly;
    const std::size_t n = vertices.size();
    poly.facets.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2& a = vertices[k];
      const Vec2& b = vertices[(k + 1) % n];
      const double det = a.x() * b.y() - b.x() * a.y();
      poly.facets.emplace_back((b.y() - a.y()) / det, (a.x() - b.x()) / det);
    }
    poly.vertices = std::move(vertices);
    return Space(std::move(poly));
  }

  /// Regular hexagon with vertices at +-(1,0), +-(1/2, sqrt3/2), +-(-1/2, sqrt3/2).
  static Space hexagon() {
    const double h = std::sqrt(3.0) / 2.0;
    return polygon({{1.0, 0.0}, {0.5, h}, {-0.5, h}, {-1.0, 0.0}, {-0.5, -h}, {0.5, -h}});
  }

  int dim() const {
    return std::visit(overloaded{[](const LpNorm& s) { return s.dim; }, [](const PolygonNorm&) { return 2; }},
                      norm_);
  }

  bool is_lp() const { return std::holds_alternative<LpNorm>(norm_); }
  bool is_polygon() const { return std::holds_alternative<PolygonNorm>(norm_); }

  double p() const {
    if (!is_lp()) throw PreconditionError("polygon space has no exponent p");
    return std::get<LpNorm>(norm_).p;
  }

  bool is_euclidean() const { return is_lp() && p() == 2.0; }

  // Polygon norms are never flagged smooth or strictly convex; certifying
  // either for a user polygon is not attempted.
  bool smooth() const { return is_lp() && p() > 1.0 && std::isfinite(p()); }
  bool strictly_convex() const { return smooth(); }

  const LpNorm& lp_data() const { return std::get<LpNorm>(norm_); }
  const PolygonNorm& polygon_data() const { return std::get<PolygonNorm>(norm_); }
  const std::variant<LpNorm, PolygonNorm>& variant() const { return norm_; }

  std::string describe() const {
    std::ostringstream os;
    std::visit(overloaded{[&](const LpNorm& s) {
                            os << "l_";
                            if (std::isinf(s.p)) {
                              os << "inf";
                            } else {
                              os << s.p;
                            }
                            os << "^" << s.dim;
                          },
                          [&](const PolygonNorm& s) { os << "polygon(" << s.vertices.size() << " vertices)"; }},
               norm_);
    return os.str();
  }

 private:
  explicit Space(std::variant<LpNorm, PolygonNorm> n) : norm_(std::move(n)) {}

  static double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

  static void validate_polygon(const std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    if (n < 4) throw PreconditionError("polygon space: need at least 4 vertices");
    if (n % 2 != 0) throw PreconditionError("polygon space: vertex count must be even (central symmetry)");
    double scale = 0.0;
    for (const auto& x : v) {
      if (!x.allFinite()) throw PreconditionError("polygon space: non-finite vertex");
      scale = std::max(scale, x.norm());
    }
    if (scale == 0.0) throw PreconditionError("polygon space: degenerate vertices");
    double turn = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2& a = v[k];
      const Vec2& b = v[(k + 1) % n];
      const Vec2& c = v[(k + 2) % n];
      if (!(cross(a, b) > 0.0)) throw PreconditionError("polygon space: vertices not in strict counterclockwise order");
      if (!(cross(b - a, c - b) > 0.0)) throw PreconditionError("polygon space: vertices not strictly convex");
      turn += std::atan2(cross(a, b), a.dot(b));
      if ((v[(k + n / 2) % n] + a).norm() > 1e-12 * scale) {
        throw PreconditionError("polygon space: vertex list is not centrally symmetric");
      }
    }
    if (std::abs(turn - kTwoPi) > 1e-9) throw PreconditionError("polygon space: vertices wind more than once");
  }

  std::variant<LpNorm, PolygonNorm> norm_;
};

namespace detail {

// |a|^p for a >= 0 with exact products for the small integer exponents used
// throughout the catalog.
inline double pow_abs(double a, double p) {
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 4.0) {
    const double s = a * a;
    return s * s;
  }
  return std::pow(a, p);
}

inline double root(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  if (p == 3.0) return std::cbrt(s);
  if (p == 4.0) return std::sqrt(std::sqrt(s));
  return std::pow(s, 1.0 / p);
}

inline double sign(double a) { return (a > 0.0) - (a < 0.0); }

inline double polygon_norm(const PolygonNorm& poly, double x, double y) {
  if (x == 0.0 && y == 0.0) return 0.0;
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& a = v[k];
    const Vec2& b = v[(k + 1) % n];
    const double ca = a.x() * y - a.y() * x;  // cross(a, v)
    const double cb = x * b.y() - y * b.x();  // cross(v, b)
    if (ca >= 0.0 && cb >= 0.0) {
      const double det = a.x() * b.y() - a.y() * b.x();
      return (ca + cb) / det;
    }
  }
  // unreachable for a validated polygon; fall back to the facet maximum
  double best = 0.0;
  for (const auto& f : poly.facets) best = std::max(best, f.x() * x + f.y() * y);
  return best;
}

inline double lp_norm(const LpNorm& s, const double* v, Eigen::Index n) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
  if (m == 0.0 || std::isinf(s.p)) return m;
  if (s.p == 1.0) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) sum += std::abs(v[i]);
    return sum;
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) sum += pow_abs(std::abs(v[i]) / m, s.p);
  return m * root(sum, s.p);
}

}  // namespace detail

inline void require_dim(const Space& space, const Vec& v, const char* what) {
  if (v.size() != space.dim()) {
    throw DimensionError(std::string(what) + ": vector of dimension " + std::to_string(v.size()) +
                         " in a space of dimension " + std::to_string(space.dim()));
  }
}

/// The norm of v.
inline double norm(const Space& space, const Vec& v) {
  require_dim(space, v, "norm");
  return std::visit(overloaded{[&](const LpNorm& s) { return detail::lp_norm(s, v.data(), v.size()); },
                               [&](const PolygonNorm& s) { return detail::polygon_norm(s, v(0), v(1)); }},
                    space.variant());
}

/// v scaled onto the unit sphere of the space. v must be nonzero.
inline Vec normalize(const Space& space, const Vec& v) {
  const double n = norm(space, v);
  if (n == 0.0) throw PreconditionError("normalize: zero vector");
  return v / n;
}

/// Left and right derivatives at 0 of phi(lambda) = ||x + lambda y||.
struct DerivativeInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// One-sided directional derivatives of the norm at x along y.
///
/// Non-smooth pieces (zero coordinates for l_1, maximal coordinates for
/// l_inf, facets for polygons) count as active when they are within
/// `tol.eps` of the extremal value, relative to ||x||.
inline DerivativeInterval derivative_interval(const Space& space, const Vec& x, const Vec& y,
                                              const Tolerance& tol = {}) {
  require_dim(space, x, "derivative_interval");
  require_dim(space, y, "derivative_interval");
  const double nx = norm(space, x);
  if (nx == 0.0) throw PreconditionError("derivative_interval: x must be nonzero");
  return std::visit(
      overloaded{
          [&](const LpNorm& s) -> DerivativeInterval {
            const Eigen::Index n = x.size();
            if (std::isinf(s.p)) {
              double lo = std::numeric_limits<double>::infinity();
              double hi = -lo;
              for (Eigen::Index i = 0; i < n; ++i) {
                if (std::abs(x(i)) >= nx * (1.0 - tol.eps)) {
                  const double d = detail::sign(x(i)) * y(i);
                  lo = std::min(lo, d);
                  hi = std::max(hi, d);
                }
              }
              return {lo, hi};
            }
            if (s.p == 1.0) {
              double base = 0.0;
              double spread = 0.0;
              for (Eigen::Index i = 0; i < n; ++i) {
                if (std::abs(x(i)) <= tol.eps * nx) {
                  spread += std::abs(y(i));
                } else {
                  base += detail::sign(x(i)) * y(i);
                }
              }
              return {base - spread, base + spread};
            }
            const double m = x.cwiseAbs().maxCoeff();
            double d = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
              d += detail::sign(x(i)) * detail::pow_abs(std::abs(x(i)) / m, s.p - 1.0) * y(i);
            }
            d /= detail::pow_abs(nx / m, s.p - 1.0);
            return {d, d};
          },
          [&](const PolygonNorm& s) -> DerivativeInterval {
            double top = -std::numeric_limits<double>::infinity();
            for (const auto& f : s.facets) top = std::max(top, f.x() * x(0) + f.y() * x(1));
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (const auto& f : s.facets) {
              if (f.x() * x(0) + f.y() * x(1) >= top - tol.eps * nx) {
                const double d = f.x() * y(0) + f.y() * y(1);
                lo = std::min(lo, d);
                hi = std::max(hi, d);
              }
            }
            return {lo, hi};
          }},
      space.variant());
}

/// J(x): the face of norming functionals of x, given by its extreme points.
struct SupportFace {
  std::vector<Vec> functionals;
  bool unique() const { return functionals.size() == 1; }
};

inline SupportFace support_face(const Space& space, const Vec& x, const Tolerance& tol = {}) {
  require_dim(space, x, "support_face");
  const double nx = norm(space, x);
  if (nx == 0.0) throw PreconditionError("support_face: x must be nonzero");
  SupportFace face;
  std::visit(overloaded{[&](const LpNorm& s) {
                          const Eigen::Index n = x.size();
                          if (std::isinf(s.p)) {
                            for (Eigen::Index i = 0; i < n; ++i) {
                              if (std::abs(x(i)) >= nx * (1.0 - tol.eps)) {
                                Vec f = Vec::Zero(n);
                                f(i) = detail::sign(x(i));
                                face.functionals.push_back(std::move(f));
                              }
                            }
                          } else if (s.p == 1.0) {
                            std::vector<Eigen::Index> free;
                            Vec f(n);
                            for (Eigen::Index i = 0; i < n; ++i) {
                              if (std::abs(x(i)) <= tol.eps * nx) {
                                free.push_back(i);
                                f(i) = 1.0;
                              } else {
                                f(i) = detail::sign(x(i));
                              }
                            }
                            if (free.size() > 20) throw PreconditionError("support_face: too many zero coordinates");
                            for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
                              Vec g = f;
                              for (std::size_t b = 0; b < free.size(); ++b) {
                                if (mask & (std::size_t{1} << b)) g(free[b]) = -1.0;
                              }
                              face.functionals.push_back(std::move(g));
                            }
                          } else {
                            const double m = x.cwiseAbs().maxCoeff();
                            Vec f(n);
                            const double scale = detail::pow_abs(nx / m, s.p - 1.0);
                            for (Eigen::Index i = 0; i < n; ++i) {
                              f(i) = detail::sign(x(i)) * detail::pow_abs(std::abs(x(i)) / m, s.p - 1.0) / scale;
                            }
                            face.functionals.push_back(std::move(f));
                          }
                        },
                        [&](const PolygonNorm& s) {
                          double top = -std::numeric_limits<double>::infinity();
                          for (const auto& f : s.facets) top = std::max(top, f.x() * x(0) + f.y() * x(1));
                          for (const auto& f : s.facets) {
                            if (f.x() * x(0) + f.y() * x(1) >= top - tol.eps * nx) face.functionals.push_back(Vec(f));
                          }
                        }},
             space.variant());
  return face;
}

/// sup of f over the unit ball.
inline double dual_norm(const Space& space, const Vec& f) {
  require_dim(space, f, "dual_norm");
  return std::visit(overloaded{[&](const LpNorm& s) {
                                 if (std::isinf(s.p)) return f.cwiseAbs().sum();
                                 if (s.p == 1.0) return f.cwiseAbs().maxCoeff();
                                 const LpNorm dual{s.dim, s.p / (s.p - 1.0)};
                                 return detail::lp_norm(dual, f.data(), f.size());
                               },
                               [&](const PolygonNorm& s) {
                                 double best = 0.0;
                                 for (const auto& v : s.vertices) best = std::max(best, f(0) * v.x() + f(1) * v.y());
                                 return best;
                               }},
                    space.variant());
}

/// Extreme points of the unit ball of a planar polyhedral space (polygon,
/// l_1^2, l_inf^2) in counterclockwise order; empty otherwise.
inline std::vector<Vec2> polyhedral_cycle_2d(const Space& space) {
  if (space.is_polygon()) return space.polygon_data().vertices;
  if (space.dim() != 2) return {};
  if (space.p() == 1.0) return {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  if (std::isinf(space.p())) return {{1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}};
  return {};
}

namespace detail {

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

}  // namespace detail

/// Deterministic points of the unit sphere.
///
/// In the plane: `resolution` equally spaced direction angles starting at 0.
/// In dimension 3: a Fibonacci lattice. Above: Halton points pushed through
/// Box-Muller. Each direction is rescaled onto the unit sphere of the space.
inline std::vector<Vec> sphere_mesh(const Space& space, int resolution) {
  if (resolution < 1) throw PreconditionError("sphere_mesh: resolution must be positive");
  const int n = space.dim();
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(resolution));
  if (n == 1) {
    out.push_back(Vec::Ones(1));
    out.push_back(-Vec::Ones(1));
    return out;
  }
  for (int k = 0; k < resolution; ++k) {
    Vec d(n);
    if (n == 2) {
      d = direction(kTwoPi * k / resolution);
    } else if (n == 3) {
      const double golden = kPi * (3.0 - std::sqrt(5.0));
      const double z = 1.0 - (2.0 * k + 1.0) / resolution;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      d << r * std::cos(golden * k), r * std::sin(golden * k), z;
    } else {
      if (n > static_cast<int>(std::size(detail::kPrimes))) {
        throw PreconditionError("sphere_mesh: dimension too large");
      }
      for (int i = 0; i < n; i += 2) {
        const double u1 = std::max(detail::radical_inverse(k + 1, detail::kPrimes[i]), 1e-300);
        const double u2 = detail::radical_inverse(k + 1, detail::kPrimes[i + 1]);
        const double r = std::sqrt(-2.0 * std::log(u1));
        d(i) = r * std::cos(kTwoPi * u2);
        if (i + 1 < n) d(i + 1) = r * std::sin(kTwoPi * u2);
      }
      if (d.norm() == 0.0) d(0) = 1.0;
    }
    out.push_back(normalize(space, d));
  }
  return out;
}

}  // namespace bjorth

#endif  // BJORTH_SPACE_HPP
