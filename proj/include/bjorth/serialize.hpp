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
 * JSON input (spaces, operators, vectors) and output (results) for the
 * library types. Field names here are a stable contract of the CLI.
 */

#ifndef BJORTH_SERIALIZE_HPP
#define BJORTH_SERIALIZE_HPP

#include "bjorth/symmetry.hpp"

#include <json.hpp>

#include <cmath>
#include <string>

namespace bjorth {

using json = nlohmann::json;

/// Malformed or inconsistent JSON input; the message names the field.
class InputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline double number_at(const json& j, const std::string& field) {
  if (!j.is_number()) throw InputError("field '" + field + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError("field '" + field + "' must be finite");
  return v;
}

}  // namespace detail

/// {"type":"lp","dim":n,"p":number|"inf"}, {"type":"polygon2","vertices":[[x,y],...]}
/// or {"type":"hexagon"}.
inline Space space_from_json(const json& j) {
  if (!j.is_object()) throw InputError("space: expected a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) throw InputError("field 'type' must be a string");
  const std::string type = j["type"].get<std::string>();
  try {
    if (type == "lp") {
      if (!j.contains("dim") || !j["dim"].is_number_integer()) throw InputError("field 'dim' must be an integer");
      const auto dim = j["dim"].get<long long>();
      if (dim < 1 || dim > 4096) throw InputError("field 'dim' must be between 1 and 4096");
      if (!j.contains("p")) throw InputError("field 'p' is required");
      double p = 0.0;
      if (j["p"].is_string()) {
        const auto s = j["p"].get<std::string>();
        if (s != "inf" && s != "infinity") throw InputError("field 'p' must be a number or \"inf\"");
        p = std::numeric_limits<double>::infinity();
      } else {
        p = detail::number_at(j["p"], "p");
      }
      if (!(p >= 1.0)) throw InputError("field 'p' must be >= 1");
      return Space::lp(static_cast<int>(dim), p);
    }
    if (type == "polygon2") {
      if (!j.contains("vertices") || !j["vertices"].is_array()) throw InputError("field 'vertices' must be an array");
      std::vector<Vec2> v;
      for (const auto& e : j["vertices"]) {
        if (!e.is_array() || e.size() != 2) throw InputError("field 'vertices' must hold [x, y] pairs");
        v.emplace_back(detail::number_at(e[0], "vertices"), detail::number_at(e[1], "vertices"));
      }
      return Space::polygon(std::move(v));
    }
    if (type == "hexagon") return Space::hexagon();
  } catch (const PreconditionError& e) {
    throw InputError(std::string("space: ") + e.what());
  }
  throw InputError("field 'type' must be \"lp\", \"polygon2\" or \"hexagon\"");
}

inline json to_json(const Space& space) {
  return std::visit(overloaded{[](const LpNorm& s) {
                                 json j{{"type", "lp"}, {"dim", s.dim}};
                                 if (std::isinf(s.p)) {
                                   j["p"] = "inf";
                                 } else {
                                   j["p"] = s.p;
                                 }
                                 return j;
                               },
                               [](const PolygonNorm& s) {
                                 json v = json::array();
                                 for (const auto& x : s.vertices) v.push_back({x.x(), x.y()});
                                 return json{{"type", "polygon2"}, {"vertices", v}};
                               }},
                    space.variant());
}

inline Vec vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw InputError("field '" + field + "' must be a non-empty array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = detail::number_at(j[i], field);
  return v;
}

/// {"matrix": [[row], ...]} or a bare array of rows; must be square.
inline Mat matrix_from_json(const json& j, const std::string& field) {
  const json& rows = j.is_object() ? (j.contains("matrix") ? j["matrix"] : json()) : j;
  if (!rows.is_array() || rows.empty()) throw InputError("field '" + field + "' must hold a 'matrix' array of rows");
  const std::size_t n = rows.size();
  Mat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw InputError("field '" + field + "' must be a square matrix");
    for (std::size_t k = 0; k < n; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = detail::number_at(rows[i][k], field);
    }
  }
  return m;
}

inline json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline json to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
    rows.push_back(r);
  }
  return rows;
}

// non-finite margins (the conventions for zero operands) are written as strings
inline json margin_json(double m) {
  if (std::isnan(m)) return "nan";
  if (std::isinf(m)) return m > 0 ? "inf" : "-inf";
  return m;
}

inline json to_json(const TriState& t) {
  return json{{"verdict", std::string(to_string(t.verdict))}, {"margin", margin_json(t.margin)}};
}

inline json to_json(const AngularInterval& a) { return json{{"begin", a.begin}, {"end", a.end}}; }

inline json to_json(const NormAttainment& a) {
  json j{{"value", a.value}, {"exact", a.exact}};
  json w = json::array();
  for (const auto& v : a.witnesses) w.push_back(to_json(v));
  j["witnesses"] = w;
  if (a.arcs_2d) {
    json arcs = json::array();
    for (const auto& x : *a.arcs_2d) arcs.push_back(to_json(x));
    j["arcs_2d"] = arcs;
    j["connected"] = a.connected;
  }
  if (a.subspace) j["subspace_dim"] = a.subspace->cols();
  return j;
}

inline json to_json(const OrthDecision& d) {
  json j{{"verdict", to_json(d.verdict)},
         {"margin_plus", margin_json(d.margin_plus)},
         {"margin_minus", margin_json(d.margin_minus)}};
  j["witness_plus"] = d.witness_plus ? to_json(*d.witness_plus) : json();
  j["witness_minus"] = d.witness_minus ? to_json(*d.witness_minus) : json();
  j["norm"] = d.attainment.value;
  return j;
}

inline json to_json(const OperatorLineSearch& s) {
  return json{{"verdict", to_json(s.verdict)},
              {"lambda_star", s.lambda_star},
              {"min_value", s.min_value},
              {"norm", s.norm_T},
              {"bracket", {s.bracket.first, s.bracket.second}}};
}

inline json to_json(const SymmetryVerdict& v) {
  json j{{"kind", std::string(to_string(v.kind))},
         {"verdict", v.symmetric ? "symmetric-up-to-resolution" : "not-symmetric"},
         {"trials_or_resolution", v.trials_or_resolution},
         {"tested", v.tested},
         {"indeterminate", v.indeterminate},
         {"rejected", v.rejected},
         {"worst_margin", margin_json(v.worst_margin)},
         {"method", v.method}};
  j["counterexample"] = v.counterexample_operator  ? json{{"matrix", to_json(*v.counterexample_operator)}}
                        : v.counterexample_vector ? json{{"vector", to_json(*v.counterexample_vector)}}
                                                  : json();
  return j;
}

inline json to_json(const SymmetricScan& s) {
  json pts = json::array();
  for (const auto& p : s.points) {
    pts.push_back({{"begin", p.begin},
                   {"end", p.end},
                   {"point", to_json(p.point)},
                   {"margin", margin_json(p.margin)},
                   {"verified", p.verified}});
  }
  return json{{"kind", std::string(to_string(s.kind))},
              {"resolution", s.resolution},
              {"inner_resolution", s.inner_resolution},
              {"mesh_symmetric", s.mesh_symmetric},
              {"indeterminate", s.indeterminate},
              {"all_symmetric", s.all_symmetric},
              {"points", pts}};
}

}  // namespace bjorth

#endif  // BJORTH_SERIALIZE_HPP
