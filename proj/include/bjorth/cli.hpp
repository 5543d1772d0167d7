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
 * Command-line front end. `run` parses arguments, dispatches to the library
 * and returns the process exit code; it is kept in a header so the tests can
 * drive it in-process.
 *
 * Exit codes: 0 holds / success, 1 fails, 2 indeterminate, 64 usage error.
 */

#ifndef BJORTH_CLI_HPP
#define BJORTH_CLI_HPP

#include "bjorth/catalog.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace bjorth::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitIndeterminate = 2;
inline constexpr int kExitUsage = 64;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  Tolerance tol;
  int resolution = 4096;
  std::uint64_t seed = 0;
  std::string out;
  bool json_stdout = false;

  void validate() const {
    if (!(tol.eps > 0.0) || !(tol.eps < tol.band)) throw UsageError("--tol must be positive and smaller than --band");
    if (resolution < 8) throw UsageError("--resolution must be at least 8");
  }
};

inline int exit_code(const TriState& t) {
  if (t.holds()) return kExitHolds;
  return t.fails() ? kExitFails : kExitIndeterminate;
}

/// A flag value that names an existing file is read from it; anything else is
/// parsed as inline JSON.
inline json read_json_arg(const std::string& text, const std::string& flag) {
  std::string body = text;
  std::error_code ec;
  if (std::filesystem::is_regular_file(text, ec)) {
    std::ifstream in(text);
    body.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error&) {
    throw InputError(flag + ": not a file and not valid JSON");
  }
}

inline double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("--p must be a number or inf");
  }
  if (used != s.size()) throw UsageError("--p must be a number or inf");
  return p;
}

namespace detail {

struct Common {
  RunConfig config;
  std::string space;
  std::string p;
  int dim = 2;
};

inline void add_common(CLI::App* app, Common& c) {
  app->add_option("--tol", c.config.tol.eps, "tolerance eps (margins >= -eps hold)")->capture_default_str();
  app->add_option("--band", c.config.tol.band, "indeterminate band (margins <= -band fail)")->capture_default_str();
  app->add_option("--resolution", c.config.resolution, "mesh resolution")->capture_default_str();
  app->add_option("--seed", c.config.seed, "random seed")->capture_default_str();
  app->add_option("--out", c.config.out, "write the JSON report to this path");
  app->add_flag("--json", c.config.json_stdout, "print the JSON report instead of the text summary");
}

inline void add_space(CLI::App* app, Common& c) {
  app->add_option("--space", c.space, "space as a JSON file or inline JSON");
  app->add_option("--p", c.p, "exponent of l_p^dim when --space is absent");
  app->add_option("--dim", c.dim, "dimension of l_p^dim when --space is absent")->capture_default_str();
}

inline Space resolve_space(const Common& c) {
  if (!c.space.empty()) return space_from_json(read_json_arg(c.space, "--space"));
  if (c.p.empty()) throw UsageError("--space or --p is required");
  const double p = parse_p(c.p);
  if (!(p >= 1.0)) throw UsageError("--p must be >= 1");
  if (c.dim < 1) throw UsageError("--dim must be positive");
  return Space::lp(c.dim, p);
}

inline void emit(const json& report, const std::string& text, const RunConfig& config, std::ostream& out) {
  if (config.json_stdout) {
    out << report.dump(2) << "\n";
  } else {
    out << text;
  }
  if (!config.out.empty()) {
    std::ofstream f(config.out);
    if (!f) throw UsageError("--out: cannot open " + config.out);
    f << report.dump(2) << "\n";
  }
}

inline std::string verdict_line(const std::string& label, const TriState& t) {
  return label + ": " + std::string(to_string(t.verdict)) + " (margin " + fmt(t.margin) + ")\n";
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Birkhoff-James orthogonality and symmetric points in finite-dimensional normed spaces", "bjorth"};
  app.require_subcommand(1);

  detail::Common common;

  // check-orth
  auto* orth = app.add_subcommand("check-orth", "decide x orthogonal to y, or T orthogonal to A");
  std::string mode = "vectors";
  std::string xs, ys, ms, m2s, operands;
  detail::add_space(orth, common);
  detail::add_common(orth, common);
  orth->add_option("--mode", mode, "vectors or operators")->check(CLI::IsMember({"vectors", "operators"}))->capture_default_str();
  orth->add_option("--x", xs, "vector x as a JSON array");
  orth->add_option("--y", ys, "vector y as a JSON array");
  orth->add_option("--matrix", ms, "operator T as JSON (file or inline)");
  orth->add_option("--matrix2", m2s, "operator A as JSON (file or inline)");
  orth->add_option("--operands", operands, "operands as JSON: {\"x\":..,\"y\":..} or {\"T\":..,\"A\":..}");

  // operator-norm
  auto* onorm = app.add_subcommand("operator-norm", "operator norm and its attainment set");
  detail::add_space(onorm, common);
  detail::add_common(onorm, common);
  std::string norm_matrix;
  onorm->add_option("--matrix", norm_matrix, "operator as JSON (file or inline)")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run a named check suite");
  std::string suite;
  std::string vp;
  int trials = -1;
  int n = -1;
  detail::add_common(verify, common);
  verify
      ->add_option("suite", suite, "example-1-1, example-2-2, prop-2-8, prop-2-9, thm-2-10, bhatia-semrl or all")
      ->required()
      ->check(CLI::IsMember({"example-1-1", "example-2-2", "prop-2-8", "prop-2-9", "thm-2-10", "bhatia-semrl", "all"}));
  verify->add_option("--p", vp, "exponent (prop-2-8, prop-2-9: 3; thm-2-10: 2)");
  verify->add_option("--trials", trials, "trial count (example-2-2, bhatia-semrl: 1000)");
  verify->add_option("--n", n, "dimension for bhatia-semrl (2)");

  // scan-symmetric
  auto* scan = app.add_subcommand("scan-symmetric", "locate left or right symmetric points on the unit sphere");
  std::string kind = "left";
  int inner = 256;
  int samples = 256;
  detail::add_space(scan, common);
  detail::add_common(scan, common);
  scan->add_option("--kind", kind, "left or right")->check(CLI::IsMember({"left", "right"}))->capture_default_str();
  scan->add_option("--inner-resolution", inner, "directions checked per mesh point")->capture_default_str();
  scan->add_option("--trials", samples, "sampled sphere points outside the plane")->capture_default_str();

  // conjecture-search
  auto* conj = app.add_subcommand("conjecture-search", "randomized search for nonzero left symmetric operators");
  std::string cp = "3";
  int cn = 2;
  int ctrials = 100;
  int cinner = 16;
  detail::add_common(conj, common);
  conj->add_option("--p", cp, "exponent in (1, inf)")->capture_default_str();
  conj->add_option("--n", cn, "dimension")->capture_default_str();
  conj->add_option("--dim", cn, "alias of --n");
  conj->add_option("--trials", ctrials, "sampled operators")->capture_default_str();
  conj->add_option("--inner-trials", cinner, "falsifier trials per operator")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e, out, err);
      return 0;
    }
    err << "bjorth: " << e.what() << "\n";
    return kExitUsage;
  }

  RunConfig& config = common.config;
  try {
    config.validate();

    if (orth->parsed()) {
      const Space space = detail::resolve_space(common);
      json ops = operands.empty() ? json::object() : read_json_arg(operands, "--operands");
      if (!ops.is_object()) throw InputError("--operands must be a JSON object");
      if (mode == "vectors") {
        const Vec x = !xs.empty() ? vector_from_json(read_json_arg(xs, "--x"), "x")
                                  : (ops.contains("x") ? vector_from_json(ops["x"], "x") : throw UsageError("--x is required"));
        const Vec y = !ys.empty() ? vector_from_json(read_json_arg(ys, "--y"), "y")
                                  : (ops.contains("y") ? vector_from_json(ops["y"], "y") : throw UsageError("--y is required"));
        require_dim(space, x, "x");
        require_dim(space, y, "y");
        const TriState v = bj_orthogonal_vectors(space, x, y, config.tol);
        json report{{"mode", "vectors"}, {"space", to_json(space)}, {"x", to_json(x)}, {"y", to_json(y)},
                    {"verdict", to_json(v)}};
        std::string text = detail::verdict_line("x orthogonal to y", v);
        if (x.isZero(0.0)) {
          report["note"] = "x = 0: every y is orthogonal to 0 by convention";
          text += "note: x = 0, every y is orthogonal to 0 by convention\n";
        } else {
          const auto d = derivative_interval(space, x, y, config.tol);
          report["in_plus"] = to_json(in_plus(space, x, y, config.tol));
          report["in_minus"] = to_json(in_minus(space, x, y, config.tol));
          report["derivative"] = {{"lo", d.lo}, {"hi", d.hi}};
          text += "one-sided derivatives of ||x + t y|| at 0: [" + fmt(d.lo) + ", " + fmt(d.hi) + "]\n";
        }
        detail::emit(report, text, config, out);
        return exit_code(v);
      }
      const std::string tsrc = !ms.empty() ? ms : (ops.contains("T") ? ops["T"].dump() : "");
      const std::string asrc = !m2s.empty() ? m2s : (ops.contains("A") ? ops["A"].dump() : "");
      if (tsrc.empty() || asrc.empty()) throw UsageError("--matrix and --matrix2 are required in operators mode");
      const Mat T = matrix_from_json(read_json_arg(tsrc, "--matrix"), "matrix");
      const Mat A = matrix_from_json(read_json_arg(asrc, "--matrix2"), "matrix2");
      NormOptions options;
      options.resolution = config.resolution;
      const OperatorNormSolver solver(space, options);
      const auto decision = bj_orthogonal_operators(solver, T, A, config.tol);
      const auto oracle = bj_orthogonal_operators_oracle(solver, T, A);
      const bool agree = decision.verdict.indeterminate() || oracle.verdict.indeterminate() ||
                         decision.verdict.verdict == oracle.verdict.verdict;
      json report{{"mode", "operators"},  {"space", to_json(space)},       {"T", to_json(T)},
                  {"A", to_json(A)},      {"witness_route", to_json(decision)}, {"oracle_route", to_json(oracle)},
                  {"routes_agree", agree}};
      std::string text = detail::verdict_line("T orthogonal to A (witness route)", decision.verdict) +
                         detail::verdict_line("T orthogonal to A (line-search oracle)", oracle.verdict) +
                         "||T|| = " + fmt(decision.attainment.value) + ", min ||T + lambda A|| = " +
                         fmt(oracle.min_value) + " at lambda = " + fmt(oracle.lambda_star) + "\n";
      if (!agree) text += "warning: the two routes disagree\n";
      detail::emit(report, text, config, out);
      return exit_code(decision.verdict);
    }

    if (onorm->parsed()) {
      const Space space = detail::resolve_space(common);
      const Mat T = matrix_from_json(read_json_arg(norm_matrix, "--matrix"), "matrix");
      require_operator(space, T, "matrix");
      NormOptions options;
      options.resolution = config.resolution;
      const auto att = operator_norm(space, T, options);
      std::string text = "||T|| = " + fmt(att.value) + (att.exact ? " (exact)" : " (mesh and refinement)") + "\n";
      text += "attained at (up to sign):\n";
      constexpr std::size_t kListed = 12;
      for (std::size_t i = 0; i < std::min(att.witnesses.size(), kListed); ++i) text += "  " + fmt(att.witnesses[i]) + "\n";
      if (att.witnesses.size() > kListed) {
        text += "  ... " + std::to_string(att.witnesses.size() - kListed) + " more (--json lists all)\n";
      }
      if (att.subspace) text += "  (and every unit vector of a " + std::to_string(att.subspace->cols()) + "-dimensional subspace)\n";
      json report{{"space", to_json(space)}, {"matrix", to_json(T)}, {"attainment", to_json(att)}};
      detail::emit(report, text, config, out);
      return 0;
    }

    if (verify->parsed()) {
      const double p = vp.empty() ? 0.0 : parse_p(vp);
      auto pick_p = [&](double fallback) { return vp.empty() ? fallback : p; };
      auto pick_trials = [&](int fallback) {
        if (trials >= 0 && trials < 1) throw UsageError("--trials must be positive");
        return trials > 0 ? trials : fallback;
      };
      auto pick_n = [&](int fallback) {
        if (n >= 0 && n < 2) throw UsageError("--n must be >= 2");
        return n > 0 ? n : fallback;
      };
      auto run_suite = [&](const std::string& name) -> std::vector<SuiteReport> {
        try {
          if (name == "example-1-1") return {hexagon_rotation_suite()};
          if (name == "example-2-2") return {l1_left_symmetric_operator_suite(pick_trials(1000), config.seed, config.tol)};
          if (name == "prop-2-8") return {lp_left_symmetric_points_scan(pick_p(3.0), config.resolution, config.tol)};
          if (name == "prop-2-9") return {lp_mutual_pairs_scan(pick_p(3.0), config.resolution, config.tol)};
          if (name == "thm-2-10") return {lp_plane_operator_cases(pick_p(2.0), config.tol)};
          if (name == "bhatia-semrl") return {hilbert_inner_product_suite(pick_n(2), pick_trials(1000), config.seed, config.tol)};
        } catch (const PreconditionError& e) {
          throw UsageError(e.what());
        }
        throw UsageError("unknown suite " + name);
      };
      std::vector<SuiteReport> reports;
      if (suite == "all") {
        for (const char* s : {"example-1-1", "example-2-2", "prop-2-8", "prop-2-9", "thm-2-10", "bhatia-semrl"}) {
          for (auto& r : run_suite(s)) reports.push_back(std::move(r));
        }
      } else {
        reports = run_suite(suite);
      }
      bool passed = true;
      std::string text;
      json list = json::array();
      for (const auto& r : reports) {
        passed = passed && r.passed();
        text += r.summary();
        list.push_back(r.to_json());
      }
      const json report = reports.size() == 1 ? list[0] : json{{"passed", passed}, {"suites", list}};
      detail::emit(report, text, config, out);
      return passed ? 0 : 1;
    }

    if (scan->parsed()) {
      const Space space = detail::resolve_space(common);
      const SymmetryKind k = kind == "left" ? SymmetryKind::left : SymmetryKind::right;
      if (inner < 8) throw UsageError("--inner-resolution must be at least 8");
      if (space.dim() == 2) {
        const auto s = scan_symmetric_points_2d(space, k, config.resolution, inner, config.tol);
        json report{{"space", to_json(space)}, {"mode", "exhaustive"}, {"scan", to_json(s)}};
        std::string text = std::string(to_string(k)) + " symmetric points, mesh of " + std::to_string(s.resolution) + ":\n";
        if (s.all_symmetric) {
          text += "all sampled points symmetric\n";
        } else {
          text += std::to_string(s.points.size()) + " located\n";
          for (const auto& pt : s.points) {
            text += "  " + fmt(pt.point) + " angle " + fmt(angle_of(pt.point)) +
                    (pt.end - pt.begin > 1e-9 ? " (arc " + fmt(pt.begin) + " .. " + fmt(pt.end) + ")" : "") +
                    " margin " + fmt(pt.margin) + (pt.verified ? " verified" : " NOT verified") + "\n";
          }
        }
        if (s.indeterminate > 0) text += std::to_string(s.indeterminate) + " mesh points indeterminate\n";
        detail::emit(report, text, config, out);
        return 0;
      }
      err << "warning: exhaustive scan needs dimension 2; sampling " << samples << " sphere points instead\n";
      if (samples < 1) throw UsageError("--trials must be positive");
      const auto pts = sphere_mesh(space, samples);
      std::vector<SymmetryVerdict> verdicts(pts.size());
      parallel_for(pts.size(), [&](std::size_t i) {
        verdicts[i] = is_symmetric_point(k, space, pts[i], config.resolution, config.tol, config.seed + i);
      });
      json found = json::array();
      std::string text;
      int symmetric = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!verdicts[i].symmetric) continue;
        ++symmetric;
        found.push_back({{"point", to_json(pts[i])}, {"verdict", to_json(verdicts[i])}});
        text += "  " + fmt(pts[i]) + "\n";
      }
      text = std::to_string(symmetric) + " of " + std::to_string(pts.size()) + " sampled points " +
             std::string(to_string(k)) + " symmetric up to resolution\n" + text;
      json report{{"space", to_json(space)}, {"mode", "sampled"}, {"samples", pts.size()}, {"symmetric", found}};
      detail::emit(report, text, config, out);
      return 0;
    }

    if (conj->parsed()) {
      const double p = parse_p(cp);
      if (!(p > 1.0) || !std::isfinite(p)) throw UsageError("--p must lie in (1, inf)");
      if (cn < 2) throw UsageError("--n must be >= 2");
      if (ctrials < 1 || cinner < 1) throw UsageError("--trials and --inner-trials must be positive");
      const auto r = left_symmetry_conjecture_search(cn, p, ctrials, config.seed, cinner, config.tol);
      std::string text = r.summary();
      text += std::to_string(r.details["survivors"].size()) + " survivors\n";
      detail::emit(r.to_json(), text, config, out);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "bjorth: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "bjorth: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bjorth::cli

#endif  // BJORTH_CLI_HPP
