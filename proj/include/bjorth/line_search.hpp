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

#ifndef BJORTH_LINE_SEARCH_HPP
#define BJORTH_LINE_SEARCH_HPP

#include <cmath>
#include <utility>

namespace bjorth {

struct ScalarMin {
  double x = 0.0;
  double value = 0.0;
  double a = 0.0;  // final bracket
  double b = 0.0;
};

/// Golden-section minimization of a unimodal f on [a, b], stopping once the
/// bracket is narrower than `tol`. Returns the best point evaluated.
template <class F>
ScalarMin golden_section_minimize(F&& f, double a, double b, double tol, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double u = b - inv_phi * (b - a);
  double v = a + inv_phi * (b - a);
  double fu = f(u);
  double fv = f(v);
  double best_x = fu <= fv ? u : v;
  double best_f = fu <= fv ? fu : fv;
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fu <= fv) {
      b = v;
      v = u;
      fv = fu;
      u = b - inv_phi * (b - a);
      fu = f(u);
      if (fu < best_f) best_f = fu, best_x = u;
    } else {
      a = u;
      u = v;
      fu = fv;
      v = a + inv_phi * (b - a);
      fv = f(v);
      if (fv < best_f) best_f = fv, best_x = v;
    }
  }
  return {best_x, best_f, a, b};
}

/// Shrinks [lo, hi] around the point where `pred` switches from false to
/// true, assuming pred(lo) == false and pred(hi) == true. Returns the final
/// bracket.
template <class P>
std::pair<double, double> bisect(P&& pred, double lo, double hi, double tol, int max_iter = 200) {
  for (int it = 0; it < max_iter && std::abs(hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

}  // namespace bjorth

#endif  // BJORTH_LINE_SEARCH_HPP
