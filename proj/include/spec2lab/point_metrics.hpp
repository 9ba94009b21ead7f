#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "spec2lab/core.hpp"

namespace spec2lab {

// sup over a of dist(x, b); +inf if b is empty while a is not.
inline double directed_hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Complex& x : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

inline double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

// True when `a` and `b` can be matched one-to-one with per-point tolerance
// tol * max(1, |point|).  Greedy nearest matching; adequate because the
// tolerance is far below typical point separation.
inline bool multisets_match(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Complex& x : a) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(x - b[i]);
      if (d < best_dist) {
        best_dist = d;
        best = int(i);
      }
    }
    if (best < 0 || best_dist > tol * std::max(1.0, std::abs(x))) return false;
    used[best] = true;
  }
  return true;
}

inline bool multiset_conjugate_symmetric(const std::vector<Complex>& pts, double tol = 1e-10) {
  std::vector<Complex> conj(pts.size());
  std::transform(pts.begin(), pts.end(), conj.begin(), [](Complex z) { return std::conj(z); });
  return multisets_match(pts, conj, tol);
}

inline bool multiset_negation_symmetric(const std::vector<Complex>& pts, double tol = 1e-10) {
  std::vector<Complex> neg(pts.size());
  std::transform(pts.begin(), pts.end(), neg.begin(), [](Complex z) { return -z; });
  return multisets_match(pts, neg, tol);
}

}  // namespace spec2lab
