#pragma once

#include <cmath>
#include <vector>

namespace latnet::detail {

// Gauss-Legendre nodes/weights on [0,1], computed by Newton iteration on the
// Legendre recurrence. Weights sum to 1.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

inline GaussRule make_gauss_rule(int n) {
  constexpr double pi = 3.141592653589793238462643383279502884;
  GaussRule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-15) break;
    }
    double p0 = 1.0;
    double pc = t;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * t * pc - (k - 1.0) * p0) / k;
      p0 = pc;
      pc = pk;
    }
    const double dp = n * (t * pc - p0) / (t * t - 1.0);
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    r.x[lo] = 0.5 * (1.0 - t);
    r.x[hi] = 0.5 * (1.0 + t);
    r.w[lo] = 0.5 * w;
    r.w[hi] = 0.5 * w;
  }
  return r;
}

}  // namespace latnet::detail
