#include "latnet/specfun.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace latnet::specfun {

namespace {

struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

}  // namespace

double hurwitz_zeta(double alpha, double a) {
  if (!(alpha > 1.0) || !(a > 0.0)) {
    throw std::domain_error("hurwitz_zeta: require alpha > 1 and a > 0");
  }
  // Direct sum of the first n terms, then the Euler-Maclaurin tail
  //   int_n^inf f + f(n)/2 - f'(n)/12 + f'''(n)/720,  f(x) = (x+a)^{-alpha}.
  // The first omitted term is O(alpha^5 (n+a)^{-alpha-5}), far below 1e-12.
  const int n = 10000;
  KahanSum acc;
  for (int k = n - 1; k >= 0; --k) {
    acc.add(std::pow(static_cast<double>(k) + a, -alpha));
  }
  const double m = static_cast<double>(n) + a;
  const double inv = 1.0 / m;
  const double f = std::pow(m, -alpha);
  double tail = f * m / (alpha - 1.0);
  tail += 0.5 * f;
  tail += alpha * f * inv / 12.0;
  tail -= alpha * (alpha + 1.0) * (alpha + 2.0) * f * inv * inv * inv / 720.0;
  return acc.s + tail;
}

double riemann_zeta(double alpha) { return hurwitz_zeta(alpha, 1.0); }

double zeta_bound(ZetaBoundKind kind, double alpha, double z) {
  if (!(alpha > 1.0)) throw std::domain_error("zeta_bound: require alpha > 1");
  if (!(std::fabs(z) < 1.0)) throw std::domain_error("zeta_bound: require |z| < 1");
  switch (kind) {
    case ZetaBoundKind::hurwitz_upper:
      return std::pow(1.0 - z, -alpha) + std::pow(1.5 - z, 1.0 - alpha) / (alpha - 1.0);
    case ZetaBoundKind::hurwitz_lower:
      return std::pow(1.0 - z, -alpha) + std::pow(2.0 - z, 1.0 - alpha) / (alpha - 1.0);
    case ZetaBoundKind::std_upper_rational: {
      if (z != 0.0) throw std::domain_error("zeta_bound: standard kind requires z = 0");
      const double p = std::pow(2.0, -alpha);
      return (alpha - 1.0 + p) / (alpha - 1.0 - (alpha - 1.0) * p);
    }
    case ZetaBoundKind::std_lower_rational: {
      if (z != 0.0) throw std::domain_error("zeta_bound: standard kind requires z = 0");
      const double s6 = std::pow(6.0, alpha);
      return s6 / (s6 - std::pow(3.0, alpha) - std::pow(2.0, alpha) - 1.0);
    }
    case ZetaBoundKind::std_lower_loose: {
      if (z != 0.0) throw std::domain_error("zeta_bound: standard kind requires z = 0");
      const double s2 = std::pow(2.0, alpha);
      return (s2 - 1.0) / (s2 - 2.0);
    }
  }
  throw std::domain_error("zeta_bound: unknown kind");
}

double dirichlet_beta(double x) {
  if (!(x > 0.0)) throw std::domain_error("dirichlet_beta: require x > 0");
  // Partial sums of the alternating series, then repeated pairwise averaging.
  // The terms (2i+1)^{-x} are totally monotone in i, so at every averaging
  // level consecutive entries still bracket the limit; the bracket width
  // shrinks geometrically.
  constexpr int kTerms = 96;
  std::array<double, kTerms> t{};
  {
    KahanSum acc;
    double sign = 1.0;
    for (int i = 0; i < kTerms; ++i) {
      acc.add(sign * std::pow(2.0 * i + 1.0, -x));
      t[i] = acc.s;
      sign = -sign;
    }
  }
  double best = 0.5 * (t[kTerms - 2] + t[kTerms - 1]);
  double best_width = std::fabs(t[kTerms - 1] - t[kTerms - 2]);
  for (int len = kTerms; len >= 2; --len) {
    for (int i = 0; i + 1 < len; ++i) t[i] = 0.5 * (t[i] + t[i + 1]);
    const int last = len - 2;  // averaged row has len-1 entries
    if (last >= 1) {
      const double width = std::fabs(t[last] - t[last - 1]);
      if (width < best_width) {
        best_width = width;
        best = 0.5 * (t[last] + t[last - 1]);
      }
      if (best_width < 1e-13) break;
    }
  }
  return best;
}

double lambert_w0(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_w0: NaN input");
  const double branch_point = -std::exp(-1.0);
  if (x < branch_point * (1.0 + 1e-14) - 1e-300) {
    throw std::domain_error("lambert_w0: require x >= -1/e");
  }
  if (x < branch_point) x = branch_point;
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.3235) {
    // Series around the branch point in p = sqrt(2(e x + 1)).
    const double p2 = std::max(0.0, 2.0 * (std::exp(1.0) * x + 1.0));
    const double p = std::sqrt(p2);
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  } else if (x < 2.0) {
    w = x / (1.0 + x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int it = 0; it < 100; ++it) {
    const double e = std::exp(w);
    const double f = w * e - x;
    const double denom = e * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double dw = f / denom;
    w -= dw;
    if (std::fabs(dw) <= 1e-14 * (1.0 + std::fabs(w))) break;
  }
  return w;
}

}  // namespace latnet::specfun
