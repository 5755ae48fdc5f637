#include "latnet/line_net.hpp"

#include <cmath>
#include <stdexcept>

#include "latnet/specfun.hpp"

namespace latnet::line_net {

namespace {

constexpr double kLog2e = 1.4426950408889634;  // 1/ln 2

double log2_1p(double x) { return std::log1p(x) * kLog2e; }

void require_offset(double z) {
  if (!(std::fabs(z) < 1.0)) throw std::domain_error("line interference: require |z| < 1");
}

}  // namespace

double line_interference(double alpha, double z) {
  require_offset(z);
  return specfun::hurwitz_zeta(alpha, 1.0 - z) + specfun::hurwitz_zeta(alpha, 1.0 + z);
}

double line_interference_upper(double alpha, double z) {
  require_offset(z);
  if (!(alpha > 1.0)) throw std::domain_error("line interference: require alpha > 1");
  return std::pow(1.0 - z, -alpha) + std::pow(1.0 + z, -alpha) +
         (std::pow(1.5 - z, 1.0 - alpha) + std::pow(1.5 + z, 1.0 - alpha)) / (alpha - 1.0);
}

double line_interference_lower(double alpha, double z) {
  require_offset(z);
  if (!(alpha > 1.0)) throw std::domain_error("line interference: require alpha > 1");
  return std::pow(1.0 - z, -alpha) + std::pow(1.0 + z, -alpha) +
         (std::pow(2.0 - z, 1.0 - alpha) + std::pow(2.0 + z, 1.0 - alpha)) / (alpha - 1.0);
}

OffsetExpansion excess_coefficient_1d(double alpha) {
  if (!(alpha > 1.0)) throw std::domain_error("excess_coefficient_1d: require alpha > 1");
  OffsetExpansion e;
  e.base = 2.0 * specfun::riemann_zeta(alpha);
  e.c2 = alpha * alpha + alpha * (1.0 + std::pow(2.0 / 3.0, alpha + 1.0));
  e.c4 = std::pow(alpha, 4) / 12.0 + std::pow(alpha, 3) / 2.0 + alpha * alpha + alpha / 2.0;
  e.c2_lower = alpha * alpha + alpha;
  e.c2_approx = alpha * alpha + alpha + 0.5;
  return e;
}

double transport_capacity(double alpha, double z) {
  if (!(z > 0.0 && z < 1.0)) throw std::domain_error("transport_capacity: require 0 < z < 1");
  return z * log2_1p(std::pow(z, -alpha) / line_interference(alpha, z));
}

LinkOptimum optimal_link_distance(double alpha) {
  if (!(alpha > 1.0) || !(alpha <= 20.0)) {
    throw std::domain_error("optimal_link_distance: require alpha in (1, 20]");
  }
  const double inv_phi = 0.6180339887498949;
  double a = 0.01;
  double b = 0.9;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = transport_capacity(alpha, x1);
  double f2 = transport_capacity(alpha, x2);
  while (b - a > 1e-6) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = transport_capacity(alpha, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = transport_capacity(alpha, x1);
    }
  }
  const double z = 0.5 * (a + b);
  return {z, transport_capacity(alpha, z)};
}

double g_bracket(double alpha, int m, double b) {
  const double md = m;
  const double first = (std::pow(md - 1.0, alpha) + std::pow(md + 1.0, alpha)) /
                       std::pow(md * md - 1.0, alpha);
  const double second =
      (std::pow(b * md + 1.0, alpha - 1.0) + std::pow(b * md - 1.0, alpha - 1.0)) /
      (md * (alpha - 1.0) * std::pow(b * b * md * md - 1.0, alpha - 1.0));
  return first + second;
}

TdmaResult1D tdma_unidirectional(double alpha, int m) {
  if (m < 2) throw std::domain_error("tdma_unidirectional: require m >= 2");
  if (!(alpha > 1.0)) throw std::domain_error("tdma_unidirectional: require alpha > 1");
  TdmaResult1D r;
  r.scheme = TdmaScheme1D::unidirectional;
  r.m = m;
  const double im = std::pow(m, -alpha) * line_interference(alpha, 1.0 / m);
  r.interference.value = im;
  r.interference.kind = BoundKind::bracketed;
  r.interference.lo = g_bracket(alpha, m, 2.0);
  r.interference.hi = g_bracket(alpha, m, 1.5);
  r.lower_bound = r.interference.lo;
  r.upper_bound = r.interference.hi;
  r.rate = log2_1p(1.0 / im);
  r.throughput = r.rate / m;
  const double cex = excess_coefficient_1d(alpha).c2;
  r.approx_rate = log2_1p(std::pow(m, alpha + 2.0) /
                          (2.0 * specfun::riemann_zeta(alpha) * m * m + cex));
  return r;
}

int tdma_unidirectional_opt(double alpha) {
  int best_m = 2;
  double best_t = -1.0;
  for (int m = 2; m <= 64; ++m) {
    const double t = tdma_unidirectional(alpha, m).throughput;
    if (t > best_t) {
      best_t = t;
      best_m = m;
    }
  }
  return best_m;
}

std::vector<std::int64_t> balanced_interferer_set(int m, int k_max) {
  if (m < 2 || k_max < 1) {
    throw std::domain_error("balanced_interferer_set: require m >= 2 and k_max >= 1");
  }
  std::vector<std::int64_t> out;
  out.reserve(4 * static_cast<std::size_t>(k_max));
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const std::int64_t p = 2 * static_cast<std::int64_t>(m) * k;
    out.push_back(-p - 1);
    out.push_back(-p + m);
    out.push_back(p - m);
    out.push_back(p - 1);
  }
  return out;
}

double balanced_capacity_constant(double alpha) {
  return 1.0 / (2.0 * specfun::riemann_zeta(alpha));
}

TdmaResult1D tdma_balanced(double alpha, int m) {
  if (m < 2) throw std::domain_error("tdma_balanced: require m >= 2");
  if (!(alpha > 1.0)) throw std::domain_error("tdma_balanced: require alpha > 1");
  TdmaResult1D r;
  r.scheme = TdmaScheme1D::balanced;
  r.m = m;

  const double zeta = specfun::riemann_zeta(alpha);

  // Direct sum over K_m: per period k the distances are 2km+1, 2km-m (twice)
  // and 2km-1; the tail beyond k_max is bracketed per arithmetic progression.
  const int k_max = 4096;
  double sum = 0.0;
  for (int k = k_max; k >= 1; --k) {
    const double p = 2.0 * m * k;
    sum += std::pow(p + 1.0, -alpha) + 2.0 * std::pow(p - m, -alpha) +
           std::pow(p - 1.0, -alpha);
  }
  const double period = 2.0 * m;
  const double K = k_max + 1;
  double tail_lo = 0.0;
  double tail_hi = 0.0;
  for (double off : {1.0, -1.0, -static_cast<double>(m), -static_cast<double>(m)}) {
    const double first = period * K + off;
    const double integral = std::pow(first, 1.0 - alpha) / ((alpha - 1.0) * period);
    tail_lo += integral;
    tail_hi += integral + std::pow(first, -alpha);
  }
  // allowance for summation rounding, which exceeds the analytic tail width
  // at large alpha
  const double fp_slack = 1e-13 * std::max(1.0, sum);
  r.interference.kind = BoundKind::bracketed;
  r.interference.lo = sum + tail_lo - fp_slack;
  r.interference.hi = sum + tail_hi + fp_slack;
  r.interference.value = 0.5 * (r.interference.lo + r.interference.hi);

  if (m == 2) {
    r.closed_form = zeta * (1.0 + std::pow(2.0, -alpha) - 2.0 * std::pow(4.0, -alpha)) - 1.0;
    r.interference.value = *r.closed_form;
  } else if (m == 3) {
    r.closed_form = zeta * (1.0 + std::pow(3.0, -alpha) - std::pow(2.0, -alpha) -
                            std::pow(6.0, -alpha)) -
                    1.0;
    r.interference.value = *r.closed_form;
  }

  r.lower_bound = 2.0 * std::pow(m, -alpha) * zeta;
  r.upper_bound = std::pow(m, -alpha) * (2.0 + std::pow(2.0, 1.0 - alpha) / (alpha - 1.0)) +
                  std::pow(m + 1.0, -alpha) +
                  std::pow(2.0 / (3.0 * m + 2.0), alpha - 1.0) / (m * (alpha - 1.0));

  r.rate = log2_1p(1.0 / r.interference.value);
  r.throughput = r.rate / m;
  r.approx_rate = log2_1p(std::pow(m, alpha) * balanced_capacity_constant(alpha));
  return r;
}

BalancedOptimum tdma_balanced_opt(double alpha) {
  if (!(alpha > 1.0)) throw std::domain_error("tdma_balanced_opt: require alpha > 1");
  BalancedOptimum opt;
  const double a = -alpha * std::exp(-alpha);
  const double w = specfun::lambert_w0(a);
  const double c = balanced_capacity_constant(alpha);
  opt.m_real = std::pow(-(w + alpha) / (c * w), 1.0 / alpha);
  int best_m = 2;
  double best_t = -1.0;
  for (int m = 2; m <= 64; ++m) {
    const double t = log2_1p(std::pow(m, alpha) * c) / m;
    if (t > best_t) {
      best_t = t;
      best_m = m;
    }
  }
  opt.m_int = best_m;
  return opt;
}

}  // namespace latnet::line_net
