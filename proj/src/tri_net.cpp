#include "latnet/tri_net.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latnet::tri_net {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt3 = 1.7320508075688772;

void require_alpha(double alpha) {
  if (!(alpha > 2.0)) throw std::domain_error("tri-net: require alpha > 2");
}

// Balanced-rows phases: active lattice rows are multiples of m; row j >= 0
// uses phase j(1 - m/2), rows below are the 180-degree mirror about the
// receiver at (1, 0). Each active row carries the period-2m pair
// {2mk + c_j, 2mk + c_j + m + 1}.
double balanced_phase(int m, int j) {
  if (j >= 0) return j * (1.0 - 0.5 * m);
  return 1.0 - m - balanced_phase(m, -j);
}

}  // namespace

double tri_lower(double alpha) {
  require_alpha(alpha);
  const double a1 = alpha - 1.0;
  const double num = 2.0 * std::pow(3.0, alpha) + 3.0 * std::pow(2.0, alpha) + 6.0;
  const double den = std::pow(6.0, a1) - std::pow(3.0, a1) - std::pow(2.0, a1) - 1.0;
  return 6.0 + std::pow(4.0 / (2.0 + kSqrt3), alpha) * num / den;
}

double tri_upper(double alpha, UpperVariant variant) {
  require_alpha(alpha);
  const double f = 4.0 * kPi / kSqrt3;
  if (variant == UpperVariant::near6) {
    return 6.0 + f * std::pow(2.0 / kSqrt3, 2.0 - alpha) / (alpha - 2.0);
  }
  const double near18 =
      6.0 * (1.0 + std::pow(2.0, -alpha) + std::pow(3.0, -alpha / 2.0));
  return near18 + f * std::pow(13.0 / 3.0, 1.0 - alpha / 2.0) / (alpha - 2.0);
}

double near6_sum(double alpha, double r) {
  if (!(std::fabs(r) < 1.0)) throw std::domain_error("near6_sum: require |r| < 1");
  const double h = alpha / 2.0;
  return std::pow(1.0 - r, -alpha) + std::pow(1.0 + r, -alpha) +
         2.0 * std::pow(1.0 - r * (1.0 - r), -h) + 2.0 * std::pow(1.0 + r * (1.0 + r), -h);
}

TriOffsetResult tri_offset(double alpha, double r, Vec2 direction,
                           double truncation_radius) {
  require_alpha(alpha);
  if (!(r >= 0.0 && r < 1.0)) throw std::domain_error("tri_offset: require 0 <= r < 1");
  const double dn = direction.norm();
  if (!(dn > 0.0)) throw std::domain_error("tri_offset: zero direction");
  if (truncation_radius <= 0.0) truncation_radius = 300.0;

  InterferenceQuery q;
  q.lattice = Lattice::triangular();
  q.loss.alpha = alpha;
  q.offset = (r / dn) * direction;

  TriOffsetResult out;
  out.exact = interference_oracle(q, truncation_radius);
  out.quad_bound = tri_lower(alpha) + 1.5 * alpha * alpha * r * r;
  return out;
}

std::vector<Vec2> tri_balanced_interferers(int m, double R) {
  if (m < 2) throw std::domain_error("tri_balanced_interferers: require m >= 2");
  std::vector<Vec2> pts;
  const double row_h = 0.5 * kSqrt3 * m;
  const int jmax = static_cast<int>(R / row_h) + 2;
  const double period = 2.0 * m;
  for (int j = -jmax; j <= jmax; ++j) {
    const double y = row_h * j;
    const double c = balanced_phase(m, j);
    const int kmax = static_cast<int>((R + std::fabs(c) + 2.0 * m) / period) + 2;
    for (int k = -kmax; k <= kmax; ++k) {
      for (double off : {0.0, m + 1.0}) {
        const Vec2 p{period * k + c + off, y};
        if (j == 0 && k == 0 && off == 0.0) continue;  // serving transmitter
        if (p.norm() <= R) pts.push_back(p);
      }
    }
  }
  return pts;
}

double tri_balanced_next_distance(int m) {
  return std::hypot(0.5 * m + 1.0, 0.5 * kSqrt3 * m);
}

TriTdmaResult tri_tdma(double alpha, TriTdmaScheme scheme) {
  require_alpha(alpha);
  const int m = scheme.m;
  if (m < 2) throw std::domain_error("tri_tdma: require m >= 2");

  TriTdmaResult r;
  r.kind = scheme.kind;
  r.m = m;
  const Vec2 receiver{1.0, 0.0};
  const double lattice_density = 2.0 / kSqrt3;

  if (scheme.kind == TriTdmaKind::balanced_rows) {
    const double R = std::max(400.0, 40.0 * m);
    const auto pts = tri_balanced_interferers(m, R);

    std::vector<double> dists;
    dists.reserve(pts.size());
    for (const Vec2& p : pts) dists.push_back(distance(p, receiver));
    std::sort(dists.begin(), dists.end());
    r.nearest6.assign(dists.begin(), dists.begin() + 6);
    r.nearest_distance = dists[0];
    for (int i = 0; i < 4; ++i) {
      if (std::fabs(dists[i] - m) > 1e-9) {
        throw construction_error("tri_tdma: balanced rows miss the four-at-m placement");
      }
    }

    // pairwise separation from a local window
    double min_pair = 1e300;
    const double period = 2.0 * m;
    for (int j = -1; j <= 1; ++j) {
      const double c = balanced_phase(m, j);
      for (double off : {0.0, m + 1.0}) {
        const Vec2 a{c + off, 0.5 * kSqrt3 * m * j};
        for (int dj = -1; dj <= 1; ++dj) {
          const double c2 = balanced_phase(m, j + dj);
          for (int dk = -2; dk <= 2; ++dk) {
            for (double off2 : {0.0, m + 1.0}) {
              const Vec2 b{period * dk + c2 + off2, 0.5 * kSqrt3 * m * (j + dj)};
              const double d = distance(a, b);
              if (d > 1e-9) min_pair = std::min(min_pair, d);
            }
          }
        }
      }
    }

    // per-transmitter area: row band height (sqrt3 m / 2) times in-row width m
    const double region_volume = 0.5 * kSqrt3 * m * m;
    const double covering = std::hypot(0.5 * (m + 1.0), 0.25 * kSqrt3 * m);
    r.interference = pointset_interference(pts, R, receiver, alpha, region_volume,
                                           0.5 * min_pair, covering);
    r.slots = m * m;
    r.density = lattice_density / (m * m);
    r.generator = {period, 0.0, balanced_phase(m, 1), 0.5 * kSqrt3 * m};
  } else {
    Lattice sub = scheme.kind == TriTdmaKind::rhombus
                      ? Lattice::custom(m, -0.5 * (m % 2), 0.0, 0.5 * kSqrt3 * m)
                      : Lattice::custom(m + 1.0, -0.5 * m, 0.0, 0.5 * kSqrt3 * m);
    r.generator = {sub.column(0).x, sub.column(0).y, sub.column(1).x, sub.column(1).y};
    r.slots = scheme.kind == TriTdmaKind::rhombus ? m * m : m * (m + 1);
    r.density = sub.density();

    InterferenceQuery q;
    q.lattice = sub;
    q.loss.alpha = alpha;
    q.offset = receiver;
    r.interference = interference_oracle(q, std::max(400.0, 40.0 * static_cast<double>(m)));

    std::vector<double> dists;
    for (const auto& p : sub.enumerate(4.0 * m + 4.0, true)) {
      dists.push_back(distance(p.pos, receiver));
    }
    std::sort(dists.begin(), dists.end());
    r.nearest6.assign(dists.begin(), dists.begin() + 6);
    r.nearest_distance = dists[0];
    if (scheme.kind == TriTdmaKind::rhombus && m % 2 == 0 &&
        std::fabs(r.nearest_distance - (m - 1.0)) > 1e-9) {
      throw construction_error("tri_tdma: rhombus nearest interferer is not at m-1");
    }
  }

  r.normalized = r.interference.value * std::pow(r.density, -alpha / 2.0);
  return r;
}

}  // namespace latnet::tri_net
