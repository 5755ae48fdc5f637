#include "latnet/square_net.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latnet/specfun.hpp"

#include "gauss_rule.hpp"

namespace latnet::square_net {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_alpha(double alpha) {
  if (!(alpha > 2.0)) throw std::domain_error("square-net: require alpha > 2");
}

double sharp_c() {
  const double s2 = std::sqrt(2.0);
  return 0.5 * s2 + 0.25 * (1.0 - std::log(s2 - 1.0));
}

// column pattern of the balanced scheme: period three in the box-column index
int wrap3(int i) { return ((i % 3) + 3) % 3; }

Vec2 balanced_point(int m, int col, int row) {
  static const double a_off[3] = {-1.0, 0.0, 0.0};
  static const double deltas[3] = {0.0, 1.0, -1.0};
  const int t = wrap3(col);
  return {static_cast<double>(m) * col + a_off[t],
          static_cast<double>(m) * row + deltas[t]};
}

}  // namespace

double square_exact(double alpha) {
  require_alpha(alpha);
  return 4.0 * specfun::riemann_zeta(alpha / 2.0) * specfun::dirichlet_beta(alpha / 2.0);
}

double square_lower(double alpha, LowerVariant variant) {
  require_alpha(alpha);
  const double base = 4.0 * (1.0 + std::pow(2.0, -alpha / 2.0));
  switch (variant) {
    case LowerVariant::simple_c: {
      const double c = 0.5 * (1.0 + std::sqrt(2.0));
      return base + 8.0 * std::pow(c, -alpha) * (specfun::riemann_zeta(alpha - 1.0) - 1.0);
    }
    case LowerVariant::sharp_c:
      return base +
             8.0 * std::pow(sharp_c(), -alpha) * (specfun::riemann_zeta(alpha - 1.0) - 1.0);
    case LowerVariant::closed_form: {
      const double a1 = alpha - 1.0;
      const double num = std::pow(3.0, a1) + std::pow(2.0, a1) + 1.0;
      const double den = std::pow(6.0, a1) - std::pow(3.0, a1) - std::pow(2.0, a1) - 1.0;
      return base + 8.0 * std::pow(sharp_c(), -alpha) * num / den;
    }
  }
  throw std::domain_error("square_lower: unknown variant");
}

double rectangle_complement_integral(double alpha) {
  require_alpha(alpha);
  // integral over R^2 \ [-3/2,3/2]^2 of ||x||^{-alpha}; exact at alpha in {3,4,5}
  if (std::fabs(alpha - 3.0) < 1e-12) return 8.0 * std::sqrt(2.0) / 3.0;
  if (std::fabs(alpha - 4.0) < 1e-12) return 2.0 * (2.0 + kPi) / 9.0;
  if (std::fabs(alpha - 5.0) < 1e-12) return 80.0 * std::sqrt(2.0) / 243.0;
  // polar reduction: 4 a^{2-alpha}/(alpha-2) * int_{-pi/4}^{pi/4} cos^{alpha-2},
  // Gauss-Legendre on two panels of the smooth integrand
  const double a = 1.5;
  static const detail::GaussRule rule = detail::make_gauss_rule(48);
  double integral = 0.0;
  for (int panel = 0; panel < 2; ++panel) {
    const double lo = -kPi / 4.0 + panel * kPi / 4.0;
    const double len = kPi / 4.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      integral += len * rule.w[i] * std::pow(std::cos(lo + len * rule.x[i]), alpha - 2.0);
    }
  }
  return 4.0 * std::pow(a, 2.0 - alpha) / (alpha - 2.0) * integral;
}

double square_upper(double alpha, UpperVariant variant) {
  require_alpha(alpha);
  const double base = 4.0 * (1.0 + std::pow(2.0, -alpha / 2.0));
  switch (variant) {
    case UpperVariant::rectangle:
      return base + rectangle_complement_integral(alpha);
    case UpperVariant::radial_3_2:
      return base + 2.0 * kPi * std::pow(1.5, 2.0 - alpha) / (alpha - 2.0);
    case UpperVariant::radial_3_sqrt2: {
      const double near20 = 4.0 * (1.0 + std::pow(2.0, -alpha / 2.0) + std::pow(2.0, -alpha) +
                                   2.0 * std::pow(5.0, -alpha / 2.0));
      return near20 +
             2.0 * kPi * std::pow(3.0 / std::sqrt(2.0), 2.0 - alpha) / (alpha - 2.0);
    }
  }
  throw std::domain_error("square_upper: unknown variant");
}

double near8_sum(double alpha, double r, Direction dir) {
  if (!(std::fabs(r) < 1.0)) throw std::domain_error("near8_sum: require |r| < 1");
  const double h = alpha / 2.0;
  if (dir == Direction::axial) {
    return std::pow(1.0 - r, -alpha) + std::pow(1.0 + r, -alpha) +
           2.0 * std::pow(2.0 - r * (2.0 - r), -h) +
           2.0 * std::pow(2.0 + r * (2.0 + r), -h) + 2.0 * std::pow(1.0 + r * r, -h);
  }
  const double s2 = std::sqrt(2.0);
  return std::pow(s2 - r, -alpha) + std::pow(s2 + r, -alpha) +
         2.0 * std::pow(1.0 + r * (r - s2), -h) + 2.0 * std::pow(1.0 + r * (s2 + r), -h) +
         2.0 * std::pow(2.0 + r * r, -h);
}

SquareOffsetExpansion square_offset_expansion(double alpha, Direction dir) {
  require_alpha(alpha);
  SquareOffsetExpansion e;
  e.direction = dir;
  e.near8_base = 4.0 * (1.0 + std::pow(2.0, -alpha / 2.0));
  e.c8 = alpha * alpha * (1.0 + std::pow(2.0, -alpha / 2.0 - 1.0));
  e.c8_lower = alpha * alpha + 1.0;
  if (std::fabs(alpha - 3.0) < 1e-12) {
    e.c_ex_full = 9.0 * (1.0 + std::pow(2.0, -2.5)) + 20.0 * std::sqrt(2.0) / 27.0 + 32.0 / 27.0;
  } else if (std::fabs(alpha - 4.0) < 1e-12) {
    e.c_ex_full = 18.0 + 4.0 * kPi / 9.0 + 32.0 / 81.0;
  }
  return e;
}

SquareTdmaResult square_tdma_simple(double alpha, int m) {
  require_alpha(alpha);
  if (m < 2) throw std::domain_error("square_tdma_simple: require m >= 2");
  SquareTdmaResult r;
  r.m = m;
  r.density = 1.0 / (static_cast<double>(m) * m);
  r.r_b = 1.5 * m - 1.0;

  // I_m = m^{-alpha} I(1/m) on the unit lattice, axial offset
  InterferenceQuery q;
  q.lattice = Lattice::square();
  q.loss.alpha = alpha;
  q.offset = {0.0, 1.0 / m};
  BoundedValue unit = interference_oracle(q, 250.0);
  const double scale = std::pow(static_cast<double>(m), -alpha);
  r.interference.kind = BoundKind::bracketed;
  r.interference.lo = scale * unit.lo;
  r.interference.hi = scale * unit.hi;
  r.interference.value = scale * unit.value;

  // receiver-to-interferer distances on (mZ)^2, receiver (0,1)
  const Vec2 z{0.0, 1.0};
  std::vector<double> dists;
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) {
      if (i == 0 && j == 0) continue;
      dists.push_back(distance(Vec2{static_cast<double>(m) * i, static_cast<double>(m) * j}, z));
    }
  }
  std::sort(dists.begin(), dists.end());
  r.nearest8.assign(dists.begin(), dists.begin() + 8);

  if (m >= 3) {
    // the stated nearest-eight distances must agree with brute force
    std::vector<double> formula = {m - 1.0,
                                   std::hypot(1.0, static_cast<double>(m)),
                                   std::hypot(1.0, static_cast<double>(m)),
                                   std::hypot(m - 1.0, static_cast<double>(m)),
                                   std::hypot(m - 1.0, static_cast<double>(m)),
                                   m + 1.0,
                                   std::hypot(m + 1.0, static_cast<double>(m)),
                                   std::hypot(m + 1.0, static_cast<double>(m))};
    std::sort(formula.begin(), formula.end());
    for (int i = 0; i < 8; ++i) {
      if (std::fabs(formula[static_cast<std::size_t>(i)] -
                    r.nearest8[static_cast<std::size_t>(i)]) > 1e-9) {
        throw construction_error("square_tdma_simple: nearest-eight distance mismatch");
      }
    }
  }

  double near_sum = 0.0;
  for (double d : r.nearest8) near_sum += std::pow(d, -alpha);
  r.radial_bound =
      near_sum + 2.0 * kPi / (static_cast<double>(m) * m) * std::pow(r.r_b, 2.0 - alpha) /
                     (alpha - 2.0);
  return r;
}

std::vector<Vec2> square_balanced_interferers(int m, double R) {
  if (m < 2) throw std::domain_error("square_balanced_interferers: require m >= 2");
  std::vector<Vec2> pts;
  const int cmax = static_cast<int>(R / m) + 3;
  for (int col = -cmax; col <= cmax; ++col) {
    for (int row = -cmax; row <= cmax; ++row) {
      const Vec2 p = balanced_point(m, col, row);
      if (col == 0 && row == 0) continue;  // serving transmitter at (-1, 0)
      if (p.norm() <= R) pts.push_back(p);
    }
  }
  return pts;
}

double square_shear_best_min_distance(int m) {
  double best = 0.0;
  const Vec2 receivers[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  for (int transpose = 0; transpose < 2; ++transpose) {
    for (int s = 0; s < m; ++s) {
      for (const Vec2& e : receivers) {
        double mind = 1e300;
        for (int i = -4; i <= 4; ++i) {
          for (int j = -4; j <= 4; ++j) {
            if (i == 0 && j == 0) continue;
            Vec2 t = transpose == 0
                         ? Vec2{static_cast<double>(m) * i + s * j, static_cast<double>(m) * j}
                         : Vec2{static_cast<double>(m) * i,
                                static_cast<double>(s) * i + static_cast<double>(m) * j};
            mind = std::min(mind, distance(t, e));
          }
        }
        best = std::max(best, mind);
      }
    }
  }
  return best;
}

SquareBalancedResult square_tdma_balanced(double alpha, int m) {
  require_alpha(alpha);
  if (m < 2) throw std::domain_error("square_tdma_balanced: require m >= 2");
  SquareBalancedResult r;
  r.m = m;
  r.density = 1.0 / (static_cast<double>(m) * m);
  r.r_b = 1.5 * m;

  const double R = std::max(400.0, 40.0 * m);
  const auto pts = square_balanced_interferers(m, R);

  // nearest-eight check against the constructed pattern
  std::vector<double> dists;
  dists.reserve(pts.size());
  for (const Vec2& p : pts) dists.push_back(p.norm());
  std::sort(dists.begin(), dists.end());
  r.nearest8.assign(dists.begin(), dists.begin() + 8);
  r.nearest4_distance = r.nearest8[3];
  const double expected = std::hypot(static_cast<double>(m), 1.0);
  for (int i = 0; i < 4; ++i) {
    if (std::fabs(r.nearest8[i] - expected) > 1e-9) {
      throw construction_error(
          "square_tdma_balanced: nearest-four distance is not sqrt(m^2+1)");
    }
  }

  // packing radius from a local window of the pattern
  double min_pair = 1e300;
  for (int col = -2; col <= 2; ++col) {
    for (int row = -2; row <= 2; ++row) {
      const Vec2 a = balanced_point(m, col, row);
      for (int dc = -1; dc <= 1; ++dc) {
        for (int dr = -1; dr <= 1; ++dr) {
          if (dc == 0 && dr == 0) continue;
          min_pair = std::min(min_pair, distance(a, balanced_point(m, col + dc, row + dr)));
        }
      }
    }
  }
  const double region_volume = static_cast<double>(m) * (m + 0.5);
  const double covering = std::hypot((m + 1.0) / 2.0, m / 2.0);
  r.interference =
      pointset_interference(pts, R, Vec2{0.0, 0.0}, alpha, region_volume, 0.5 * min_pair, covering);

  double near_sum = 0.0;
  for (double d : r.nearest8) near_sum += std::pow(d, -alpha);
  r.radial_bound = near_sum + 2.0 * kPi / (static_cast<double>(m) * m) *
                                  std::pow(r.r_b, 2.0 - alpha) / (alpha - 2.0);

  // mean nearest-six transmitter-to-transmitter distance (sphere packing check)
  double mean6 = 0.0;
  for (int type = 0; type < 3; ++type) {
    const Vec2 a = balanced_point(m, type, 0);
    std::vector<double> nd;
    for (int dc = -2; dc <= 2; ++dc) {
      for (int dr = -2; dr <= 2; ++dr) {
        if (dc == 0 && dr == 0) continue;
        nd.push_back(distance(a, balanced_point(m, type + dc, dr)));
      }
    }
    std::sort(nd.begin(), nd.end());
    double s = 0.0;
    for (int i = 0; i < 6; ++i) s += nd[i];
    mean6 += s / 6.0;
  }
  r.mean_nearest6 = mean6 / 3.0;
  return r;
}

}  // namespace latnet::square_net
