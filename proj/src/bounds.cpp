#include "latnet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

#include "gauss_rule.hpp"

namespace latnet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

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

int thread_budget() {
  static const int budget = [] {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
    if (const char* env = std::getenv("LATNET_THREADS")) {
      const long parsed = std::strtol(env, nullptr, 10);
      if (parsed >= 1) n = static_cast<int>(std::min<long>(parsed, 64));
    }
    return n;
  }();
  return budget;
}

// Fixed-chunk Kahan reduction in index order; the result is bit-identical
// regardless of how many threads evaluate the chunks.
double chunked_sum(const std::vector<double>& terms) {
  constexpr std::size_t kChunk = 8192;
  const std::size_t n = terms.size();
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t ci = begin; ci < end; ++ci) {
      KahanSum acc;
      const std::size_t lo = ci * kChunk;
      const std::size_t hi = std::min(n, lo + kChunk);
      for (std::size_t i = lo; i < hi; ++i) acc.add(terms[i]);
      partial[ci] = acc.s;
    }
  };
  const int nt = thread_budget();
  if (nt <= 1 || chunks < 4) {
    run(0, chunks);
  } else {
    std::vector<std::thread> pool;
    const std::size_t per = (chunks + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      const std::size_t lo = std::min(chunks, static_cast<std::size_t>(t) * per);
      const std::size_t hi = std::min(chunks, lo + per);
      if (lo < hi) pool.emplace_back(run, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  KahanSum total;
  for (double p : partial) total.add(p);
  return total.s;
}

void validate_query(const Lattice& lat, double alpha, Vec2 z) {
  if (std::isnan(alpha) || std::isnan(z.x) || std::isnan(z.y)) {
    throw std::domain_error("interference: NaN input");
  }
  if (!(alpha > lat.dimension())) {
    throw std::domain_error("interference: require alpha > lattice dimension");
  }
  const double zn = z.norm();
  if (zn > 0.0 && !(zn < lat.min_column_norm())) {
    throw std::domain_error("interference: require ||z|| < min generator column norm");
  }
  if (lat.dimension() == 1 && z.y != 0.0) {
    throw std::domain_error("interference: 1-D offset must lie on the axis");
  }
}

// Two-sided tail bracket for the sum over lattice points with ||x|| > R.
// Upper: Jensen over cells outside b(R - c_cov). Lower: every point outside
// b(R + c_cov) owns a disjoint cell within c_cov of it.
std::pair<double, double> lattice_tail_bracket_2d(double alpha, double V, double c_cov,
                                                  double zn, double R) {
  const double a2 = alpha - 2.0;
  const double up_base = R - c_cov - zn;
  if (!(up_base > 0.0)) throw std::domain_error("tail bracket: radius too small");
  const double upper = (2.0 * kPi / V) * std::pow(up_base, -a2) / a2;
  const double s = c_cov + zn;
  const double u1 = R + c_cov + s;
  const double lower = (2.0 * kPi / V) * (std::pow(u1, -a2) / a2 -
                                          s * std::pow(u1, 1.0 - alpha) / (alpha - 1.0));
  return {std::max(0.0, lower), upper};
}

// 1-D tails for integer-spaced points beyond index K (per side): integral
// test below, midpoint/convexity above.
std::pair<double, double> line_side_tail(double alpha, double first, double shift) {
  // sum_{k>=0} (first + k - shift)^{-alpha}, unit spacing
  const double lo = std::pow(first - shift, 1.0 - alpha) / (alpha - 1.0);
  const double hi = std::pow(first - 0.5 - shift, 1.0 - alpha) / (alpha - 1.0);
  return {lo, hi};
}

using detail::GaussRule;

const GaussRule& rule16() {
  static const GaussRule r = detail::make_gauss_rule(16);
  return r;
}
const GaussRule& rule32() {
  static const GaussRule r = detail::make_gauss_rule(32);
  return r;
}

double integrate_square(const GaussRule& g, Vec2 center, double half,
                        const std::function<double(Vec2)>& f) {
  double sum = 0.0;
  const double side = 2.0 * half;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double px = center.x - half + side * g.x[i];
    double row = 0.0;
    for (std::size_t j = 0; j < g.x.size(); ++j) {
      row += g.w[j] * f({px, center.y - half + side * g.x[j]});
    }
    sum += g.w[i] * row;
  }
  return sum * side * side;
}

double integrate_triangle(const GaussRule& g, Vec2 a, Vec2 b, Vec2 c,
                          const std::function<double(Vec2)>& f) {
  // Duffy map of the unit square onto triangle abc
  const double area2 = std::fabs(cross(b - a, c - a));
  double sum = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double u = g.x[i];
    double row = 0.0;
    for (std::size_t j = 0; j < g.x.size(); ++j) {
      const double v = g.x[j];
      const Vec2 p = a + u * ((b - a) + v * (c - b));
      row += g.w[j] * f(p);
    }
    sum += g.w[i] * u * row;
  }
  return sum * area2;
}

double integrate_polygon(const GaussRule& g, const Polygon& poly,
                         const std::function<double(Vec2)>& f) {
  Vec2 centroid{0.0, 0.0};
  for (const Vec2& v : poly) centroid = centroid + v;
  centroid = (1.0 / static_cast<double>(poly.size())) * centroid;
  double sum = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    sum += integrate_triangle(g, centroid, poly[i], poly[(i + 1) % poly.size()], f);
  }
  return sum;
}

}  // namespace

double radial_tail_integral(double alpha, double cell_volume, double b) {
  if (!(alpha > 2.0) || !(b > 0.0)) {
    throw std::domain_error("radial_tail_integral: require alpha > 2 and b > 0");
  }
  return (2.0 * kPi / cell_volume) * std::pow(b, 2.0 - alpha) / (alpha - 2.0);
}

double poisson_mean_interference_outside(double alpha, double intensity, double b) {
  if (!(alpha > 2.0) || !(b > 0.0) || !(intensity > 0.0)) {
    throw std::domain_error("poisson_mean_interference_outside: bad arguments");
  }
  return intensity * 2.0 * kPi * std::pow(b, 2.0 - alpha) / (alpha - 2.0);
}

BoundedValue interference_oracle(const InterferenceQuery& q, double truncation_radius,
                                 double buffer_factor) {
  const Lattice& lat = q.lattice;
  const double alpha = q.loss.alpha;
  const Vec2 z = q.offset;
  validate_query(lat, alpha, z);
  const double zn = z.norm();
  if (!(truncation_radius >= 10.0 * std::max(1.0, zn))) {
    throw std::domain_error("interference_oracle: require R >= 10 max(1, ||z||)");
  }
  if (buffer_factor < 1.0) buffer_factor = 1.0;
  const double R = truncation_radius;
  const double Rb = buffer_factor * R;

  const auto pts = lat.enumerate(Rb, true);
  std::vector<double> main_terms;
  std::vector<double> buffer_terms;
  main_terms.reserve(pts.size());
  for (const auto& p : pts) {
    const double term = std::pow(distance(p.pos, z), -alpha);
    if (p.norm <= R) {
      main_terms.push_back(term);
    } else if (p.norm <= Rb) {
      buffer_terms.push_back(term);
    }
  }
  const double main_sum = chunked_sum(main_terms);
  const double buf_sum = chunked_sum(buffer_terms);

  double tail_lo = 0.0;
  double tail_hi = 0.0;
  if (lat.dimension() == 2) {
    std::tie(tail_lo, tail_hi) =
        lattice_tail_bracket_2d(alpha, lat.cell_volume(), lat.covering_radius(), zn, Rb);
  } else {
    const double g = lat.cell_volume();
    const double tol = 1e-9 * std::max(1.0, Rb);
    const double first = (std::floor((Rb + tol) / g) + 1.0) * g;
    const auto right = line_side_tail(alpha, first, z.x);
    const auto left = line_side_tail(alpha, first, -z.x);
    tail_lo = right.first + left.first;
    tail_hi = right.second + left.second;
  }

  BoundedValue out;
  out.kind = BoundKind::bracketed;
  out.lo = main_sum + buf_sum + tail_lo;
  out.hi = main_sum + buf_sum + tail_hi;
  out.value = 0.5 * (out.lo + out.hi);
  return out;
}

BoundedValue interference_oracle_auto(const InterferenceQuery& q, double rel_tol) {
  double R = std::max(50.0, 10.0 * std::max(1.0, q.offset.norm()));
  for (;;) {
    BoundedValue r = interference_oracle(q, R);
    if (r.width() <= rel_tol * std::fabs(r.value)) return r;
    R *= 2.0;  // enumerate() raises capacity_error when R outgrows the budget
  }
}

std::vector<BoundedValue> interference_profile(const Lattice& lat, double alpha,
                                               const std::vector<Vec2>& offsets,
                                               double truncation_radius,
                                               double buffer_factor) {
  if (buffer_factor < 1.0) buffer_factor = 1.0;
  const double R = truncation_radius;
  const double Rb = buffer_factor * R;
  const auto pts = lat.enumerate(Rb, true);

  std::vector<BoundedValue> out;
  out.reserve(offsets.size());
  std::vector<double> terms;
  for (const Vec2& z : offsets) {
    validate_query(lat, alpha, z);
    const double zn = z.norm();
    if (!(R >= 10.0 * std::max(1.0, zn))) {
      throw std::domain_error("interference_profile: require R >= 10 max(1, ||z||)");
    }
    terms.clear();
    terms.reserve(pts.size());
    for (const auto& p : pts) terms.push_back(std::pow(distance(p.pos, z), -alpha));
    const double total = chunked_sum(terms);
    double tail_lo = 0.0;
    double tail_hi = 0.0;
    if (lat.dimension() == 2) {
      std::tie(tail_lo, tail_hi) =
          lattice_tail_bracket_2d(alpha, lat.cell_volume(), lat.covering_radius(), zn, Rb);
    } else {
      const double g = lat.cell_volume();
      const double tol = 1e-9 * std::max(1.0, Rb);
      const double first = (std::floor((Rb + tol) / g) + 1.0) * g;
      const auto right = line_side_tail(alpha, first, z.x);
      const auto left = line_side_tail(alpha, first, -z.x);
      tail_lo = right.first + left.first;
      tail_hi = right.second + left.second;
    }
    BoundedValue r;
    r.kind = BoundKind::bracketed;
    r.lo = total + tail_lo;
    r.hi = total + tail_hi;
    r.value = 0.5 * (r.lo + r.hi);
    out.push_back(r);
  }
  return out;
}

BoundedValue voronoi_upper_bound(const InterferenceQuery& q, double near_set_radius,
                                 double far_cutoff) {
  const Lattice& lat = q.lattice;
  const double alpha = q.loss.alpha;
  const Vec2 z = q.offset;
  validate_query(lat, alpha, z);
  const double zn = z.norm();
  const double clearance = q.loss.convex_tail_radius + zn;
  if (far_cutoff <= 0.0) far_cutoff = 40.0 * std::max(near_set_radius, 1.0);
  if (!(far_cutoff > near_set_radius)) {
    throw std::domain_error("voronoi_upper_bound: cutoff must exceed the near radius");
  }

  const auto loss = [&](Vec2 y) { return std::pow(distance(y, z), -alpha); };

  double near_sum = 0.0;
  double far_integral = 0.0;
  double quad_err = 0.0;
  const double c_cov = lat.covering_radius();
  const auto pts = lat.enumerate(far_cutoff + c_cov, true);
  for (const auto& p : pts) {
    if (p.norm <= near_set_radius) {
      near_sum += loss(p.pos);
      continue;
    }
    if (p.norm > far_cutoff) continue;
    if (cell_min_distance(lat, p.pos, Vec2{0.0, 0.0}) < clearance - 1e-12) {
      throw std::invalid_argument(
          "voronoi_upper_bound: a far cell overlaps the convexity clearance ball");
    }
    double coarse, fine;
    if (lat.dimension() == 1) {
      const double g = lat.cell_volume();
      const double a = p.pos.x - 0.5 * g;
      const double b = p.pos.x + 0.5 * g;
      // closed-form interval integral of |t - z|^{-alpha}; the far cell lies
      // entirely on one side of z
      fine = std::fabs(std::pow(std::fabs(a - z.x), 1.0 - alpha) -
                       std::pow(std::fabs(b - z.x), 1.0 - alpha)) /
             (alpha - 1.0);
      coarse = fine;
    } else if (lat.family() == LatticeFamily::square) {
      coarse = integrate_square(rule16(), p.pos, 0.5, loss);
      fine = integrate_square(rule32(), p.pos, 0.5, loss);
    } else {
      const Polygon cell = voronoi_cell(lat, p.pos);
      coarse = integrate_polygon(rule16(), cell, loss);
      fine = integrate_polygon(rule32(), cell, loss);
    }
    far_integral += fine;
    quad_err += std::fabs(fine - coarse);
  }
  far_integral /= lat.cell_volume();
  quad_err /= lat.cell_volume();

  double tail;
  if (lat.dimension() == 2) {
    tail = lattice_tail_bracket_2d(alpha, lat.cell_volume(), c_cov, zn, far_cutoff).second;
  } else {
    const double g = lat.cell_volume();
    const double first = (std::floor(far_cutoff / g) + 1.0) * g;
    tail = line_side_tail(alpha, first, z.x).second + line_side_tail(alpha, first, -z.x).second;
  }

  BoundedValue out;
  out.kind = BoundKind::upper;
  out.value = near_sum + far_integral + tail + quad_err;
  out.lo = out.hi = out.value;
  return out;
}

namespace {

BoundedValue radial_upper_impl(const InterferenceQuery& q, double sum_radius,
                               double tail_radius, bool check_membership) {
  const Lattice& lat = q.lattice;
  const double alpha = q.loss.alpha;
  const Vec2 z = q.offset;
  validate_query(lat, alpha, z);
  if (lat.dimension() != 2) {
    throw std::domain_error("radial_upper_bound: two-dimensional lattices only");
  }
  const double zn = z.norm();
  const double clearance = q.loss.convex_tail_radius + zn;
  if (!(tail_radius - zn > 0.0)) {
    throw std::domain_error("radial_upper_bound: require r_b > ||z||");
  }
  if (!(sum_radius >= clearance + 1e-12)) {
    throw std::domain_error("radial_upper_bound: r_b below the convexity clearance");
  }

  const double c_cov = lat.covering_radius();
  const auto pts = lat.enumerate(sum_radius + 2.0 * c_cov + 1.0, true);
  double near_sum = 0.0;
  bool member = false;
  for (const auto& p : pts) {
    const double rho = cell_min_distance(lat, p.pos, Vec2{0.0, 0.0});
    if (rho < sum_radius - 1e-9) {
      near_sum += std::pow(distance(p.pos, z), -alpha);
    } else if (std::fabs(rho - sum_radius) <= 1e-9) {
      member = true;
    }
  }
  if (check_membership && !member) {
    throw std::domain_error("radial_upper_bound: r_b is not a valid cell distance");
  }

  BoundedValue out;
  out.kind = BoundKind::upper;
  out.value = near_sum + radial_tail_integral(alpha, lat.cell_volume(), tail_radius - zn);
  out.lo = out.hi = out.value;
  return out;
}

}  // namespace

BoundedValue radial_upper_bound(const InterferenceQuery& q) {
  return radial_upper_impl(q, q.near_radius, q.near_radius, true);
}

BoundedValue radial_upper_bound_split(const InterferenceQuery& q, double sum_radius,
                                      double tail_radius) {
  if (!(tail_radius >= sum_radius)) {
    throw std::domain_error("radial_upper_bound_split: tail radius below sum radius");
  }
  return radial_upper_impl(q, sum_radius, tail_radius, true);
}

BoundedValue averaging_lower_bound(const std::vector<Vec2>& points, const PathLoss& loss,
                                   Vec2 z, const std::vector<std::vector<int>>& groups) {
  const double alpha = loss.alpha;
  if (!(alpha > 0.0)) throw std::domain_error("averaging_lower_bound: require alpha > 0");
  const double clearance = loss.convex_tail_radius + z.norm();

  std::vector<char> grouped(points.size(), 0);
  for (const auto& g : groups) {
    for (int idx : g) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= points.size()) {
        throw std::invalid_argument("averaging_lower_bound: group index out of range");
      }
      if (grouped[static_cast<std::size_t>(idx)]) {
        throw std::invalid_argument("averaging_lower_bound: groups must be disjoint");
      }
      grouped[static_cast<std::size_t>(idx)] = 1;
      if (!(points[static_cast<std::size_t>(idx)].norm() > clearance)) {
        throw std::invalid_argument(
            "averaging_lower_bound: grouped point inside the convexity clearance ball");
      }
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!grouped[i]) total += std::pow(distance(points[i], z), -alpha);
  }
  for (const auto& g : groups) {
    if (g.empty()) continue;
    double mean_dist = 0.0;
    for (int idx : g) mean_dist += distance(points[static_cast<std::size_t>(idx)], z);
    mean_dist /= static_cast<double>(g.size());
    total += static_cast<double>(g.size()) * std::pow(mean_dist, -alpha);
  }

  BoundedValue out;
  out.kind = BoundKind::lower;
  out.value = total;
  out.lo = out.hi = total;
  return out;
}

BoundedValue pointset_interference(const std::vector<Vec2>& points, double R, Vec2 z,
                                   double alpha, double region_volume,
                                   double packing_radius, double covering_radius) {
  if (!(alpha > 2.0)) throw std::domain_error("pointset_interference: require alpha > 2");
  if (!(R > 2.0 * (packing_radius + covering_radius) + 2.0 * z.norm() + 1.0)) {
    throw std::domain_error("pointset_interference: truncation radius too small");
  }
  std::vector<double> terms;
  terms.reserve(points.size());
  // canonical order for deterministic summation
  std::vector<Vec2> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](Vec2 a, Vec2 b) {
    const double na = a.norm_sq();
    const double nb = b.norm_sq();
    if (na != nb) return na < nb;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  for (const Vec2& p : sorted) {
    if (p.norm() <= R) terms.push_back(std::pow(distance(p, z), -alpha));
  }
  const double sum = chunked_sum(terms);
  const double zn = z.norm();
  const double a2 = alpha - 2.0;

  // upper: disjoint balls of packing radius around the far points
  const double r = packing_radius;
  const double su = r + zn;
  const double u0 = R - r - su;
  const double upper = (2.0 / (r * r)) * (std::pow(u0, -a2) / a2 +
                                          su * std::pow(u0, 1.0 - alpha) / (alpha - 1.0));
  // lower: each far point owns a disjoint region of the stated volume within
  // the covering radius of it
  const double sl = covering_radius + zn;
  const double u1 = R + covering_radius + sl;
  const double lower = (2.0 * kPi / region_volume) *
                       (std::pow(u1, -a2) / a2 - sl * std::pow(u1, 1.0 - alpha) / (alpha - 1.0));

  BoundedValue out;
  out.kind = BoundKind::bracketed;
  out.lo = sum + std::max(0.0, lower);
  out.hi = sum + upper;
  out.value = 0.5 * (out.lo + out.hi);
  return out;
}

}  // namespace latnet
