#include "latnet/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace latnet {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

double wrap_angle(double a) {
  // atan2 result in [-pi, pi); normalize the +pi edge for deterministic sorting
  if (a >= 3.14159265358979309) return a - 2.0 * 3.141592653589793238462643383279502884;
  return a;
}

struct PointOrder {
  bool operator()(const LatticePoint& a, const LatticePoint& b) const {
    if (a.norm != b.norm) return a.norm < b.norm;
    const double aa = wrap_angle(std::atan2(a.pos.y, a.pos.x));
    const double ab = wrap_angle(std::atan2(b.pos.y, b.pos.x));
    if (aa != ab) return aa < ab;
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  }
};

Polygon clip_halfplane(const Polygon& poly, Vec2 n, double d) {
  // keep { y : dot(y, n) <= d }
  Polygon out;
  const std::size_t sz = poly.size();
  for (std::size_t i = 0; i < sz; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % sz];
    const double fa = dot(a, n) - d;
    const double fb = dot(b, n) - d;
    if (fa <= 0.0) {
      out.push_back(a);
      if (fb > 0.0) {
        const double t = fa / (fa - fb);
        out.push_back(a + t * (b - a));
      }
    } else if (fb <= 0.0) {
      const double t = fa / (fa - fb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.norm_sq();
  if (len2 == 0.0) return distance(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

}  // namespace

Lattice::Lattice(int dim, LatticeFamily fam, std::array<double, 4> g)
    : dim_(dim), family_(fam), g_(g) {
  const double det = g_[0] * g_[3] - g_[2] * g_[1];
  if (dim_ == 1) {
    if (g_[0] == 0.0) throw std::domain_error("Lattice: singular generator");
    cell_volume_ = std::fabs(g_[0]);
    packing_radius_ = 0.5 * std::fabs(g_[0]);
    covering_radius_ = 0.5 * std::fabs(g_[0]);
    return;
  }
  if (det == 0.0) throw std::domain_error("Lattice: singular generator");
  cell_volume_ = std::fabs(det);
  switch (family_) {
    case LatticeFamily::square:
      packing_radius_ = 0.5;
      covering_radius_ = std::sqrt(0.5);
      break;
    case LatticeFamily::triangular:
      packing_radius_ = 0.5;
      covering_radius_ = 1.0 / kSqrt3;
      break;
    default: {
      // shortest vector by local search, then cell circumradius from the cell
      const double colmax =
          std::max(std::hypot(g_[0], g_[1]), std::hypot(g_[2], g_[3]));
      double shortest = std::numeric_limits<double>::infinity();
      packing_radius_ = covering_radius_ = colmax;  // placeholders for enumerate()
      for (const auto& p : enumerate(2.1 * colmax, true)) {
        shortest = std::min(shortest, p.norm);
      }
      packing_radius_ = 0.5 * shortest;
      covering_radius_ = 0.0;
      for (const Vec2& vtx : voronoi_cell(*this, Vec2{0.0, 0.0})) {
        covering_radius_ = std::max(covering_radius_, vtx.norm());
      }
      break;
    }
  }
}

Lattice Lattice::line() {
  return Lattice(1, LatticeFamily::line, {1.0, 0.0, 0.0, 1.0});
}

Lattice Lattice::square() {
  return Lattice(2, LatticeFamily::square, {1.0, 0.0, 0.0, 1.0});
}

Lattice Lattice::triangular() {
  return Lattice(2, LatticeFamily::triangular, {1.0, 0.0, 0.5, 0.5 * kSqrt3});
}

Lattice Lattice::custom(double g00, double g01, double g10, double g11) {
  return Lattice(2, LatticeFamily::custom, {g00, g10, g01, g11});
}

Vec2 Lattice::column(int i) const {
  return i == 0 ? Vec2{g_[0], g_[1]} : Vec2{g_[2], g_[3]};
}

double Lattice::min_column_norm() const {
  if (dim_ == 1) return std::fabs(g_[0]);
  return std::min(column(0).norm(), column(1).norm());
}

Vec2 Lattice::point(std::int64_t u, std::int64_t v) const {
  const double du = static_cast<double>(u);
  const double dv = static_cast<double>(v);
  if (dim_ == 1) return {g_[0] * du, 0.0};
  return {g_[0] * du + g_[2] * dv, g_[1] * du + g_[3] * dv};
}

std::vector<LatticePoint> Lattice::enumerate(double radius, bool exclude_origin,
                                             std::size_t limit) const {
  if (!(radius > 0.0)) throw std::domain_error("enumerate: require radius > 0");
  const double tol = 1e-9 * std::max(1.0, radius);
  std::vector<LatticePoint> pts;

  if (dim_ == 1) {
    const double g = std::fabs(g_[0]);
    const double expected = 2.0 * radius / g + 2.0;
    if (expected > static_cast<double>(limit)) {
      throw capacity_error("enumerate: 1-D point budget exceeded");
    }
    const auto ub = static_cast<std::int64_t>(std::floor((radius + tol) / g));
    pts.reserve(static_cast<std::size_t>(2 * ub + 1));
    for (std::int64_t u = -ub; u <= ub; ++u) {
      if (exclude_origin && u == 0) continue;
      Vec2 p = point(u);
      pts.push_back({u, 0, p, std::fabs(p.x)});
    }
    std::sort(pts.begin(), pts.end(), PointOrder{});
    return pts;
  }

  const double expected = 3.141592653589793 * radius * radius / cell_volume_ + 16.0;
  if (expected > static_cast<double>(limit)) {
    throw capacity_error("enumerate: 2-D point budget exceeded");
  }
  const double det = g_[0] * g_[3] - g_[2] * g_[1];
  // integer box from the rows of G^{-1}
  const double ru = std::hypot(g_[3], g_[2]) / std::fabs(det);
  const double rv = std::hypot(g_[1], g_[0]) / std::fabs(det);
  const auto ub = static_cast<std::int64_t>(std::floor(ru * radius + 1.0));
  const auto vb = static_cast<std::int64_t>(std::floor(rv * radius + 1.0));
  pts.reserve(static_cast<std::size_t>(expected));
  for (std::int64_t u = -ub; u <= ub; ++u) {
    for (std::int64_t v = -vb; v <= vb; ++v) {
      if (exclude_origin && u == 0 && v == 0) continue;
      const Vec2 p = point(u, v);
      const double nrm = p.norm();
      if (nrm <= radius + tol) pts.push_back({u, v, p, nrm});
    }
  }
  std::sort(pts.begin(), pts.end(), PointOrder{});
  return pts;
}

std::vector<Vec2> Lattice::points_in_ball(double radius, bool exclude_origin,
                                          std::size_t limit) const {
  std::vector<Vec2> out;
  auto pts = enumerate(radius, exclude_origin, limit);
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.pos);
  return out;
}

RingSpec ring(const Lattice& lat, int k) {
  if (k < 1) throw std::domain_error("ring: require k >= 1");
  if (lat.family() != LatticeFamily::square &&
      lat.family() != LatticeFamily::triangular) {
    throw std::invalid_argument("ring: only square and triangular lattices have rings");
  }
  std::vector<LatticePoint> members;
  if (lat.family() == LatticeFamily::square) {
    const std::int64_t kk = k;
    for (std::int64_t i = -kk; i <= kk; ++i) {
      for (std::int64_t j : {-kk, kk}) {
        Vec2 p = lat.point(i, j);
        members.push_back({i, j, p, p.norm()});
      }
    }
    for (std::int64_t j = -kk + 1; j <= kk - 1; ++j) {
      for (std::int64_t i : {-kk, kk}) {
        Vec2 p = lat.point(i, j);
        members.push_back({i, j, p, p.norm()});
      }
    }
  } else {
    // hexagonal ring walk in axial coordinates
    std::int64_t u = k;
    std::int64_t v = 0;
    const std::int64_t dirs[6][2] = {{-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}, {0, 1}};
    for (const auto& d : dirs) {
      for (int s = 0; s < k; ++s) {
        Vec2 p = lat.point(u, v);
        members.push_back({u, v, p, p.norm()});
        u += d[0];
        v += d[1];
      }
    }
  }
  std::sort(members.begin(), members.end(), PointOrder{});

  RingSpec spec;
  spec.index = k;
  spec.count = members.size();
  spec.min_distance = std::numeric_limits<double>::infinity();
  spec.max_distance = 0.0;
  double sum = 0.0;
  spec.points.reserve(members.size());
  for (const auto& m : members) {
    spec.points.push_back(m.pos);
    spec.min_distance = std::min(spec.min_distance, m.norm);
    spec.max_distance = std::max(spec.max_distance, m.norm);
    sum += m.norm;
  }
  spec.mean_distance = sum / static_cast<double>(members.size());
  return spec;
}

RingMeanBounds ring_mean_distance_bounds(const Lattice& lat, int k) {
  if (k < 1) throw std::domain_error("ring_mean_distance_bounds: require k >= 1");
  if (lat.family() == LatticeFamily::square) {
    const double sqrt2 = std::sqrt(2.0);
    const double c = 0.5 * sqrt2 + 0.25 * (1.0 - std::log(sqrt2 - 1.0));
    return {k * (1.0 + sqrt2) / 2.0, c * k};
  }
  if (lat.family() == LatticeFamily::triangular) {
    const double c = 0.5 + 0.25 * kSqrt3;
    return {c * k, c * k};
  }
  throw std::invalid_argument("ring_mean_distance_bounds: unsupported family");
}

Polygon voronoi_cell(const Lattice& lat, Vec2 x) {
  // membership check
  if (lat.dimension() == 1) {
    const double g = lat.column(0).x;
    const double u = x.x / g;
    if (std::fabs(u - std::round(u)) > 1e-9 || std::fabs(x.y) > 1e-12) {
      throw std::invalid_argument("voronoi_cell: x is not a lattice point");
    }
    return {Vec2{x.x - 0.5 * std::fabs(g), 0.0}, Vec2{x.x + 0.5 * std::fabs(g), 0.0}};
  }

  {
    const Vec2 c0 = lat.column(0);
    const Vec2 c1 = lat.column(1);
    const double det = c0.x * c1.y - c1.x * c0.y;
    const double u = (c1.y * x.x - c1.x * x.y) / det;
    const double v = (-c0.y * x.x + c0.x * x.y) / det;
    if (std::fabs(u - std::round(u)) > 1e-9 || std::fabs(v - std::round(v)) > 1e-9) {
      throw std::invalid_argument("voronoi_cell: x is not a lattice point");
    }
  }

  Polygon cell;
  switch (lat.family()) {
    case LatticeFamily::square:
      cell = {Vec2{0.5, 0.5}, Vec2{-0.5, 0.5}, Vec2{-0.5, -0.5}, Vec2{0.5, -0.5}};
      break;
    case LatticeFamily::triangular: {
      const double r = 1.0 / kSqrt3;   // circumradius
      const double h = 0.5 / kSqrt3;   // = r/2
      cell = {Vec2{0.5, h},  Vec2{0.0, r},  Vec2{-0.5, h},
              Vec2{-0.5, -h}, Vec2{0.0, -r}, Vec2{0.5, -h}};
      break;
    }
    default: {
      const double colmax = std::max(lat.column(0).norm(), lat.column(1).norm());
      const double big = 4.0 * colmax;
      cell = {Vec2{big, big}, Vec2{-big, big}, Vec2{-big, -big}, Vec2{big, -big}};
      for (const auto& nb : lat.enumerate(4.0 * colmax, true)) {
        cell = clip_halfplane(cell, nb.pos, 0.5 * nb.pos.norm_sq());
        if (cell.empty()) break;
      }
      break;
    }
  }
  for (auto& vtx : cell) vtx = vtx + x;
  return cell;
}

double cell_min_distance(const Lattice& lat, Vec2 x, Vec2 z) {
  const Polygon cell = voronoi_cell(lat, x);
  if (lat.dimension() == 1) return point_segment_distance(z, cell[0], cell[1]);
  return point_polygon_distance(cell, z);
}

double polygon_area(const Polygon& poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * std::fabs(twice);
}

bool polygon_contains(const Polygon& poly, Vec2 p, double tol) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    if (cross(b - a, p - a) < -tol) return false;
  }
  return true;
}

double point_polygon_distance(const Polygon& poly, Vec2 p) {
  if (polygon_contains(poly, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

}  // namespace latnet
