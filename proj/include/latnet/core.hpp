#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace latnet {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
  double norm_sq() const { return x * x + y * y; }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Thrown when a point enumeration would exceed the configured budget.
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a TDMA pattern search cannot realize the claimed geometry.
class construction_error : public std::runtime_error {
 public:
  explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

enum class LatticeFamily { line, square, triangular, custom };

struct LatticePoint {
  std::int64_t u = 0;
  std::int64_t v = 0;
  Vec2 pos;
  double norm = 0.0;
};

// Convex polygon, CCW vertex order. A 1-D "cell" is the two-point segment.
using Polygon = std::vector<Vec2>;

// A full-rank lattice {G u : u in Z^d}, d in {1,2}. For d = 1 only the first
// generator column is meaningful and points lie on the x axis.
class Lattice {
 public:
  static Lattice line();
  static Lattice square();
  static Lattice triangular();
  // Columns (g00,g10) and (g01,g11); must be nonsingular.
  static Lattice custom(double g00, double g01, double g10, double g11);

  int dimension() const { return dim_; }
  LatticeFamily family() const { return family_; }
  double cell_volume() const { return cell_volume_; }
  double density() const { return 1.0 / cell_volume_; }
  Vec2 column(int i) const;
  double min_column_norm() const;

  Vec2 point(std::int64_t u, std::int64_t v = 0) const;

  // Half the minimum nonzero vector norm.
  double packing_radius() const { return packing_radius_; }
  // Circumradius of the Voronoi cell (covering radius).
  double covering_radius() const { return covering_radius_; }

  // All lattice points with ||x|| <= radius (tolerance 1e-9), sorted by
  // (norm, angle) with lexicographic (u,v) tie-break; origin excluded iff
  // requested. Throws capacity_error if the expected count exceeds `limit`.
  std::vector<LatticePoint> enumerate(double radius, bool exclude_origin,
                                      std::size_t limit = 100000000) const;
  std::vector<Vec2> points_in_ball(double radius, bool exclude_origin,
                                   std::size_t limit = 100000000) const;

 private:
  Lattice(int dim, LatticeFamily fam, std::array<double, 4> g);

  int dim_;
  LatticeFamily family_;
  std::array<double, 4> g_;  // column-major: g_[0]=g00, g_[1]=g10, g_[2]=g01, g_[3]=g11
  double cell_volume_;
  double packing_radius_;
  double covering_radius_;
};

// Isotropic path loss l(r) = r^{-alpha}. The power law has a globally convex
// radial profile, so the convex-tail radius is zero.
struct PathLoss {
  double alpha = 4.0;
  double convex_tail_radius = 0.0;

  double operator()(double r) const { return std::pow(r, -alpha); }
};

struct RingSpec {
  int index = 0;
  std::vector<Vec2> points;
  std::size_t count = 0;
  double min_distance = 0.0;
  double max_distance = 0.0;
  double mean_distance = 0.0;
};

// k-th ring of a square (8k nodes) or triangular (hexagon, 6k nodes) lattice.
RingSpec ring(const Lattice& lat, int k);

struct RingMeanBounds {
  double simple = 0.0;
  double sharp = 0.0;
};

// Upper bounds on the mean ring distance (valid for k >= 2 on the square
// lattice; the triangular value is the hexagon mid-arc constant in both slots).
RingMeanBounds ring_mean_distance_bounds(const Lattice& lat, int k);

// Closed Voronoi cell of lattice point x, as a convex polygon (or a two-point
// segment for d = 1). Throws std::invalid_argument if x is not a lattice point.
Polygon voronoi_cell(const Lattice& lat, Vec2 x);

// Exact distance from z to the Voronoi cell of lattice point x (0 if inside).
double cell_min_distance(const Lattice& lat, Vec2 x, Vec2 z);

// Polygon helpers (exposed for tests).
double polygon_area(const Polygon& poly);
bool polygon_contains(const Polygon& poly, Vec2 p, double tol = 1e-12);
double point_polygon_distance(const Polygon& poly, Vec2 p);

}  // namespace latnet
