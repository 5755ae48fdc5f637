#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latnet/core.hpp"

namespace latnet {

enum class BoundKind { upper, lower, approximation, bracketed };

// Numeric result with a kind tag; bracketed values carry a certified interval
// [lo, hi] containing the exact quantity, with value at the midpoint.
struct BoundedValue {
  double value = 0.0;
  BoundKind kind = BoundKind::approximation;
  double lo = 0.0;
  double hi = 0.0;

  bool has_bracket() const { return kind == BoundKind::bracketed; }
  double width() const { return hi - lo; }
};

struct InterferenceQuery {
  Lattice lattice = Lattice::square();
  PathLoss loss;
  Vec2 offset;            // receiver position z, ||z|| < min column norm
  double near_radius = 0; // r_b for the radial bound, must lie in R_z
};

// Truncated lattice sum I(z) = sum_{x in L\{o}, ||x||<=R} ||x-z||^{-alpha}
// with a rigorous two-sided tail bracket. Points in (R, buffer*R] are summed
// exactly into both bracket ends; beyond that, the upper tail integrates over
// cells outside b(R'-c) (Jensen) and the lower tail uses the covering-shifted
// integral. Monotone tightening in R.
BoundedValue interference_oracle(const InterferenceQuery& q, double truncation_radius,
                                 double buffer_factor = 1.5);

// Grows R until the bracket width is <= rel_tol * value (or the enumeration
// budget is hit, which raises capacity_error).
BoundedValue interference_oracle_auto(const InterferenceQuery& q, double rel_tol = 1e-8);

// Batch oracle: one enumeration, many offsets. Same bracket guarantees.
std::vector<BoundedValue> interference_profile(const Lattice& lat, double alpha,
                                               const std::vector<Vec2>& offsets,
                                               double truncation_radius,
                                               double buffer_factor = 1.5);

// Theorem-1 upper bound: exact sum over points with ||x|| <= near_set_radius,
// Gauss-Legendre integrals of l(y-z) over each farther cell out to far_cutoff,
// then a closed-form radial tail. Quadrature error (order doubling) is added
// to the bound. far_cutoff = 0 selects 40 * max(near_set_radius, 1).
BoundedValue voronoi_upper_bound(const InterferenceQuery& q, double near_set_radius,
                                 double far_cutoff = 0.0);

// Corollary-1 radial bound with r_b = q.near_radius: exact sum over points
// whose cell-to-origin distance rho_x < r_b, plus (2pi/V)(r_b-||z||)^{2-a}/(a-2).
BoundedValue radial_upper_bound(const InterferenceQuery& q);

// Same near set (rho_x < sum_radius) with an enlarged tail radius; used to
// check that raising r_b to the next cell distance improves the bound.
BoundedValue radial_upper_bound_split(const InterferenceQuery& q, double sum_radius,
                                      double tail_radius);

// Theorem-2 lower bound by distance averaging: each group of points is
// replaced by |group| copies at the group's mean distance from z. Ungrouped
// points are summed exactly. Groups are disjoint index lists into `points`;
// every grouped point must lie outside b_o(r_c + ||z||).
BoundedValue averaging_lower_bound(const std::vector<Vec2>& points, const PathLoss& loss,
                                   Vec2 z, const std::vector<std::vector<int>>& groups);

// Interference of an arbitrary planar transmitter set (one point per region of
// area `region_volume`, every plane point within `covering_radius` of its
// point, pairwise separation >= 2*packing_radius). `points` must contain all
// set members with ||x|| <= R. Tails: packing argument above, covering shift
// below.
BoundedValue pointset_interference(const std::vector<Vec2>& points, double R, Vec2 z,
                                   double alpha, double region_volume,
                                   double packing_radius, double covering_radius);

// Closed-form radial tail (2pi/V) b^{2-a}/(a-2); also the mean interference of
// a unit-rate-per-V Poisson field outside radius b (Cor. 1 remark 3).
double radial_tail_integral(double alpha, double cell_volume, double b);
double poisson_mean_interference_outside(double alpha, double intensity, double b);

}  // namespace latnet
