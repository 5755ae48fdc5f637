#pragma once

#include <vector>

#include "latnet/bounds.hpp"

namespace latnet::square_net {

// Exact lattice sum I(o) = 4 zeta(alpha/2) beta(alpha/2), alpha > 2.
double square_exact(double alpha);

enum class LowerVariant { simple_c, sharp_c, closed_form };

// Ring-average lower bounds; simple_c uses c = (1+sqrt2)/2, sharp_c the
// integral-sharpened c ~ 1.1775, closed_form additionally replaces
// zeta(alpha-1)-1 by its rational lower bound.
double square_lower(double alpha, LowerVariant variant);

enum class UpperVariant { rectangle, radial_3_2, radial_3_sqrt2 };

// Rectangle-complement and radial upper bounds. The rectangle integral has
// closed forms at alpha in {3,4,5} and is integrated numerically otherwise.
double square_upper(double alpha, UpperVariant variant);

// Full-plane integral over R^2 \ [-3/2,3/2]^2 of ||x||^{-alpha}.
double rectangle_complement_integral(double alpha);

enum class Direction { axial, diagonal };

// Interference from the 8 nearest interferers at displacement r along the
// chosen direction (exact closed forms).
double near8_sum(double alpha, double r, Direction dir);

struct SquareOffsetExpansion {
  double near8_base = 0.0;   // 4(1 + 2^{-a/2})
  double c8 = 0.0;           // a^2 (1 + 2^{-a/2-1}); equal for both directions
  Direction direction = Direction::axial;
  double c8_lower = 0.0;     // a^2 + 1, valid on 2 < a < 12
  double c_ex_full = 0.0;    // c8 + far-field term; closed form for a in {3,4}, else 0
};

SquareOffsetExpansion square_offset_expansion(double alpha, Direction dir);

struct SquareTdmaResult {
  int m = 2;
  BoundedValue interference;          // at the receiver, oracle-bracketed
  double radial_bound = 0.0;          // Cor.-1 style upper bound
  double r_b = 0.0;                   // radius used by the radial bound
  std::vector<double> nearest8;       // sorted receiver-to-interferer distances
  double density = 0.0;               // transmitters per unit area
};

// Simple scheme: transmitters (mZ)^2, receiver at (0,1). Requires m >= 3 for
// the closed nearest-8 distance list (m = 2 is oracle-only).
SquareTdmaResult square_tdma_simple(double alpha, int m);

struct SquareBalancedResult {
  int m = 2;
  BoundedValue interference;
  double radial_bound = 0.0;      // near-8 sum + (2pi/m^2)(3m/2)^{2-a}/(a-2)
  double r_b = 0.0;               // 3m/2
  std::vector<double> nearest8;
  double nearest4_distance = 0.0; // must equal sqrt(m^2+1)
  double density = 0.0;
  double mean_nearest6 = 0.0;     // mean Tx-to-Tx nearest-six distance
};

// Balanced scheme: one transmitter per m x m box arranged so the four nearest
// interferers sit at distance sqrt(m^2+1) from the receiver. Realized as a
// three-coset column pattern (a plain sheared sub-lattice cannot achieve the
// distance; see tests). Throws construction_error if verification fails.
SquareBalancedResult square_tdma_balanced(double alpha, int m);

// Transmitter positions of the balanced pattern within radius R of the
// receiver at the origin; the serving transmitter (-1, 0) is excluded.
std::vector<Vec2> square_balanced_interferers(int m, double R);

// Best achievable min interferer distance over sheared sub-lattices
// [[m,s],[0,m]] with unit receiver offsets (for documenting why the lattice
// family cannot realize the balanced distances).
double square_shear_best_min_distance(int m);

}  // namespace latnet::square_net
