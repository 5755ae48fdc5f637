#pragma once

#include <array>
#include <vector>

#include "latnet/bounds.hpp"

namespace latnet::tri_net {

// Hexagonal-ring lower bound
// 6 + (4/(2+sqrt3))^a (2*3^a + 3*2^a + 6) / (6^{a-1} - 3^{a-1} - 2^{a-1} - 1).
double tri_lower(double alpha);

enum class UpperVariant { near6, near18 };

// Radial upper bounds with r_b = 2/sqrt3 (nearest six summed) or
// r_b = sqrt(13/3) (nearest 18 summed).
double tri_upper(double alpha, UpperVariant variant);

// Interference from the six nearest interferers at displacement r toward (1,0).
double near6_sum(double alpha, double r);

struct TriOffsetResult {
  BoundedValue exact;      // oracle-bracketed I(r * direction)
  double quad_bound = 0.0; // tri_lower(alpha) + (3/2) a^2 r^2
};

TriOffsetResult tri_offset(double alpha, double r, Vec2 direction,
                           double truncation_radius = 0.0);

enum class TriTdmaKind { rhombus, parallelogram, balanced_rows };

struct TriTdmaScheme {
  TriTdmaKind kind = TriTdmaKind::rhombus;
  int m = 2;
};

struct TriTdmaResult {
  TriTdmaKind kind = TriTdmaKind::rhombus;
  int m = 2;
  BoundedValue interference;             // receiver at (1,0)
  std::array<double, 4> generator{};     // transmitter generator, column-major
  int slots = 0;                         // lattice density / transmitter density
  double density = 0.0;                  // transmitters per unit area
  double nearest_distance = 0.0;         // receiver to nearest interferer
  std::vector<double> nearest6;          // six smallest interferer distances
  double normalized = 0.0;               // interference * density^{-alpha/2}
};

// Rhombus (m^2 nodes per cell), parallelogram (m(m+1) nodes), or balanced
// per-row scheme (four nearest interferers at distance m). Receiver sits one
// nearest-neighbor step to the right of its transmitter.
TriTdmaResult tri_tdma(double alpha, TriTdmaScheme scheme);

// Transmitter positions of the balanced-rows pattern within radius R of the
// receiver at the origin; the serving transmitter (-1, 0) is excluded.
std::vector<Vec2> tri_balanced_interferers(int m, double R);

// Distance sqrt((m/2+1)^2 + 3m^2/4) of the second-nearest interferer pair.
double tri_balanced_next_distance(int m);

}  // namespace latnet::tri_net
