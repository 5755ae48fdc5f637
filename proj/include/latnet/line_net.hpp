#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latnet/bounds.hpp"

namespace latnet::line_net {

// I(z) = zeta(alpha, 1-z) + zeta(alpha, 1+z) for interferers on Z \ {0}.
double line_interference(double alpha, double z);

// Closed-form upper bound
// (1-z)^{-a} + (1+z)^{-a} + [(3/2-z)^{1-a} + (3/2+z)^{1-a}]/(a-1).
double line_interference_upper(double alpha, double z);

// Matching closed-form lower bound with 2-z / 2+z in the tail terms.
double line_interference_lower(double alpha, double z);

// Quadratic/quartic expansion of the closed-form bound around z = 0.
struct OffsetExpansion {
  double base = 0.0;          // 2 zeta(alpha)
  double c2 = 0.0;            // a^2 + a(1 + (2/3)^{a+1})
  double c4 = 0.0;            // a^4/12 + a^3/2 + a^2 + a/2
  double c2_lower = 0.0;      // a^2 + a
  double c2_approx = 0.0;     // a^2 + a + 1/2
};

OffsetExpansion excess_coefficient_1d(double alpha);

// T(z) = z log2(1 + z^{-alpha} / I(z)).
double transport_capacity(double alpha, double z);

struct LinkOptimum {
  double z_opt = 0.0;
  double t_opt = 0.0;
};

// Golden-section maximization of T on (0.01, 0.9), tolerance 1e-6 in z. The
// numeric optimum is the contract; the series-based closed form for z_opt is
// not reproducible from its printed statement and is not shipped.
LinkOptimum optimal_link_distance(double alpha);

enum class TdmaScheme1D { unidirectional, balanced };

struct TdmaResult1D {
  TdmaScheme1D scheme = TdmaScheme1D::unidirectional;
  int m = 2;
  BoundedValue interference;      // exact or oracle-bracketed
  double rate = 0.0;              // log2(1 + 1/interference.value)
  double throughput = 0.0;        // rate / m
  double approx_rate = 0.0;       // scheme-specific closed-form approximation
  double lower_bound = 0.0;       // closed-form lower bound on I_m
  double upper_bound = 0.0;       // closed-form upper bound on I_m
  std::optional<double> closed_form;  // exact closed form where the paper gives one
};

// Transmitters at mZ, receiver at 1: I_m = m^{-alpha} I(1/m), bracketed by
// G(m,2) < I_m < G(m,3/2).
TdmaResult1D tdma_unidirectional(double alpha, int m);
double g_bracket(double alpha, int m, double b);

// argmax over m in 2..64 of the unidirectional throughput. Returns the strict
// argmax; when T_4 and T_5 are near-tied the larger m is the lower-power
// choice, which callers may prefer on their own.
int tdma_unidirectional_opt(double alpha);

// K_m interferer positions {-2km-1, -2km+m, 2km-m, 2km-1}, k = 1..k_max.
std::vector<std::int64_t> balanced_interferer_set(int m, int k_max);

// Balanced bidirectional scheme; exact closed forms for m in {2,3}; bounds
// 2 m^{-a} zeta(a) < I_m < chain upper for all m. approx_rate uses
// SIR = m^alpha C(alpha) with C(alpha) = 1/(2 zeta(alpha)).
TdmaResult1D tdma_balanced(double alpha, int m);
double balanced_capacity_constant(double alpha);  // C(alpha)

struct BalancedOptimum {
  double m_real = 0.0;  // Lambert-W stationary point of log2(1+m^a C)/m
  int m_int = 0;        // integer argmax over 2..64 of the same objective
};

BalancedOptimum tdma_balanced_opt(double alpha);

}  // namespace latnet::line_net
