#pragma once

namespace latnet::specfun {

// Hurwitz zeta zeta(alpha, a) = sum_{k>=0} (k+a)^{-alpha}, alpha > 1, a > 0.
// Direct summation plus Euler-Maclaurin tail; absolute error well below 1e-12.
double hurwitz_zeta(double alpha, double a);

// Standard Riemann zeta, zeta(alpha, 1).
double riemann_zeta(double alpha);

// Closed-form bounds on the (generalized) zeta function.
//   hurwitz_upper:      (1-z)^{-a} + (3/2-z)^{1-a}/(a-1)        >= zeta(a,1-z)
//   hurwitz_lower:      (1-z)^{-a} + (2-z)^{1-a}/(a-1)          <= zeta(a,1-z)
//   std_upper_rational: (a-1+2^{-a}) / ((a-1)(1-2^{-a}))        >= zeta(a)
//   std_lower_rational: 6^a / (6^a - 3^a - 2^a - 1)             <= zeta(a)
//   std_lower_loose:    (2^a-1) / (2^a-2)                       <= zeta(a)
// The standard-zeta kinds require z = 0.
enum class ZetaBoundKind {
  hurwitz_upper,
  hurwitz_lower,
  std_upper_rational,
  std_lower_rational,
  std_lower_loose,
};

double zeta_bound(ZetaBoundKind kind, double alpha, double z = 0.0);

// Dirichlet beta(x) = sum_{i>=1} (-1)^{i+1} (2i-1)^{-x}, x > 0, via pairwise
// averaging acceleration of the alternating series; abs error <= 1e-12.
double dirichlet_beta(double x);

// Principal real branch W0 of the Lambert W function, x >= -1/e.
// Halley iteration; |w e^w - x| <= 1e-10 max(1,|x|).
double lambert_w0(double x);

}  // namespace latnet::specfun
