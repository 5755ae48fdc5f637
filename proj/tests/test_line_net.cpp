#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "latnet/line_net.hpp"
#include "latnet/specfun.hpp"

using namespace latnet;
using namespace latnet::line_net;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// independent two-sided sum with integral tail bracket
struct Bracket {
  double lo, hi;
  bool contains(double v) const { return lo <= v && v <= hi; }
};

Bracket line_brute(double alpha, double z, int n = 500000) {
  double s = 0.0;
  for (int k = n; k >= 1; --k) {
    s += std::pow(k - z, -alpha) + std::pow(k + z, -alpha);
  }
  const double tail_lo = (std::pow(n + 1 - z, 1.0 - alpha) + std::pow(n + 1 + z, 1.0 - alpha)) /
                         (alpha - 1.0);
  const double tail_hi = tail_lo + std::pow(n + 1 - z, -alpha) + std::pow(n + 1 + z, -alpha);
  return {s + tail_lo, s + tail_hi};
}

// Richardson-extrapolated central second difference
double second_derivative(double (*f)(double, double), double alpha, double h) {
  auto d2 = [&](double hh) {
    return (f(alpha, hh) - 2.0 * f(alpha, 0.0) + f(alpha, -hh)) / (hh * hh);
  };
  const double a = d2(h);
  const double b = d2(h / 2.0);
  return (4.0 * b - a) / 3.0;
}

double fourth_derivative(double (*f)(double, double), double alpha, double h) {
  auto d4 = [&](double hh) {
    return (f(alpha, -2.0 * hh) - 4.0 * f(alpha, -hh) + 6.0 * f(alpha, 0.0) -
            4.0 * f(alpha, hh) + f(alpha, 2.0 * hh)) /
           (hh * hh * hh * hh);
  };
  const double a = d4(h);
  const double b = d4(h / 2.0);
  return (4.0 * b - a) / 3.0;
}

}  // namespace

TEST_CASE("line interference closed values") {
  CHECK(line_interference(2.0, 0.0) == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-12));
  CHECK(line_interference(4.0, 0.0) ==
        doctest::Approx(std::pow(kPi, 4) / 45.0).epsilon(1e-12));
  CHECK(line_brute(2.0, 0.3).contains(line_interference(2.0, 0.3)));
}

TEST_CASE("line interference is even in z") {
  for (double alpha : {2.0, 3.5}) {
    for (double z : {0.1, 0.45, 0.8}) {
      CHECK(std::fabs(line_interference(alpha, z) - line_interference(alpha, -z)) <= 1e-12);
    }
  }
}

TEST_CASE("closed-form upper and lower bounds") {
  CHECK(line_interference_upper(2.0, 0.0) == doctest::Approx(10.0 / 3.0).epsilon(1e-15));
  const double gap = line_interference_upper(2.0, 0.0) - line_interference(2.0, 0.0);
  CHECK(gap == doctest::Approx((10.0 - kPi * kPi) / 3.0).epsilon(1e-10));
  CHECK(line_interference_upper(3.0, 0.25) >= line_brute(3.0, 0.25).hi);
  for (double alpha : {2.0, 3.0, 4.0}) {
    for (double z = 0.0; z < 0.9; z += 0.1) {
      const double exact = line_interference(alpha, z);
      CHECK(line_interference_upper(alpha, z) >= exact);
      CHECK(line_interference_lower(alpha, z) <= exact);
    }
  }
}

TEST_CASE("offset coefficient closed form") {
  const auto e2 = excess_coefficient_1d(2.0);
  CHECK(e2.c2 == doctest::Approx(4.0 + 70.0 / 27.0).epsilon(1e-15));
  CHECK(e2.base == doctest::Approx(2.0 * specfun::riemann_zeta(2.0)).epsilon(1e-12));
  for (double alpha = 1.5; alpha <= 10.0 + 1e-9; alpha += 0.25) {
    const auto e = excess_coefficient_1d(alpha);
    CHECK(e.c2 > e.c2_lower);
    CHECK(std::fabs(e.c2 - e.c2_approx) < 0.5);
  }
}

TEST_CASE("offset coefficient matches the bound curvature by finite differences") {
  for (double alpha : {2.0, 3.0, 4.0}) {
    const double fd = 0.5 * second_derivative(&line_interference_upper, alpha, 1e-3);
    const double c2 = excess_coefficient_1d(alpha).c2;
    CHECK(std::fabs(fd - c2) <= 1e-6 * c2);
  }
}

TEST_CASE("true lattice curvature is a(a+1) zeta(a+2)") {
  // the closed-form coefficient tracks the exact curvature to within ~1.5%
  for (double alpha : {2.0, 3.0, 4.0}) {
    const double fd = 0.5 * second_derivative(&line_interference, alpha, 1e-3);
    const double exact_c2 = alpha * (alpha + 1.0) * specfun::riemann_zeta(alpha + 2.0);
    CHECK(std::fabs(fd - exact_c2) <= 1e-6 * exact_c2);
    CHECK(std::fabs(excess_coefficient_1d(alpha).c2 - exact_c2) <= 0.016 * exact_c2);
  }
}

TEST_CASE("fourth-order coefficient approximation within 1 percent") {
  for (double alpha = 1.25; alpha <= 8.0 + 1e-9; alpha += 0.25) {
    const double fd = fourth_derivative(&line_interference_upper, alpha, 0.02) / 24.0;
    const double c4 = excess_coefficient_1d(alpha).c4;
    CHECK(std::fabs(c4 - fd) <= 0.011 * std::fabs(fd));
  }
}

TEST_CASE("quadratic fit of the interference for small z") {
  // Below z ~ 0.07 the fixed offset between the bound curvature and the true
  // lattice curvature dominates the quartic slack, so the comparison is made
  // on the plotted small-z regime.
  for (double alpha : {2.0, 3.0, 4.0}) {
    const auto e = excess_coefficient_1d(alpha);
    for (double z = 0.10; z <= 0.25 + 1e-9; z += 0.05) {
      const double exact = line_interference(alpha, z);
      const double approx = e.base + e.c2 * z * z;
      CHECK(std::fabs(exact - approx) <= 2.0 * e.c4 * std::pow(z, 4));
    }
    // at tiny z the absolute error collapses to the curvature offset
    const double exact_tiny = line_interference(alpha, 0.01);
    CHECK(std::fabs(exact_tiny - (e.base + e.c2 * 1e-4)) <= 1e-4);
  }
}

TEST_CASE("transport capacity and its optimum") {
  CHECK(transport_capacity(2.0, 0.224) >= transport_capacity(2.0, 0.204));
  CHECK(transport_capacity(2.0, 0.224) >= transport_capacity(2.0, 0.244));
  CHECK(transport_capacity(4.0, 0.222) >= transport_capacity(4.0, 0.202));
  CHECK(transport_capacity(4.0, 0.222) >= transport_capacity(4.0, 0.242));
  CHECK(transport_capacity(2.0, 0.001) < 0.02);

  CHECK(optimal_link_distance(2.0).z_opt == doctest::Approx(0.224).epsilon(0.015));
  CHECK(std::fabs(optimal_link_distance(2.0).z_opt - 0.224) <= 0.003);
  CHECK(std::fabs(optimal_link_distance(4.0).z_opt - 0.222) <= 0.003);
  const double z3 = optimal_link_distance(3.0).z_opt;
  CHECK(z3 >= 0.2);
  CHECK(z3 <= 0.25);
}

TEST_CASE("unidirectional TDMA bracket and throughput") {
  for (double alpha : {2.0, 3.0, 4.0}) {
    for (int m = 2; m <= 12; ++m) {
      const auto r = tdma_unidirectional(alpha, m);
      CHECK(r.interference.lo < r.interference.value);
      CHECK(r.interference.value < r.interference.hi);
      CHECK(r.throughput == doctest::Approx(r.rate / m).epsilon(1e-15));
    }
  }
  const auto t5 = tdma_unidirectional(2.0, 5);
  CHECK(std::fabs(t5.throughput - 0.60) <= 0.05);

  // m^alpha I_m -> 2 zeta(alpha) as the offset 1/m vanishes
  const auto big = tdma_unidirectional(4.0, 200);
  CHECK(std::pow(200.0, 4.0) * big.interference.value ==
        doctest::Approx(2.0 * specfun::riemann_zeta(4.0)).epsilon(1e-3));
}

TEST_CASE("unidirectional optimum is m = 4 or 5") {
  for (double alpha : {1.5, 2.0, 3.0, 4.0, 6.0, 10.0, 20.0}) {
    const int m = tdma_unidirectional_opt(alpha);
    CHECK((m == 4 || m == 5));
  }
}

TEST_CASE("balanced interferer positions") {
  const auto k2 = balanced_interferer_set(2, 1);
  CHECK(std::set<std::int64_t>(k2.begin(), k2.end()) ==
        std::set<std::int64_t>{-5, -2, 2, 3});
  const auto k3 = balanced_interferer_set(3, 1);
  CHECK(std::set<std::int64_t>(k3.begin(), k3.end()) ==
        std::set<std::int64_t>{-7, -3, 3, 5});
  for (int m = 2; m <= 8; ++m) {
    for (auto v : balanced_interferer_set(m, 5)) {
      CHECK(std::llabs(v) >= m);
    }
  }
}

TEST_CASE("balanced TDMA closed forms match the direct sum") {
  for (double alpha : {2.0, 3.0, 4.0}) {
    for (int m : {2, 3}) {
      const auto r = tdma_balanced(alpha, m);
      REQUIRE(r.closed_form.has_value());
      CHECK(r.interference.lo <= *r.closed_form);
      CHECK(*r.closed_form <= r.interference.hi);
      CHECK(r.interference.width() <= 2e-8 * *r.closed_form);
    }
  }
  const auto r22 = tdma_balanced(2.0, 2);
  CHECK(*r22.closed_form ==
        doctest::Approx(1.125 * specfun::riemann_zeta(2.0) - 1.0).epsilon(1e-15));
  CHECK(*r22.closed_form == doctest::Approx(0.8506).epsilon(1e-4));
}

TEST_CASE("balanced TDMA bounds") {
  for (double alpha : {2.0, 3.0, 4.0}) {
    for (int m = 2; m <= 12; ++m) {
      const auto r = tdma_balanced(alpha, m);
      CHECK(r.lower_bound < r.interference.lo);
      CHECK(r.interference.hi <= r.upper_bound + 1e-12);
    }
  }
  const auto t4 = tdma_balanced(2.0, 4);
  CHECK(std::fabs(t4.throughput - 0.64) <= 0.05);
}

TEST_CASE("balanced optimum via Lambert W") {
  for (double alpha : {2.0, 3.0, 4.0, 5.0, 6.0, 6.9}) {
    const auto opt = tdma_balanced_opt(alpha);
    CHECK(opt.m_real >= 3.0);
    CHECK(opt.m_real <= 4.0);
  }
  const auto opt4 = tdma_balanced_opt(4.0);
  CHECK((opt4.m_int == 3 || opt4.m_int == 4));
  const double r4 = std::log2(1.0 + std::pow(4.0, 4.0) * balanced_capacity_constant(4.0));
  CHECK(std::fabs(r4 - (3.0 + std::log2(15.0))) <= 0.2);
}

TEST_CASE("balanced beats unidirectional at the optima") {
  for (double alpha : {2.0, 3.0, 4.0}) {
    double best_uni = 0.0;
    double best_bal = 0.0;
    for (int m = 2; m <= 16; ++m) {
      best_uni = std::max(best_uni, tdma_unidirectional(alpha, m).throughput);
      best_bal = std::max(best_bal, tdma_balanced(alpha, m).throughput);
    }
    CHECK(best_bal >= best_uni);
  }
}
