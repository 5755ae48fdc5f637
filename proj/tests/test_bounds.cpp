#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "latnet/bounds.hpp"
#include "latnet/line_net.hpp"
#include "latnet/specfun.hpp"
#include "latnet/square_net.hpp"
#include "latnet/tri_net.hpp"

using namespace latnet;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

InterferenceQuery make_query(const Lattice& lat, double alpha, Vec2 z = {0.0, 0.0}) {
  InterferenceQuery q;
  q.lattice = lat;
  q.loss.alpha = alpha;
  q.offset = z;
  return q;
}

}  // namespace

TEST_CASE("oracle: square lattice at the origin") {
  const auto r = interference_oracle(make_query(Lattice::square(), 4.0), 200.0);
  CHECK(r.width() < 1e-6);
  const double exact = square_net::square_exact(4.0);
  CHECK(r.lo <= exact);
  CHECK(exact <= r.hi);
  CHECK(r.value == doctest::Approx(6.0268).epsilon(1e-4));
}

TEST_CASE("oracle: two-sided integer line") {
  const auto r = interference_oracle(make_query(Lattice::line(), 2.0), 1e6);
  CHECK(std::fabs(r.value - kPi * kPi / 3.0) <= 1e-9);
  CHECK(r.lo <= kPi * kPi / 3.0);
  CHECK(kPi * kPi / 3.0 <= r.hi);
}

TEST_CASE("oracle: triangular lattice value") {
  const auto r = interference_oracle(make_query(Lattice::triangular(), 4.0), 200.0);
  CHECK(r.width() < 2e-6);
  CHECK(r.value == doctest::Approx(7.7115).epsilon(5e-5));
  CHECK(tri_net::tri_lower(4.0) < r.lo);
  CHECK(r.hi < tri_net::tri_upper(4.0, tri_net::UpperVariant::near18));
}

TEST_CASE("oracle: preconditions") {
  CHECK_THROWS_AS(interference_oracle(make_query(Lattice::square(), 2.0), 200.0),
                  std::domain_error);  // alpha <= d
  CHECK_THROWS_AS(interference_oracle(make_query(Lattice::square(), 4.0), 5.0),
                  std::domain_error);  // R too small
  CHECK_THROWS_AS(
      interference_oracle(make_query(Lattice::square(), 4.0, {1.2, 0.0}), 200.0),
      std::domain_error);  // offset beyond the generator columns
}

TEST_CASE("oracle: bracket width shrinks at least like R^(2-alpha)") {
  const double alpha = 4.0;
  std::vector<double> lr, lw;
  for (double R : {50.0, 100.0, 200.0, 400.0}) {
    const auto r = interference_oracle(make_query(Lattice::square(), alpha), R);
    lr.push_back(std::log(R));
    lw.push_back(std::log(r.width()));
  }
  // least-squares slope
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    mx += lr[i];
    my += lw[i];
  }
  mx /= lr.size();
  my /= lw.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    num += (lr[i] - mx) * (lw[i] - my);
    den += (lr[i] - mx) * (lr[i] - mx);
  }
  const double slope = num / den;
  CHECK(slope <= (2.0 - alpha) + 0.2);  // decays at least at the stated rate
}

TEST_CASE("oracle: adaptive truncation meets the width target") {
  const auto r = interference_oracle_auto(make_query(Lattice::square(), 4.0), 1e-8);
  CHECK(r.width() <= 1e-8 * r.value);
  const double exact = square_net::square_exact(4.0);
  CHECK(r.lo <= exact);
  CHECK(exact <= r.hi);
}

TEST_CASE("oracle: monotone tightening in R") {
  double prev = 1e300;
  for (double R : {50.0, 100.0, 200.0}) {
    const auto r = interference_oracle(make_query(Lattice::triangular(), 3.0), R);
    CHECK(r.width() < prev);
    prev = r.width();
  }
}

TEST_CASE("radial upper bound: square closed forms") {
  auto q = make_query(Lattice::square(), 4.0);
  q.near_radius = 1.5;
  const auto b = radial_upper_bound(q);
  CHECK(b.value == doctest::Approx(5.0 + kPi * 4.0 / 9.0).epsilon(1e-12));
  CHECK(b.value == doctest::Approx(6.396).epsilon(1e-3));

  q.near_radius = 3.0 / std::sqrt(2.0);
  const auto b2 = radial_upper_bound(q);
  CHECK(b2.value ==
        doctest::Approx(square_net::square_upper(4.0, square_net::UpperVariant::radial_3_sqrt2))
            .epsilon(1e-12));
  CHECK(b2.value > 6.0268);
  CHECK(b2.value < 6.40);
}

TEST_CASE("radial upper bound: triangular near-18 radius") {
  auto q = make_query(Lattice::triangular(), 4.0);
  q.near_radius = std::sqrt(13.0 / 3.0);
  const auto b = radial_upper_bound(q);
  CHECK(b.value ==
        doctest::Approx(tri_net::tri_upper(4.0, tri_net::UpperVariant::near18)).epsilon(1e-12));
  CHECK(b.value == doctest::Approx(7.879).epsilon(1e-3));
}

TEST_CASE("radial upper bound: r_b validation") {
  auto q = make_query(Lattice::square(), 4.0);
  q.near_radius = 1.3;  // not a cell distance
  CHECK_THROWS_AS(radial_upper_bound(q), std::domain_error);
  q.near_radius = 0.2;  // below the offset clearance once z is set
  q.offset = {0.4, 0.0};
  CHECK_THROWS_AS(radial_upper_bound(q), std::domain_error);
}

TEST_CASE("radial bound: raising r_b to the next cell distance never hurts") {
  // with the near set fixed, enlarging the tail radius to the next cell
  // distance improves the bound (Cor. 1 remark)
  auto q = make_query(Lattice::square(), 4.0);
  const double rhos[] = {0.5, std::sqrt(0.5), 1.5, std::sqrt(2.5), 3.0 / std::sqrt(2.0), 2.5};
  for (std::size_t i = 0; i + 1 < std::size(rhos); ++i) {
    const auto fixed = radial_upper_bound_split(q, rhos[i], rhos[i]);
    const auto raised = radial_upper_bound_split(q, rhos[i], rhos[i + 1]);
    CHECK(raised.value <= fixed.value + 1e-12);
  }
}

TEST_CASE("voronoi upper bound: rectangle-complement form at alpha=3") {
  auto q = make_query(Lattice::square(), 3.0);
  const double closed = 4.0 * (1.0 + std::pow(2.0, -1.5)) + 8.0 * std::sqrt(2.0) / 3.0;
  const auto b = voronoi_upper_bound(q, 1.5, 80.0);
  CHECK(b.value >= closed - 1e-9);
  CHECK(b.value <= closed + 2e-3);  // finite cutoff conservatism only
}

TEST_CASE("voronoi upper bound: converges to the oracle as the near set grows") {
  auto q = make_query(Lattice::triangular(), 4.0);
  const auto oracle = interference_oracle(q, 150.0);
  const auto b = voronoi_upper_bound(q, 20.0, 60.0);
  CHECK(b.value >= oracle.hi - 1e-9);
  CHECK(b.value - oracle.value <= 1e-3);
}

TEST_CASE("voronoi upper bound: one-dimensional lattice") {
  // with the single nearest pair summed exactly, the cell-integral bound
  // reproduces the closed form of the two-sided Lemma bound
  auto q = make_query(Lattice::line(), 3.0, {0.25, 0.0});
  const auto b = voronoi_upper_bound(q, 1.0, 5000.0);
  const double closed = line_net::line_interference_upper(3.0, 0.25);
  CHECK(b.value >= line_net::line_interference(3.0, 0.25));
  CHECK(b.value <= closed + 1e-9);
  CHECK(b.value == doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("voronoi upper bound: far cell clearance is enforced") {
  auto q = make_query(Lattice::square(), 4.0, {0.6, 0.0});
  CHECK_THROWS_AS(voronoi_upper_bound(q, 0.4, 40.0), std::invalid_argument);
}

TEST_CASE("averaging lower bound: balanced pairs reproduce 2^(1-a) zeta") {
  for (double alpha : {2.0, 3.0}) {
    const int K = 20000;
    std::vector<Vec2> pts;
    std::vector<std::vector<int>> groups;
    for (int k = 1; k <= K; ++k) {
      pts.push_back({static_cast<double>(-4 * k - 1), 0.0});
      pts.push_back({static_cast<double>(4 * k - 1), 0.0});
      pts.push_back({static_cast<double>(-4 * k + 2), 0.0});
      pts.push_back({static_cast<double>(4 * k - 2), 0.0});
      groups.push_back({static_cast<int>(pts.size()) - 4, static_cast<int>(pts.size()) - 3});
    }
    PathLoss loss{alpha, 0.0};
    const auto b = averaging_lower_bound(pts, loss, {0.0, 0.0}, groups);
    const double closed = std::pow(2.0, 1.0 - alpha) * specfun::riemann_zeta(alpha);
    CHECK(b.value <= closed);
    CHECK(b.value == doctest::Approx(closed).epsilon(1e-4));
    // and the averaged value lower-bounds the exact sum over the same points
    double exact = 0.0;
    for (const Vec2& p : pts) exact += std::pow(p.norm(), -alpha);
    CHECK(b.value <= exact);
  }
}

TEST_CASE("averaging lower bound: singletons are the identity") {
  std::vector<Vec2> pts = {{1.0, 0.0}, {0.0, 2.0}, {-3.0, 0.0}};
  std::vector<std::vector<int>> groups = {{0}, {1}, {2}};
  PathLoss loss{3.0, 0.0};
  const auto b = averaging_lower_bound(pts, loss, {0.1, 0.0}, groups);
  double exact = 0.0;
  for (const Vec2& p : pts) exact += std::pow(distance(p, {0.1, 0.0}), -3.0);
  CHECK(b.value == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("averaging lower bound: whole square ring") {
  const RingSpec r2 = ring(Lattice::square(), 2);
  std::vector<std::vector<int>> groups(1);
  for (int i = 0; i < static_cast<int>(r2.count); ++i) groups[0].push_back(i);
  PathLoss loss{4.0, 0.0};
  const auto b = averaging_lower_bound(r2.points, loss, {0.0, 0.0}, groups);
  CHECK(b.value == doctest::Approx(16.0 * std::pow(r2.mean_distance, -4.0)).epsilon(1e-14));
  double exact = 0.0;
  for (const Vec2& p : r2.points) exact += std::pow(p.norm(), -4.0);
  CHECK(b.value <= exact);
}

TEST_CASE("averaging lower bound: clearance precondition") {
  std::vector<Vec2> pts = {{0.3, 0.0}, {2.0, 0.0}};
  std::vector<std::vector<int>> groups = {{0, 1}};
  PathLoss loss{4.0, 0.0};
  CHECK_THROWS_AS(averaging_lower_bound(pts, loss, {0.4, 0.0}, groups),
                  std::invalid_argument);
}

TEST_CASE("sandwich on the module grid") {
  const double alphas[] = {2.5, 3.0, 3.5, 4.0, 5.0, 6.0};
  const double offsets[] = {0.0, 0.2, 0.4};

  for (double alpha : alphas) {
    for (double r : offsets) {
      // 1-D versions
      {
        const auto q = make_query(Lattice::line(), alpha, {r, 0.0});
        const auto oracle = interference_oracle(q, 20000.0);
        CHECK(line_net::line_interference_lower(alpha, r) <= oracle.lo);
        CHECK(oracle.hi <= line_net::line_interference_upper(alpha, r));
      }
      for (const Lattice& lat : {Lattice::square(), Lattice::triangular()}) {
        auto q = make_query(lat, alpha, {r, 0.0});
        const auto oracle = interference_oracle(q, 150.0);
        // ring-averaging lower bound from the first 20 rings
        std::vector<Vec2> pts;
        std::vector<std::vector<int>> groups;
        for (int k = 1; k <= 20; ++k) {
          const RingSpec rs = ring(lat, k);
          std::vector<int> g;
          for (const Vec2& p : rs.points) {
            g.push_back(static_cast<int>(pts.size()));
            pts.push_back(p);
          }
          groups.push_back(std::move(g));
        }
        const auto lower = averaging_lower_bound(pts, q.loss, q.offset, groups);
        CHECK(lower.value <= oracle.lo);

        q.near_radius = lat.family() == LatticeFamily::square ? 1.5 : std::sqrt(13.0 / 3.0);
        const auto upper = radial_upper_bound(q);
        CHECK(oracle.hi <= upper.value);
      }
    }
  }
}

TEST_CASE("sandwich includes the voronoi bound on a subgrid") {
  for (double alpha : {3.0, 4.0}) {
    for (double r : {0.0, 0.2}) {
      for (const Lattice& lat : {Lattice::square(), Lattice::triangular()}) {
        auto q = make_query(lat, alpha, {r, 0.0});
        const auto oracle = interference_oracle(q, 150.0);
        const auto vb = voronoi_upper_bound(q, 2.6, 40.0);
        CHECK(oracle.hi <= vb.value);
      }
    }
  }
}

TEST_CASE("offset monotonicity toward a nearest interferer") {
  for (const Lattice& lat : {Lattice::line(), Lattice::square(), Lattice::triangular()}) {
    double prev = 0.0;
    for (double r : {0.0, 0.15, 0.3, 0.45}) {
      const auto o = interference_oracle(make_query(lat, 4.0, {r, 0.0}), 150.0);
      CHECK(o.value >= prev - 1e-9);
      prev = o.value;
    }
  }
}

TEST_CASE("radial tail equals the poisson mean interference") {
  for (double alpha : {2.5, 3.0, 4.0, 6.0}) {
    for (double b : {1.5, 2.0817}) {
      const double lhs = radial_tail_integral(alpha, std::sqrt(3.0) / 2.0, b);
      const double rhs = poisson_mean_interference_outside(alpha, 2.0 / std::sqrt(3.0), b);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
  }
}

TEST_CASE("scale covariance") {
  const auto unit = interference_oracle(make_query(Lattice::square(), 4.0), 200.0);
  const auto scaled =
      interference_oracle(make_query(Lattice::custom(2.0, 0.0, 0.0, 2.0), 4.0), 400.0);
  CHECK(scaled.value * 16.0 == doctest::Approx(unit.value).epsilon(1e-6));
  CHECK(scaled.lo * 16.0 <= unit.hi);
  CHECK(scaled.hi * 16.0 >= unit.lo);
}

TEST_CASE("pointset interference matches the lattice oracle") {
  const double R = 300.0;
  const auto pts = Lattice::square().points_in_ball(R, true);
  const auto ps = pointset_interference(pts, R, {0.0, 0.0}, 4.0, 1.0, 0.5, std::sqrt(0.5));
  const double exact = square_net::square_exact(4.0);
  CHECK(ps.lo <= exact);
  CHECK(exact <= ps.hi);
  CHECK(ps.width() < 1e-4);
}
