#include <doctest.h>

#include <cmath>

#include "henon/green.hpp"
#include "support.hpp"

using namespace henon;
using fixture::Rng;

TEST_CASE("filtration radius") {
  const FiltrationRadius r = filtration_radius(fixture::quad());
  CHECK(r.R == 3.0);
  CHECK(r.doublings == 0);
  CHECK(r.samples_checked > 0);

  const FiltrationRadius r10 = filtration_radius(HenonMap({fixture::factor({0, 0, 10}, 1)}));
  CHECK(r10.factors[0].forward == 1.0);
  CHECK(r10.R == 1.0);

  const FiltrationRadius rw = filtration_radius(fixture::two_factor());
  double expect = 0;
  for (const auto& f : rw.factors) expect = std::max({expect, f.forward, f.backward});
  CHECK(rw.doublings == 0);
  CHECK(rw.R == expect);
}

TEST_CASE("regions") {
  CHECK(region_of({0, 10}, 3) == Region::v_plus);
  CHECK(region_of({10, 0}, 3) == Region::v_minus);
  CHECK(region_of({1, 1}, 3) == Region::v);
  CHECK(region_of({5, 5}, 3) == Region::v);
}

TEST_CASE("green_plus at known points") {
  const HenonMap h = fixture::quad();
  const GreenValue g0 = green_plus(h, {0, 0});
  CHECK(g0.value == 0);
  CHECK_FALSE(g0.escaped);
  CHECK(g0.status == EscapeStatus::bounded);

  const GreenValue g8 = green_plus(h, {0, 1e8});
  CHECK(g8.escaped);
  CHECK(std::abs(g8.value - std::log(1e8)) <= 1e-6);
  CHECK(g8.error_bound <= kDefaultTol);

  const GreenValue g2 = green_plus(h, {2, 2});
  CHECK(g2.value == 0);
  CHECK_FALSE(g2.escaped);
}

TEST_CASE("green_minus at known points") {
  const HenonMap h = fixture::quad();
  CHECK(green_minus(h, {0, 0}).value == 0);
  const GreenValue g = green_minus(h, {1e8, 0});
  CHECK(std::abs(g.value - std::log(1e8)) <= 1e-6);
}

TEST_CASE("green functions match plain long-double iteration") {
  Rng rng(41);
  for (const auto& h : fixture::all_maps()) {
    for (int k = 0; k < 60; ++k) {
      const Point z = rng.point(2.5);
      const GreenValue gp = green_plus(h, z);
      const GreenValue gm = green_minus(h, z);
      if (gp.escaped) {
        const double ref = fixture::naive_green_plus(h, z);
        CHECK(std::abs(gp.value - ref) <= gp.error_bound + 1e-12 * (1 + ref));
        CHECK(gp.error_bound <= kDefaultTol);
      }
      if (gm.escaped) {
        const double ref = fixture::naive_green_minus(h, z);
        CHECK(std::abs(gm.value - ref) <= gm.error_bound + 1e-12 * (1 + ref));
      }
    }
  }
}

TEST_CASE("green_minus equals green_plus of the swapped inverse") {
  Rng rng(42);
  for (const auto& h : fixture::all_maps()) {
    const HenonMap hat = h.swapped_inverse();
    for (int k = 0; k < 40; ++k) {
      const Point z = rng.point(2.0);
      const GreenValue a = green_minus(h, z);
      const GreenValue b = green_plus(hat, {z.y, z.x});
      CHECK(std::abs(a.value - b.value) <= 1e-8);
    }
  }
}

TEST_CASE("K+ membership") {
  const HenonMap h = fixture::quad();
  CHECK(in_K_plus(h, {0, 0}) == Membership::inside);
  CHECK(in_K_plus(h, {0, 10}) == Membership::outside);
  Rng rng(43);
  const double R = filtration_radius(h).R;
  for (int k = 0; k < 500; ++k) {
    const double r = rng.uniform(R * 1.0001, 50);
    const Point z{std::polar(rng.uniform(0, 0.999) * r, rng.uniform(0, 6.3)), std::polar(r, rng.uniform(0, 6.3))};
    CHECK(in_K_plus(h, z) == Membership::outside);
  }
}

TEST_CASE("clipped green function") {
  const HenonMap h = fixture::quad();
  CHECK(green_clipped(h, {0, 0}, 1).value == 0);
  const Point z{0.3, 5};
  CHECK(green_clipped(h, z, 0).value == green_plus(h, z).value);
  const LevelPoint lp = sample_level_plus(h, 2, Ray{0, 0.4}, 1e-10);
  const GreenValue v = green_clipped(h, lp.point, 1, 1e-10);
  CHECK(std::abs(v.value - 1) <= 2e-10 + v.error_bound);
  CHECK_THROWS_AS(green_clipped(h, z, -1), std::invalid_argument);
}

TEST_CASE("level sampling along rays") {
  const GreenFunction g(fixture::quad(), Direction::plus);
  const double c = std::log(10.0);
  const LevelPoint lp = sample_level_plus(g, c, Ray{0, 0}, 1e-9);
  CHECK(std::abs(g.evaluate(lp.point).value - c) <= 1e-8);
  CHECK(lp.t == doctest::Approx(10).epsilon(0.05));
  CHECK(green_clipped(g, lp.point, c).value <= 1e-9);

  double prev = lp.t;
  for (double level : {3.0, 4.0, 6.0}) {
    const LevelPoint next = sample_level_plus(g, level, Ray{0, 0}, 1e-9);
    CHECK(next.t > prev);
    prev = next.t;
  }
  CHECK_THROWS_AS(sample_level_plus(g, 1e6, Ray{0, 0}), BracketError);
}

TEST_CASE("multiplier estimates") {
  Rng rng(44);
  std::vector<Point> samples;
  for (int k = 0; k < 40; ++k) samples.push_back(rng.point(2.0));
  const HenonMap h = fixture::quad();
  const Multiplier mh = estimate_multiplier(h, AutoWord::from_henon(h), 0, samples);
  CHECK(std::abs(mh.b_plus - 2) <= 1e-6);
  const Multiplier mi = estimate_multiplier(h, AutoWord::from_henon(h).inverse(), 0, samples);
  CHECK(std::abs(mi.b_plus - 0.5) <= 1e-6);
  CHECK(std::abs(mi.b_minus - 2) <= 1e-5);

  const HenonMap c3 = fixture::cubic();
  const AutoWord sigma({AffineMap(-1, 0, 0, 0, -1, 0)});
  for (double level : {0.0, 0.3}) {
    const Multiplier ms = estimate_multiplier(c3, sigma, level, samples);
    CHECK(std::abs(ms.b_plus - 1) <= 1e-6);
  }
  CHECK_THROWS_AS(estimate_multiplier(h, sigma, 0, {Point{0, 0}}), std::invalid_argument);
}

TEST_CASE("CSV rows keep the fixed column order") {
  CHECK(green_csv_header() == "x_re,x_im,y_re,y_im,G_value,error_bound,iterations,escaped");
  GreenValue v;
  v.iterations = 1000;
  CHECK(green_csv_row({0, 0}, v) == "0,0,0,0,0,0,1000,false");
}

TEST_CASE("property: functorial identity within certified bounds") {
  Rng rng(45);
  for (const auto& h : fixture::all_maps()) {
    const GreenFunction g(h, Direction::plus);
    const double d = static_cast<double>(h.degree());
    for (int k = 0; k < 100; ++k) {
      const Point z = rng.point(2.0);
      const GreenValue a = g.evaluate(z), b = g.evaluate(h.apply(z));
      if (a.status == EscapeStatus::undecided || b.status == EscapeStatus::undecided) continue;
      CHECK(std::abs(b.value - d * a.value) <= b.error_bound + d * a.error_bound + 1e-12 * (1 + b.value));
    }
  }
}

TEST_CASE("property: logarithmic growth and global bound") {
  Rng rng(46);
  for (const auto& h : fixture::all_maps()) {
    const GreenFunction g(h, Direction::plus);
    const EscapeEngine& e = g.engine();
    const double K = e.l1_constant(), C = e.l3_constant();
    CHECK(std::isfinite(K));
    CHECK(std::isfinite(C));
    for (int k = 0; k < 200; ++k) {
      const double r = e.escape_threshold() * rng.uniform(1, 1e4);
      const Point z{std::polar(r * rng.uniform(0, 0.999), rng.uniform(0, 6.3)), std::polar(r, rng.uniform(0, 6.3))};
      CHECK(std::abs(g.evaluate(z).value - std::log(r)) <= K);
    }
    for (int k = 0; k < 200; ++k) {
      const Point z = rng.point(rng.uniform(0.1, 20));
      const double m = std::max({0.0, std::log(std::abs(z.x)), std::log(std::abs(z.y))});
      CHECK(g.evaluate(z).value <= m + C + 1e-12);
    }
  }
}

TEST_CASE("property: telescoping tail shrinks by at least d per sweep") {
  Rng rng(47);
  for (const auto& h : fixture::all_maps()) {
    const EscapeEngine e(h, Direction::plus);
    for (int k = 0; k < 20; ++k) {
      const double r = e.escape_threshold() * rng.uniform(1, 10);
      const Point z{std::polar(r * rng.uniform(0, 0.999), rng.uniform(0, 6.3)), std::polar(r, rng.uniform(0, 6.3))};
      double prev = std::numeric_limits<double>::infinity();
      for (int sweeps = 1; sweeps <= 4; ++sweeps) {
        const TelescopeResult t = e.telescope(z, 0, sweeps);
        CHECK(t.tail_bound <= prev / e.degree());
        prev = t.tail_bound;
      }
    }
  }
}

TEST_CASE("property: partial estimates contract geometrically past entry") {
  Rng rng(50);
  for (const auto& h : fixture::all_maps()) {
    const GreenFunction g(h, Direction::plus);
    const double d = g.engine().degree();
    for (int k = 0; k < 50; ++k) {
      const std::vector<double> v = g.partial_estimates(rng.point(3.0), 10);
      for (std::size_t n = 3; n < v.size(); ++n) {
        const double prev = std::abs(v[n - 1] - v[n - 2]), cur = std::abs(v[n] - v[n - 1]);
        if (prev <= 1e-13 * (1 + std::abs(v[n]))) break;
        CHECK(cur <= prev / d);
      }
    }
  }
}

TEST_CASE("partial estimates converge to G+") {
  Rng rng(57);
  for (const auto& h : fixture::all_maps()) {
    const GreenFunction g(h, Direction::plus);
    for (int k = 0; k < 20; ++k) {
      const Point z = rng.point(3.0);
      const GreenValue v = g.evaluate(z);
      const std::vector<double> est = g.partial_estimates(z, 12);
      if (!v.escaped) continue;
      REQUIRE(!est.empty());
      CHECK(std::abs(est.back() - v.value) <= v.error_bound + 1e-12 * (1 + v.value));
    }
  }
}

TEST_CASE("property: level points map to level d c") {
  const HenonMap h = fixture::quad();
  const GreenFunction g(h, Direction::plus);
  Rng rng(48);
  for (int k = 0; k < 20; ++k) {
    const LevelPoint lp = sample_level_plus(g, 0.7, Ray{rng.complex(1), rng.uniform(0, 6.28)}, 1e-10);
    CHECK(std::abs(g.evaluate(h.apply(lp.point)).value - 1.4) <= 1e-8);
  }
}

TEST_CASE("property: H maps V_R+ into itself") {
  Rng rng(49);
  for (const auto& h : fixture::all_maps()) {
    const double R = filtration_radius(h).R;
    int bad = 0;
    for (int k = 0; k < 10000; ++k) {
      // just inside the boundary pieces |y| = R and |x| = |y|
      const double r = R * (1 + rng.uniform(1e-9, 1e-3)) * (k % 2 ? 1 : rng.uniform(1, 3));
      const double sx = k % 2 ? rng.uniform(0, 1) : 1 - rng.uniform(1e-9, 1e-3);
      const Point z{std::polar(r * sx, rng.uniform(0, 6.3)), std::polar(r, rng.uniform(0, 6.3))};
      if (region_of(z, R) != Region::v_plus) continue;
      bad += region_of(h.apply(z), R) != Region::v_plus;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("bounded orbits report the certificate radius") {
  const GreenValue v = green_plus(fixture::quad(), {0.1, 0.1}, kDefaultTol, 30);
  CHECK(v.value == 0);
  CHECK_FALSE(v.escaped);
  CHECK(v.error_bound > 0);
  CHECK(v.error_bound < 1e-6);
}
