#include <doctest.h>

#include <cmath>
#include <numbers>

#include "henon/boettcher.hpp"
#include "support.hpp"

using namespace henon;
using fixture::Rng;

namespace {

cplx to_float(const QComplex& q) { return to_cplx(q); }

// Sweep-level product phi = y0 prod (y_{k+1} / (c_H y_k^d))^{1/d^{k+1}},
// each factor taken on the principal branch, in long double.
cplx naive_boettcher_plus(const HenonMap& h, const Point& z) {
  using lc = fixture::lcplx;
  const lc c = lc(to_float(leading_constant(h).c_H));
  const long double d = static_cast<long double>(h.degree());
  lc x = z.x, y = z.y;
  lc acc = std::log(y);
  long double scale = 1;
  for (int k = 0; k < 40 && std::abs(y) < 1e300L; ++k) {
    const lc y0 = y;
    for (const auto& f : h.factors()) {
      lc py = 0;
      for (std::size_t j = f.p_float().coeffs().size(); j-- > 0;) py = py * y + lc(f.p_float()[j]);
      const lc ny = py - lc(f.delta_float()) * x;
      x = y;
      y = ny;
    }
    const lc step = std::log(y) - std::log(c) - d * std::log(y0);
    scale /= d;
    acc += lc(step.real(), std::remainder(step.imag(), 2 * std::numbers::pi_v<long double>)) * scale;
  }
  return cplx(std::exp(acc));
}

Point deep_point(Rng& rng, const EscapeEngine& e, double lo, double hi) {
  const double r = e.escape_threshold() * rng.uniform(lo, hi);
  return {std::polar(r * rng.uniform(0, 0.9), rng.uniform(0, 6.3)), std::polar(r, rng.uniform(0, 6.3))};
}

}  // namespace

TEST_CASE("leading constants") {
  const BoettcherConstants q = leading_constant(fixture::quad());
  CHECK(q.c_H == QComplex(1));
  CHECK(q.c_H_prime == QComplex(1));
  CHECK(q.degree == 2);
  CHECK(leading_constant(fixture::scaled4()).c_H == QComplex(4));
  // c1 = c2 = 1, delta1 = 1, delta2 = 2: c'_H = (1/2)^2
  const BoettcherConstants t = leading_constant(fixture::two_factor());
  CHECK(t.c_H == QComplex(1));
  CHECK(t.c_H_prime == QComplex(mpq_class(1, 4)));
  CHECK(t.degree == 6);
  // c1 = 1, c2 = 2: c_H = 1^2 * 2; c'_H = (1/(1/3))^1 * (2/(-1))^2 = 12
  const BoettcherConstants m = leading_constant(fixture::mixed());
  CHECK(m.c_H == QComplex(2));
  CHECK(m.c_H_prime == QComplex(12));
}

TEST_CASE("phi+ of the scaled quadratic near infinity") {
  const HenonMap h = fixture::scaled4();
  const BoettcherValue v = boettcher_plus(h, {0, 1e6});
  CHECK(std::abs(v.value / 1e6 - 1.0) <= 1e-6);
  CHECK(v.error_bound <= 1e-13 * std::abs(v.value) + 1e-6);
}

TEST_CASE("points outside the safe region are rejected") {
  CHECK_THROWS_AS(boettcher_plus(fixture::quad(), {0, 0}), BranchError);
  CHECK_THROWS_AS(boettcher_plus(fixture::quad(), {10, 1}), BranchError);
  CHECK_THROWS_AS(boettcher_minus(fixture::quad(), {1, 10}), BranchError);
}

TEST_CASE("phi+ agrees with a sweep-level reference product") {
  Rng rng(51);
  for (const auto& h : fixture::all_maps()) {
    const EscapeEngine e(h, Direction::plus);
    for (int k = 0; k < 30; ++k) {
      const Point z = deep_point(rng, e, 2, 1e3);
      const BoettcherValue v = boettcher(e, z);
      const cplx ref = naive_boettcher_plus(h, z);
      CHECK(std::abs(v.value - ref) <= v.error_bound + 1e-12 * std::abs(ref));
    }
  }
}

TEST_CASE("property: functional equation phi+ o H = c_H phi+^d") {
  Rng rng(52);
  for (const auto& h : fixture::all_maps()) {
    const EscapeEngine e(h, Direction::plus);
    const cplx c = to_float(leading_constant(h).c_H);
    const double d = static_cast<double>(h.degree());
    for (int k = 0; k < 50; ++k) {
      const Point z = deep_point(rng, e, 2, 100);
      const BoettcherValue a = boettcher(e, z);
      const BoettcherValue b = boettcher(e, h.apply(z));
      // compare in log form: log phi(Hz) - log c - d log phi(z), modulo 2 pi i
      const cplx diff = std::log(b.value) - std::log(c) - d * std::log(a.value);
      const double re = diff.real();
      const double im = std::remainder(diff.imag(), 2 * std::numbers::pi);
      const double rel = std::abs(cplx(re, im));
      CHECK(rel <= b.error_bound / std::abs(b.value) + d * a.error_bound / std::abs(a.value) + 1e-12);
    }
  }
}

TEST_CASE("property: phi- o H^{-1} = c'_H phi-^d") {
  Rng rng(53);
  for (const auto& h : fixture::all_maps()) {
    const EscapeEngine e(h, Direction::minus);
    const cplx c = to_float(leading_constant(h).c_H_prime);
    const double d = static_cast<double>(h.degree());
    for (int k = 0; k < 30; ++k) {
      const Point o = deep_point(rng, e, 2, 100);
      const Point z{o.y, o.x};
      const BoettcherValue a = boettcher(e, z);
      const BoettcherValue b = boettcher(e, h.apply_inverse(z));
      const cplx diff = std::log(b.value) - std::log(c) - d * std::log(a.value);
      const double rel = std::abs(cplx(diff.real(), std::remainder(diff.imag(), 2 * std::numbers::pi)));
      CHECK(rel <= b.error_bound / std::abs(b.value) + d * a.error_bound / std::abs(a.value) + 1e-12);
    }
  }
}

TEST_CASE("property: phi+ / y tends to 1") {
  Rng rng(54);
  for (const auto& h : fixture::all_maps()) {
    const EscapeEngine e(h, Direction::plus);
    for (double scale : {1e3, 1e6, 1e9}) {
      double worst = 0;
      for (int k = 0; k < 20; ++k) {
        const Point z = deep_point(rng, e, scale, scale * 2);
        worst = std::max(worst, std::abs(fixture::cexpm1(boettcher(e, z).log_ratio)));
      }
      CHECK(worst <= 10 * e.l1_constant() / scale + 1e-12);
    }
  }
}

TEST_CASE("property: bridge to the Green function") {
  Rng rng(55);
  for (const auto& h : fixture::all_maps()) {
    const GreenFunction g(h, Direction::plus);
    for (int k = 0; k < 50; ++k) {
      const Point z = deep_point(rng, g.engine(), 1.5, 1e4);
      const BridgeValue b = green_from_boettcher(g.engine(), z);
      const GreenValue v = g.evaluate(z);
      CHECK(std::abs(b.value - v.value) <= b.error_bound + v.error_bound + 1e-12);
    }
  }
}
