#pragma once

// Shared fixtures for the test binaries: the test maps, a small seeded
// generator, and reference computations that avoid the library's engine.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "henon/maps.hpp"

namespace fixture {

using henon::HenonFactor;
using henon::HenonMap;
using henon::Point;
using henon::Poly1;
using henon::QComplex;
using henon::cplx;

inline HenonFactor factor(std::vector<QComplex> p, QComplex delta) {
  return HenonFactor(Poly1<QComplex>(std::move(p)), std::move(delta));
}

// (y, y^2 - x)
inline HenonMap quad() { return HenonMap({factor({0, 0, 1}, 1)}); }
// (y, y^3 - x)
inline HenonMap cubic() { return HenonMap({factor({0, 0, 0, 1}, 1)}); }
// (y, y^3 - (1 - i) x)
inline HenonMap cubic_skew() { return HenonMap({factor({0, 0, 0, 1}, QComplex(1, -1))}); }
// (y, 4 y^2 - x), c_H = 4
inline HenonMap scaled4() { return HenonMap({factor({0, 0, 4}, 1)}); }
// p1 = y^2, delta1 = 1 then p2 = y^3, delta2 = 2; degree 6
inline HenonMap two_factor() { return HenonMap({factor({0, 0, 1}, 1), factor({0, 0, 0, 1}, 2)}); }
// p1 = y^2 + 1/2 y - 1, delta1 = 1/3 then p2 = 2 y^2 + i, delta2 = -1; degree 4
inline HenonMap mixed() {
  return HenonMap({factor({-1, QComplex(mpq_class(1, 2)), 1}, QComplex(mpq_class(1, 3))),
                   factor({QComplex(0, 1), 0, 2}, -1)});
}

inline std::vector<HenonMap> all_maps() { return {quad(), cubic(), cubic_skew(), scaled4(), two_factor(), mixed()}; }

// splitmix64
class Rng {
public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * (next() >> 11) * 0x1.0p-53; }
  long integer(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  cplx complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  Point point(double r) { return {complex(r), complex(r)}; }
  // Random small rational with a nonzero denominator.
  mpq_class rational() {
    mpq_class q(integer(-9, 9), integer(1, 7));
    q.canonicalize();
    return q;
  }
  QComplex qcomplex() { return QComplex(rational(), rational()); }
  QComplex nonzero_qcomplex() {
    for (;;) {
      QComplex v = qcomplex();
      if (!v.is_zero()) return v;
    }
  }

private:
  std::uint64_t s_;
};

// e^z - 1 without cancellation for small z.
inline cplx cexpm1(cplx z) {
  const double s = std::sin(z.imag() / 2);
  return {std::expm1(z.real()) * std::cos(z.imag()) - 2 * s * s, std::exp(z.real()) * std::sin(z.imag())};
}

using lcplx = std::complex<long double>;

// Plain iteration in long double until |y| is astronomically large, then
// (log|y_n| + log|c_H|/(d - 1)) / d^n. The truncation error is below
// 2 B / (|y_n| d^n), far under double precision once |y_n| > 1e40.
inline double naive_green_plus(const HenonMap& h, const Point& z, int maxiter = 2000) {
  lcplx x = z.x, y = z.y;
  long double log_c = 0, weight = 1;
  for (auto it = h.factors().rbegin(); it != h.factors().rend(); ++it) {
    log_c += weight * std::log(std::abs(lcplx(it->p_float().leading())));
    weight *= it->degree();
  }
  const long double d = static_cast<long double>(h.degree());
  for (int n = 0; n < maxiter; ++n) {
    if (std::abs(y) > 1e40L && std::abs(x) < std::abs(y))
      return static_cast<double>((std::log(std::abs(y)) + log_c / (d - 1)) / std::pow(d, n));
    for (const auto& f : h.factors()) {
      lcplx py = 0;
      for (std::size_t k = f.p_float().coeffs().size(); k-- > 0;) py = py * y + lcplx(f.p_float()[k]);
      const lcplx ny = py - lcplx(f.delta_float()) * x;
      x = y;
      y = ny;
    }
  }
  return 0;
}

// Backward counterpart: H_j^{-1}(x, y) = ((p_j(x) - y)/delta_j, x), factors
// in reverse, escape along x, constant c'_H.
inline double naive_green_minus(const HenonMap& h, const Point& z, int maxiter = 2000) {
  lcplx x = z.x, y = z.y;
  long double log_c = 0, weight = 1;
  for (const auto& f : h.factors()) {
    log_c += weight * std::log(std::abs(lcplx(f.p_float().leading()) / lcplx(f.delta_float())));
    weight *= f.degree();
  }
  const long double d = static_cast<long double>(h.degree());
  for (int n = 0; n < maxiter; ++n) {
    if (std::abs(x) > 1e40L && std::abs(y) < std::abs(x))
      return static_cast<double>((std::log(std::abs(x)) + log_c / (d - 1)) / std::pow(d, n));
    for (auto it = h.factors().rbegin(); it != h.factors().rend(); ++it) {
      lcplx px = 0;
      for (std::size_t k = it->p_float().coeffs().size(); k-- > 0;) px = px * x + lcplx(it->p_float()[k]);
      const lcplx nx = (px - y) / lcplx(it->delta_float());
      y = x;
      x = nx;
    }
  }
  return 0;
}

}  // namespace fixture
