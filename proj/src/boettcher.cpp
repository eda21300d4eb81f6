#include "henon/boettcher.hpp"

#include <cmath>
#include <limits>

namespace henon {

BoettcherConstants leading_constant(const HenonMap& h) {
  const auto& fs = h.factors();
  BoettcherConstants out{QComplex(1), QComplex(1), h.degree()};
  std::uint64_t after = 1;
  for (std::size_t j = fs.size(); j-- > 0;) {
    out.c_H = out.c_H * pow(fs[j].p().leading(), static_cast<unsigned>(after));
    after *= fs[j].degree();
  }
  std::uint64_t before = 1;
  for (const auto& f : fs) {
    out.c_H_prime = out.c_H_prime * pow(f.p().leading() / f.delta(), static_cast<unsigned>(before));
    before *= f.degree();
  }
  return out;
}

namespace {

struct Series {
  TelescopeResult t;
  cplx log_start;
};

Series run(const EscapeEngine& e, const Point& z, double tol) {
  const Point o = e.orient(z);
  if (region_of(o, e.radius().R) != Region::v_plus)
    throw BranchError(e.direction() == Direction::plus ? "point is not in V_R+" : "point is not in V_R-");
  // Stop once exp(tail) - 1 <= tol.
  const double threshold = std::log1p(tol);
  Series s{e.telescope(o, threshold), std::log(o.y)};
  if (!std::isfinite(s.t.tail_bound) || s.t.tail_bound > threshold)
    throw BranchError("telescoping tail did not settle; move deeper into the escape region");
  return s;
}

}  // namespace

BoettcherValue boettcher(const EscapeEngine& e, const Point& z, double tol) {
  const Series s = run(e, z, tol);
  const cplx phi = std::exp(s.log_start + s.t.sum);
  const double eps = std::numeric_limits<double>::epsilon();
  BoettcherValue out;
  out.value = phi;
  out.log_ratio = s.t.sum;
  out.terms_used = s.t.sweeps;
  out.error_bound = std::abs(phi) * (std::expm1(s.t.tail_bound) + 8 * eps * (1 + std::abs(s.log_start)));
  return out;
}

BoettcherValue boettcher_plus(const HenonMap& h, const Point& z, double tol) {
  return boettcher(EscapeEngine(h, Direction::plus), z, tol);
}

BoettcherValue boettcher_minus(const HenonMap& h, const Point& z, double tol) {
  return boettcher(EscapeEngine(h, Direction::minus), z, tol);
}

BridgeValue green_from_boettcher(const EscapeEngine& e, const Point& z, double tol) {
  const Series s = run(e, z, tol);
  const double eps = std::numeric_limits<double>::epsilon();
  const double log_phi = s.log_start.real() + s.t.sum.real();
  const double constant = e.log_abs_c() / (e.degree() - 1);
  return {log_phi + constant, s.t.tail_bound + 16 * eps * (std::abs(log_phi) + std::abs(constant) + 1)};
}

BridgeValue green_from_boettcher(const HenonMap& h, const Point& z, double tol) {
  return green_from_boettcher(EscapeEngine(h, Direction::plus), z, tol);
}

}  // namespace henon
