#pragma once

// Böttcher coordinates near infinity. phi+ lives on V_R+ and satisfies
// phi+ o H = c_H (phi+)^d, phi+ ~ y; phi- lives on V_R- with
// phi- o H^{-1} = c'_H (phi-)^d, phi- ~ x.

#include <cstdint>

#include "henon/green.hpp"

namespace henon {

struct BoettcherConstants {
  QComplex c_H;        // prod_j c_j^(d_{j+1} ... d_m)
  QComplex c_H_prime;  // prod_j (c_j / delta_j)^(d_{j-1} ... d_1)
  std::uint64_t degree = 0;
};

BoettcherConstants leading_constant(const HenonMap& h);

struct BoettcherValue {
  cplx value;
  double error_bound = 0;  // absolute
  int terms_used = 0;
  // log(phi / y0) for phi+ (log(phi / x0) for phi-); kept so that phi / y0 - 1
  // can be read without cancellation.
  cplx log_ratio;
};

inline constexpr double kBoettcherTol = 1e-13;

// Relative truncation tolerance. Throws BranchError outside the safe region.
BoettcherValue boettcher_plus(const HenonMap& h, const Point& z, double tol = kBoettcherTol);
BoettcherValue boettcher_minus(const HenonMap& h, const Point& z, double tol = kBoettcherTol);
BoettcherValue boettcher(const EscapeEngine& e, const Point& z, double tol = kBoettcherTol);

struct BridgeValue {
  double value = 0;
  double error_bound = 0;
};

// log|phi+(z)| + log|c_H| / (d - 1), evaluated without forming phi+.
BridgeValue green_from_boettcher(const HenonMap& h, const Point& z, double tol = kBoettcherTol);
BridgeValue green_from_boettcher(const EscapeEngine& e, const Point& z, double tol = kBoettcherTol);

}  // namespace henon
