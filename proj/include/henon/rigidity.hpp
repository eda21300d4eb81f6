#pragma once

// Mechanical checks of the rigidity identities: functorial scaling of the
// Green functions, level-set invariance (sampled), scaled commutation by
// exact expansion, the two-level constant relation, iterate coincidence and
// the affine normal forms.
//
// Reports render as "key: value" lines with a leading verdict line and a
// fixed key order, so they can be compared textually.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "henon/boettcher.hpp"
#include "henon/green.hpp"
#include "henon/maps.hpp"

namespace henon {

struct FunctorialReport {
  bool pass = true;
  std::size_t samples = 0;
  std::size_t escaped_plus = 0;
  std::size_t escaped_minus = 0;
  std::size_t skipped = 0;  // undecided or overflowing evaluations
  double max_residual_plus = 0;
  double max_residual_minus = 0;
  double max_excess = 0;  // largest residual minus its certified allowance
  double tol = 0;
  std::string to_text() const;
};

// Adds a perturbation to G+(z) for sample i; used for negative controls.
using GreenPerturbation = std::function<double(std::size_t i, double value)>;

// Samples uniform points in [-box, box]^4 (real and imaginary parts).
FunctorialReport verify_functorial(const HenonMap& h, std::size_t n_samples, double tol = 1e-6,
                                   std::uint64_t seed = 1, double box = 3.0,
                                   const GreenPerturbation& perturb = {});

struct InvarianceReport {
  bool pass = true;
  double level = 0;
  std::size_t samples = 0;
  std::size_t sampling_failures = 0;
  double max_deviation = 0;
  double tol = 0;
  std::string to_text() const;
};

// Sampled necessary condition for F(K_{H,c}+) = K_{H,c}+; never a proof.
InvarianceReport verify_invariance(const HenonMap& h, const AutoWord& f, double c, std::size_t n_samples,
                                   double tol = 1e-6, std::uint64_t seed = 1);

// C(x, y) = (delta_minus x, delta_plus y)
struct DiagonalScaling {
  QComplex delta_minus{1};
  QComplex delta_plus{1};
  bool exact = true;
  AffineMap as_affine() const;
};

struct CommutationReport {
  bool holds = false;
  bool rel1 = false;  // second components: (H2 o H1)_2 = delta_plus (H1 o H2)_2
  bool rel2 = false;  // first components:  (H2 o H1)_1 = delta_minus (H1 o H2)_1
  DiagonalScaling C;
  bool exact = true;
  double max_residual = 0;
  double tol = 0;
  // moduli predicted from the leading constants, c and d read off c_H, c'_H
  double predicted_delta_plus = 0;
  double predicted_delta_minus = 0;
  std::string to_text() const;
};

// H2 o H1 = C o H1 o H2 checked by expansion; tol is ignored (0) when
// every input is exact.
CommutationReport check_commutation_scaled(const HenonMap& h1, const HenonMap& h2, const DiagonalScaling& C,
                                           double tol = 1e-9, std::size_t budget = kDefaultMonomialBudget);

struct TwoLevelResult {
  double delta_plus = 0;   // e^{c (d_H1 - 1)(d_H2 - 1)}, c = c1 - c2
  double delta_minus = 0;  // e^{d (d_H1 - 1)(d_H2 - 1)}, d = d1 - d2
  // delta_plus forced by c_H1^{d_H2} c_H2 = delta_plus c_H2^{d_H1} c_H1
  QComplex delta_plus_exact;
  double relc_c = 0;  // log|c_H1|/(d_H1 - 1) - log|c_H2|/(d_H2 - 1)
  // |delta_plus_exact|^2 - (|c_H1|^2)^(d_H2-1) / (|c_H2|^2)^(d_H1-1), exact
  QComplex relation_residual;
  // | |delta_plus_exact| - e^{relc_c (d_H1 - 1)(d_H2 - 1)} | in float
  double modulus_residual = 0;
  std::string to_text() const;
};

TwoLevelResult two_level_delta(const HenonMap& h1, const HenonMap& h2, double c1, double c2, double d1, double d2);

// Lexicographically least (m, n) with F^m = H^n, 1 <= m <= mmax, 1 <= n <= nmax.
std::optional<std::pair<unsigned, unsigned>> iterate_coincidence(const HenonMap& f, const HenonMap& h, unsigned mmax,
                                                                 unsigned nmax,
                                                                 std::size_t budget = kDefaultMonomialBudget);
std::optional<std::pair<unsigned, unsigned>> iterate_coincidence(const AutoWord& f, const HenonMap& h, unsigned mmax,
                                                                 unsigned nmax,
                                                                 std::size_t budget = kDefaultMonomialBudget);

enum class AffineForm { k_plus, level };

// k_plus: (a x + f, d y + g) with |a| = |d| = 1; level: (a x + b y + f, d y + g).
bool check_affine_form(const AffineMap& s, AffineForm mode);

}  // namespace henon
