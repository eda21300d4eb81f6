#pragma once

// Hénon maps as composition words, affine/elementary automorphism words,
// symbolic expansion and the Jung-case classifier.
//
// Order convention: every word stores its letters first-applied-first.
// A Hénon map written H = H_m o ... o H_1 is stored as {H_1, ..., H_m}.
// AutoWord::from_composition accepts the written (last-applied-first) order.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "henon/poly.hpp"
#include "henon/scalar.hpp"

namespace henon {

struct Point {
  cplx x;
  cplx y;
  friend bool operator==(const Point&, const Point&) = default;
};

double norm_inf(const Point& z);
double distance(const Point& a, const Point& b);

// Raised when a float evaluation leaves the representable range.
class EscapedRange : public std::overflow_error {
public:
  EscapedRange() : std::overflow_error("escaped-representable-range") {}
};

// (x, y) -> (y, p(y) - delta x)
class HenonFactor {
public:
  HenonFactor(Poly1<QComplex> p, QComplex delta, bool exact = true);
  static HenonFactor from_float(const std::vector<cplx>& p, cplx delta);

  bool exact() const { return exact_; }
  unsigned degree() const { return p_.degree(); }
  const Poly1<QComplex>& p() const { return p_; }
  const QComplex& delta() const { return delta_; }
  const Poly1<cplx>& p_float() const { return pf_; }
  cplx delta_float() const { return deltaf_; }

  template <class T> Poly1<T> poly() const;
  template <class T> T delta_as() const;

  Point apply(const Point& z) const { return {z.y, pf_.eval(z.y) - deltaf_ * z.x}; }
  Point apply_inverse(const Point& z) const { return {(pf_.eval(z.x) - z.y) / deltaf_, z.x}; }

private:
  void validate() const;

  Poly1<QComplex> p_;
  QComplex delta_;
  Poly1<cplx> pf_;
  cplx deltaf_;
  bool exact_ = true;
};

class HenonMap {
public:
  explicit HenonMap(std::vector<HenonFactor> factors);

  const std::vector<HenonFactor>& factors() const { return factors_; }
  std::uint64_t degree() const { return degree_; }
  Backend backend() const;

  // Throw EscapedRange when the image is not finite.
  Point apply(const Point& z) const;
  Point apply_inverse(const Point& z) const;

  // next o (*this)
  HenonMap then(const HenonMap& next) const;
  HenonMap power(unsigned n) const;

  // The word Ĥ with H^{-1} = tau o Ĥ o tau, tau(x, y) = (y, x): factors in
  // reverse order with p_j / delta_j and 1 / delta_j.
  HenonMap swapped_inverse() const;

private:
  std::vector<HenonFactor> factors_;
  std::uint64_t degree_ = 1;
};

std::uint64_t henon_degree(const HenonMap& h);

// (x, y) -> (a x + b y + f, c x + d y + g)
class AffineMap {
public:
  AffineMap(QComplex a, QComplex b, QComplex f, QComplex c, QComplex d, QComplex g, bool exact = true);
  static AffineMap from_float(cplx a, cplx b, cplx f, cplx c, cplx d, cplx g);
  static AffineMap identity() { return {1, 0, 0, 0, 1, 0}; }
  static AffineMap swap() { return {0, 1, 0, 1, 0, 0}; }

  const QComplex& a() const { return k_[0]; }
  const QComplex& b() const { return k_[1]; }
  const QComplex& f() const { return k_[2]; }
  const QComplex& c() const { return k_[3]; }
  const QComplex& d() const { return k_[4]; }
  const QComplex& g() const { return k_[5]; }
  bool exact() const { return exact_; }

  // Second component independent of x.
  bool is_elementary() const { return c().is_zero(); }
  bool is_diagonal() const { return b().is_zero() && c().is_zero(); }

  Point apply(const Point& z) const;
  AffineMap inverse() const;
  template <class T> PolyMap2<T> expand() const;

  friend bool operator==(const AffineMap& p, const AffineMap& q) { return p.k_ == q.k_; }

private:
  std::vector<QComplex> k_;
  std::vector<cplx> kf_;
  bool exact_ = true;
};

// outer o inner
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

// Closed form of s^n for s(x, y) = (a x + f, d y + g).
AffineMap affine_power(const AffineMap& s, unsigned n);

struct AffineSplit {
  AffineMap outer;  // (b x + c y, y)
  AffineMap inner;  // (alpha2 x + beta2 y + delta2, s2 y + r2)
};

// a = outer o tau o inner for any nonzero b; rejects elementary input.
AffineSplit normalize_affine(const AffineMap& a, const QComplex& b);

// (x, y) -> (alpha x + p(y), beta y + gamma)
class ElementaryMap {
public:
  ElementaryMap(QComplex alpha, QComplex beta, QComplex gamma, Poly1<QComplex> p, bool exact = true);
  static ElementaryMap from_affine(const AffineMap& a);

  const QComplex& alpha() const { return alpha_; }
  const QComplex& beta() const { return beta_; }
  const QComplex& gamma() const { return gamma_; }
  const Poly1<QComplex>& p() const { return p_; }
  bool exact() const { return exact_; }
  bool is_affine() const { return p_.degree() <= 1; }

  Point apply(const Point& z) const;
  ElementaryMap inverse() const;
  AffineMap to_affine() const;
  template <class T> PolyMap2<T> expand() const;

private:
  QComplex alpha_, beta_, gamma_;
  Poly1<QComplex> p_;
  cplx alphaf_, betaf_, gammaf_;
  Poly1<cplx> pf_;
  bool exact_ = true;
};

// outer o inner
ElementaryMap compose(const ElementaryMap& outer, const ElementaryMap& inner);

using Letter = std::variant<AffineMap, ElementaryMap, HenonFactor>;

class AutoWord {
public:
  explicit AutoWord(std::vector<Letter> letters);
  static AutoWord from_composition(std::vector<Letter> written_order);
  static AutoWord from_henon(const HenonMap& h);

  const std::vector<Letter>& letters() const { return letters_; }
  bool exact() const;
  bool is_henon_word() const;

  Point apply(const Point& z) const;
  AutoWord inverse() const;
  // next o (*this)
  AutoWord then(const AutoWord& next) const;

private:
  std::vector<Letter> letters_;
};

template <class T> PolyMap2<T> word_expand(const HenonMap& h, std::size_t budget = kDefaultMonomialBudget);
template <class T> PolyMap2<T> word_expand(const AutoWord& w, std::size_t budget = kDefaultMonomialBudget);

enum class WordCase { case_i, case_ii, case_iii, case_iv, affine, henon_word };
const char* case_name(WordCase c);

// A point of the line at infinity, or a verdict that there is none.
struct Indeterminacy {
  enum class Kind { none, x_infinity, w_point, unresolved };
  Kind kind = Kind::none;
  QComplex w;  // meaningful for w_point: [w:1:0]
  std::string to_text() const;
};

struct WordClass {
  WordCase kind;
  Indeterminacy indeterminacy_fwd;
  Indeterminacy indeterminacy_bwd;
  // Reduced alternating pattern in written order, e.g. "AE" for a o e.
  std::string pattern;
};

WordClass classify_word(const AutoWord& w, std::size_t budget = kDefaultMonomialBudget);

// Indeterminacy point of the extension to P^2, read off the top-degree forms.
Indeterminacy indeterminacy_of(const PolyMap2<QComplex>& m);

// ----------------------------------------------------------------------------

template <class T> Poly1<T> HenonFactor::poly() const {
  if constexpr (std::is_same_v<T, QComplex>) return p_;
  else return pf_;
}

template <class T> T HenonFactor::delta_as() const {
  if constexpr (std::is_same_v<T, QComplex>) return delta_;
  else return deltaf_;
}

}  // namespace henon
