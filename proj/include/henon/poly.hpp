#pragma once

// Univariate and bivariate polynomials over either scalar backend, plus
// polynomial self-maps of C^2 and their composition.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "henon/scalar.hpp"

namespace henon {

inline constexpr std::size_t kDefaultMonomialBudget = 1'000'000;

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <class T>
class Poly1 {
public:
  Poly1() : coeffs_{T(0)} {}
  explicit Poly1(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly1 monomial(unsigned k, T c) {
    std::vector<T> v(k + 1, T(0));
    v[k] = std::move(c);
    return Poly1(std::move(v));
  }

  unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
  bool is_zero() const { return coeffs_.size() == 1 && henon::is_zero(coeffs_[0]); }
  const T& leading() const { return coeffs_.back(); }
  const T& operator[](unsigned k) const { return coeffs_[k]; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  T eval(const T& z) const {
    T acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
  }

  Poly1 scaled(const T& s) const {
    std::vector<T> v = coeffs_;
    for (auto& c : v) c = c * s;
    return Poly1(std::move(v));
  }

  friend Poly1 operator+(const Poly1& a, const Poly1& b) {
    std::vector<T> v(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] = v[k] + a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] = v[k] + b.coeffs_[k];
    return Poly1(std::move(v));
  }

  friend Poly1 operator*(const Poly1& a, const Poly1& b) {
    std::vector<T> v(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        v[i + j] = v[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Poly1(std::move(v));
  }

  // p(scale * y + shift)
  Poly1 compose_affine(const T& scale, const T& shift) const {
    Poly1 lin(std::vector<T>{shift, scale});
    Poly1 acc(std::vector<T>{coeffs_.back()});
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;)
      acc = acc * lin + Poly1(std::vector<T>{coeffs_[k]});
    return acc;
  }

  friend bool operator==(const Poly1& a, const Poly1& b) { return a.coeffs_ == b.coeffs_; }

private:
  void trim() {
    if (coeffs_.empty()) coeffs_.push_back(T(0));
    while (coeffs_.size() > 1 && henon::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

struct Monomial {
  std::uint32_t i = 0;  // power of x
  std::uint32_t j = 0;  // power of y
  std::uint32_t total() const { return i + j; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded-lex: total degree ascending, then higher x-power first.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.total() != b.total()) return a.total() < b.total();
    return a.i > b.i;
  }
};

template <class T> class PolyMap2;

template <class T>
class Poly2 {
public:
  using Term = std::pair<Monomial, T>;
  using Accumulator = std::map<Monomial, T, GradedLex>;

  Poly2() = default;

  static Poly2 constant(const T& c) { return from_map({{Monomial{0, 0}, c}}); }
  static Poly2 x() { return from_map({{Monomial{1, 0}, T(1)}}); }
  static Poly2 y() { return from_map({{Monomial{0, 1}, T(1)}}); }

  static Poly2 from_map(const Accumulator& acc) {
    Poly2 p;
    p.terms_.reserve(acc.size());
    for (const auto& [m, c] : acc)
      if (!henon::is_zero(c)) p.terms_.emplace_back(m, c);
    for (const auto& t : p.terms_) p.degree_ = std::max(p.degree_, t.first.total());
    return p;
  }

  // Univariate polynomial in one variable (0 = x, 1 = y).
  static Poly2 from_poly1(const Poly1<T>& q, int var) {
    Accumulator acc;
    for (unsigned k = 0; k <= q.degree(); ++k)
      acc[var == 0 ? Monomial{k, 0} : Monomial{0, k}] = q[k];
    return from_map(acc);
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const { return degree_; }

  T coeff(std::uint32_t i, std::uint32_t j) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), Monomial{i, j},
                               [](const Term& t, const Monomial& m) { return GradedLex{}(t.first, m); });
    if (it != terms_.end() && it->first == Monomial{i, j}) return it->second;
    return T(0);
  }

  // Degree-k homogeneous component.
  Poly2 homogeneous_part(unsigned k) const {
    Poly2 p;
    for (const auto& t : terms_)
      if (t.first.total() == k) p.terms_.push_back(t);
    p.degree_ = p.terms_.empty() ? 0 : k;
    return p;
  }

  T eval(const T& x, const T& y) const {
    if (terms_.empty()) return T(0);
    unsigned mx = 0, my = 0;
    for (const auto& t : terms_) {
      mx = std::max(mx, t.first.i);
      my = std::max(my, t.first.j);
    }
    std::vector<T> px{T(1)}, py{T(1)};
    for (unsigned k = 0; k < mx; ++k) px.push_back(px.back() * x);
    for (unsigned k = 0; k < my; ++k) py.push_back(py.back() * y);
    T acc(0);
    for (const auto& [m, c] : terms_) acc = acc + c * px[m.i] * py[m.j];
    return acc;
  }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) { return combine(a, b, false); }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) { return combine(a, b, true); }

  Poly2 scaled(const T& s) const {
    Accumulator acc;
    for (const auto& [m, c] : terms_) acc[m] = c * s;
    return from_map(acc);
  }

  static Poly2 multiply(const Poly2& a, const Poly2& b, std::size_t budget = kDefaultMonomialBudget) {
    Accumulator acc;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m{ma.i + mb.i, ma.j + mb.j};
        auto it = acc.find(m);
        if (it == acc.end()) {
          acc.emplace(m, ca * cb);
          if (acc.size() > budget)
            throw BudgetExceeded("polynomial product exceeds monomial budget of " + std::to_string(budget));
        } else {
          it->second = it->second + ca * cb;
        }
      }
    }
    return from_map(acc);
  }

  friend Poly2 operator*(const Poly2& a, const Poly2& b) { return multiply(a, b); }

  // p(m.first, m.second)
  Poly2 compose(const PolyMap2<T>& m, std::size_t budget = kDefaultMonomialBudget) const;

  friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

  // Graded-lex list "(c) * x^i * y^j + ..."; "0" for the zero polynomial.
  std::string to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + henon::to_text(c) + ") * x^" + std::to_string(m.i) + " * y^" + std::to_string(m.j);
    }
    return out;
  }

private:
  static Poly2 combine(const Poly2& a, const Poly2& b, bool subtract) {
    Accumulator acc;
    for (const auto& [m, c] : a.terms_) acc[m] = c;
    for (const auto& [m, c] : b.terms_) {
      auto it = acc.find(m);
      T v = subtract ? T(0) - c : c;
      if (it == acc.end()) acc.emplace(m, v);
      else it->second = it->second + v;
    }
    return from_map(acc);
  }

  std::vector<Term> terms_;
  unsigned degree_ = 0;
};

template <class T>
class PolyMap2 {
public:
  PolyMap2() : first(Poly2<T>::x()), second(Poly2<T>::y()) {}
  PolyMap2(Poly2<T> f, Poly2<T> s) : first(std::move(f)), second(std::move(s)) {}

  static PolyMap2 identity() { return {}; }

  std::pair<T, T> eval(const T& x, const T& y) const { return {first.eval(x, y), second.eval(x, y)}; }
  unsigned total_degree() const { return std::max(first.total_degree(), second.total_degree()); }
  std::size_t size() const { return first.size() + second.size(); }

  std::string to_text() const { return "first: " + first.to_text() + "\nsecond: " + second.to_text(); }

  friend bool operator==(const PolyMap2& a, const PolyMap2& b) {
    return a.first == b.first && a.second == b.second;
  }

  Poly2<T> first;
  Poly2<T> second;
};

template <class T>
Poly2<T> Poly2<T>::compose(const PolyMap2<T>& m, std::size_t budget) const {
  if (terms_.empty()) return {};
  unsigned mx = 0, my = 0;
  for (const auto& t : terms_) {
    mx = std::max(mx, t.first.i);
    my = std::max(my, t.first.j);
  }
  std::vector<Poly2> px{constant(T(1))}, py{constant(T(1))};
  for (unsigned k = 0; k < mx; ++k) px.push_back(multiply(px.back(), m.first, budget));
  for (unsigned k = 0; k < my; ++k) py.push_back(multiply(py.back(), m.second, budget));
  Accumulator acc;
  for (const auto& [mono, c] : terms_) {
    Poly2 term = multiply(px[mono.i], py[mono.j], budget);
    for (const auto& [tm, tc] : term.terms_) {
      auto it = acc.find(tm);
      if (it == acc.end()) {
        acc.emplace(tm, c * tc);
        if (acc.size() > budget)
          throw BudgetExceeded("composition exceeds monomial budget of " + std::to_string(budget));
      } else {
        it->second = it->second + c * tc;
      }
    }
  }
  return from_map(acc);
}

// f o g  (g applied first)
template <class T>
PolyMap2<T> compose(const PolyMap2<T>& f, const PolyMap2<T>& g, std::size_t budget = kDefaultMonomialBudget) {
  return {f.first.compose(g, budget), f.second.compose(g, budget)};
}

// Largest coefficient difference modulus over both components.
template <class T>
double max_coeff_difference(const PolyMap2<T>& f, const PolyMap2<T>& g) {
  double worst = 0.0;
  auto scan = [&worst](const Poly2<T>& a, const Poly2<T>& b) {
    Poly2<T> diff = a - b;
    for (const auto& t : diff.terms()) worst = std::max(worst, modulus(t.second));
  };
  scan(f.first, g.first);
  scan(f.second, g.second);
  return worst;
}

// True iff every coefficient difference has modulus <= tol. On the exact
// backend the comparison is structural and tol must be zero.
template <class T>
bool polymap_equal(const PolyMap2<T>& f, const PolyMap2<T>& g, double tol) {
  if constexpr (std::is_same_v<T, QComplex>) {
    if (tol != 0.0) throw std::invalid_argument("exact comparison requires tol = 0");
    return f == g;
  } else {
    return max_coeff_difference(f, g) <= tol;
  }
}

template <class T>
PolyMap2<cplx> to_float(const PolyMap2<T>& m) {
  if constexpr (std::is_same_v<T, cplx>) {
    return m;
  } else {
    auto conv = [](const Poly2<T>& p) {
      typename Poly2<cplx>::Accumulator acc;
      for (const auto& [mono, c] : p.terms()) acc[mono] = c.to_cplx();
      return Poly2<cplx>::from_map(acc);
    };
    return {conv(m.first), conv(m.second)};
  }
}

}  // namespace henon
