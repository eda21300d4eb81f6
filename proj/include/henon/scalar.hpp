#pragma once

// Scalar backends shared by every algebraic routine:
//   cplx     - IEEE double complex, used by the dynamics engines
//   QComplex - exact complex rationals (GMP), used for identity checks

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace henon {

using cplx = std::complex<double>;

enum class Backend { float64, exact };

const char* backend_name(Backend b);

class QComplex {
public:
  QComplex() = default;
  QComplex(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  QComplex(mpq_class re, mpq_class im = 0);

  // Exact conversion of the binary value of a finite double pair.
  static QComplex from_double(cplx v);

  // Parses "p", "p/q" or a decimal literal such as "-0.125" or "3e-2".
  static QComplex parse_rational(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  QComplex conj() const { return {re_, -im_}; }
  cplx to_cplx() const { return {re_.get_d(), im_.get_d()}; }

  QComplex& operator+=(const QComplex& o);
  QComplex& operator-=(const QComplex& o);
  QComplex& operator*=(const QComplex& o);
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }

private:
  mpq_class re_{0};
  mpq_class im_{0};
};

QComplex pow(QComplex base, unsigned n);
cplx ipow(cplx base, unsigned n);

// Uniform access used by the polynomial templates.
inline bool is_zero(const cplx& v) { return v.real() == 0.0 && v.imag() == 0.0; }
inline bool is_zero(const QComplex& v) { return v.is_zero(); }
inline double modulus(const cplx& v) { return std::abs(v); }
inline double modulus(const QComplex& v) { return std::abs(v.to_cplx()); }
inline cplx to_cplx(const cplx& v) { return v; }
inline cplx to_cplx(const QComplex& v) { return v.to_cplx(); }

template <class T> T scalar_from(const QComplex& v);
template <> inline cplx scalar_from<cplx>(const QComplex& v) { return v.to_cplx(); }
template <> inline QComplex scalar_from<QComplex>(const QComplex& v) { return v; }

// Report text: "a+bi" with 17 significant digits; exact values as "p/q",
// "p/q+r/si" or "r/si".
std::string to_text(const cplx& v);
std::string to_text(const QComplex& v);

// Inverse of to_text(cplx); accepts "a", "a+bi", "a-bi", "bi".
cplx parse_cplx(std::string_view text);

}  // namespace henon
