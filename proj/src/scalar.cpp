#include "henon/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace henon {

const char* backend_name(Backend b) { return b == Backend::exact ? "exact" : "float64"; }

QComplex::QComplex(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

QComplex QComplex::from_double(cplx v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::invalid_argument("non-finite value has no rational representation");
  return {mpq_class(v.real()), mpq_class(v.imag())};
}

namespace {

mpq_class parse_decimal(std::string_view t) {
  std::string s(t);
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long exp10 = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_dot) --exp10;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed numeral '" + s + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    long e = 0;
    auto [p, ec] = std::from_chars(s.data() + i + 1 + (s[i + 1] == '+'), s.data() + s.size(), e);
    if (ec != std::errc() || p != s.data() + s.size())
      throw std::invalid_argument("malformed exponent in '" + s + "'");
    exp10 += e;
    i = s.size();
  }
  if (i != s.size()) throw std::invalid_argument("malformed numeral '" + s + "'");
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  mpq_class q = exp10 >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

}  // namespace

QComplex QComplex::parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return {parse_decimal(text), 0};
  mpq_class num = parse_decimal(text.substr(0, slash));
  mpq_class den = parse_decimal(text.substr(slash + 1));
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return {num / den, 0};
}

QComplex& QComplex::operator+=(const QComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

QComplex& QComplex::operator-=(const QComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

QComplex& QComplex::operator*=(const QComplex& o) {
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

QComplex& QComplex::operator/=(const QComplex& o) {
  mpq_class n = o.norm();
  if (sgn(n) == 0) throw std::domain_error("exact division by zero");
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

QComplex pow(QComplex base, unsigned n) {
  QComplex acc(1);
  while (n) {
    if (n & 1u) acc *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return acc;
}

cplx ipow(cplx base, unsigned n) {
  cplx acc(1.0, 0.0);
  while (n) {
    if (n & 1u) acc *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return acc;
}

std::string to_text(const cplx& v) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

std::string to_text(const QComplex& v) {
  if (v.is_real()) return v.re().get_str();
  const std::string im = v.im().get_str();
  const std::string sign = sgn(v.im()) < 0 ? "" : "+";
  if (sgn(v.re()) == 0) return im + "i";
  return v.re().get_str() + sign + im + "i";
}

cplx parse_cplx(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  const char* begin = s.c_str();
  char* end = nullptr;
  double re = std::strtod(begin, &end);
  if (end == begin) throw std::invalid_argument("malformed complex literal '" + s + "'");
  if (*end == '\0') return {re, 0.0};
  if (*end == 'i' && end[1] == '\0') return {0.0, re};
  const char* rest = end;
  double im = std::strtod(rest, &end);
  if (end == rest || *end != 'i' || end[1] != '\0')
    throw std::invalid_argument("malformed complex literal '" + s + "'");
  return {re, im};
}

}  // namespace henon
