#include "henon/maps.hpp"

#include <algorithm>
#include <cmath>

namespace henon {

double norm_inf(const Point& z) { return std::max(std::abs(z.x), std::abs(z.y)); }

double distance(const Point& a, const Point& b) {
  return std::hypot(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

namespace {

Poly1<cplx> to_float(const Poly1<QComplex>& p) {
  std::vector<cplx> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(c.to_cplx());
  return Poly1<cplx>(std::move(v));
}

bool finite(const Point& z) {
  return std::isfinite(z.x.real()) && std::isfinite(z.x.imag()) && std::isfinite(z.y.real()) &&
         std::isfinite(z.y.imag());
}

}  // namespace

// --- HenonFactor -------------------------------------------------------------

HenonFactor::HenonFactor(Poly1<QComplex> p, QComplex delta, bool exact)
    : p_(std::move(p)), delta_(std::move(delta)), pf_(to_float(p_)), deltaf_(delta_.to_cplx()), exact_(exact) {
  validate();
}

HenonFactor HenonFactor::from_float(const std::vector<cplx>& p, cplx delta) {
  std::vector<QComplex> q;
  q.reserve(p.size());
  for (const auto& c : p) q.push_back(QComplex::from_double(c));
  return HenonFactor(Poly1<QComplex>(std::move(q)), QComplex::from_double(delta), false);
}

void HenonFactor::validate() const {
  if (p_.degree() < 2) throw std::invalid_argument("Henon factor needs deg p >= 2");
  if (delta_.is_zero()) throw std::invalid_argument("delta must be nonzero");
}

// --- HenonMap ----------------------------------------------------------------

HenonMap::HenonMap(std::vector<HenonFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("Henon map needs at least one factor");
  for (const auto& f : factors_) {
    if (degree_ > (UINT64_MAX / f.degree())) throw std::overflow_error("Henon degree overflows 64 bits");
    degree_ *= f.degree();
  }
}

Backend HenonMap::backend() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const HenonFactor& f) { return f.exact(); })
             ? Backend::exact
             : Backend::float64;
}

Point HenonMap::apply(const Point& z) const {
  Point w = z;
  for (const auto& f : factors_) w = f.apply(w);
  if (!finite(w)) throw EscapedRange();
  return w;
}

Point HenonMap::apply_inverse(const Point& z) const {
  Point w = z;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) w = it->apply_inverse(w);
  if (!finite(w)) throw EscapedRange();
  return w;
}

HenonMap HenonMap::then(const HenonMap& next) const {
  std::vector<HenonFactor> all = factors_;
  all.insert(all.end(), next.factors_.begin(), next.factors_.end());
  return HenonMap(std::move(all));
}

HenonMap HenonMap::power(unsigned n) const {
  if (n == 0) throw std::invalid_argument("Henon power needs n >= 1");
  std::vector<HenonFactor> all;
  for (unsigned k = 0; k < n; ++k) all.insert(all.end(), factors_.begin(), factors_.end());
  return HenonMap(std::move(all));
}

HenonMap HenonMap::swapped_inverse() const {
  std::vector<HenonFactor> out;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    QComplex inv = QComplex(1) / it->delta();
    out.emplace_back(it->p().scaled(inv), inv, it->exact());
  }
  return HenonMap(std::move(out));
}

std::uint64_t henon_degree(const HenonMap& h) { return h.degree(); }

// --- AffineMap ---------------------------------------------------------------

AffineMap::AffineMap(QComplex a, QComplex b, QComplex f, QComplex c, QComplex d, QComplex g, bool exact)
    : k_{std::move(a), std::move(b), std::move(f), std::move(c), std::move(d), std::move(g)}, exact_(exact) {
  if ((k_[0] * k_[4] - k_[1] * k_[3]).is_zero()) throw std::invalid_argument("affine map needs ad - bc != 0");
  for (const auto& v : k_) kf_.push_back(v.to_cplx());
}

AffineMap AffineMap::from_float(cplx a, cplx b, cplx f, cplx c, cplx d, cplx g) {
  auto q = [](cplx v) { return QComplex::from_double(v); };
  return AffineMap(q(a), q(b), q(f), q(c), q(d), q(g), false);
}

Point AffineMap::apply(const Point& z) const {
  return {kf_[0] * z.x + kf_[1] * z.y + kf_[2], kf_[3] * z.x + kf_[4] * z.y + kf_[5]};
}

AffineMap AffineMap::inverse() const {
  QComplex det = a() * d() - b() * c();
  QComplex ia = d() / det, ib = -b() / det, ic = -c() / det, id = a() / det;
  QComplex f2 = -(ia * f() + ib * g());
  QComplex g2 = -(ic * f() + id * g());
  return AffineMap(ia, ib, f2, ic, id, g2, exact_);
}

template <class T> PolyMap2<T> AffineMap::expand() const {
  auto lin = [](const QComplex& cx, const QComplex& cy, const QComplex& c0) {
    typename Poly2<T>::Accumulator acc;
    acc[Monomial{0, 0}] = scalar_from<T>(c0);
    acc[Monomial{1, 0}] = scalar_from<T>(cx);
    acc[Monomial{0, 1}] = scalar_from<T>(cy);
    return Poly2<T>::from_map(acc);
  };
  return {lin(a(), b(), f()), lin(c(), d(), g())};
}

AffineMap compose(const AffineMap& o, const AffineMap& i) {
  return AffineMap(o.a() * i.a() + o.b() * i.c(), o.a() * i.b() + o.b() * i.d(),
                   o.a() * i.f() + o.b() * i.g() + o.f(), o.c() * i.a() + o.d() * i.c(),
                   o.c() * i.b() + o.d() * i.d(), o.c() * i.f() + o.d() * i.g() + o.g(),
                   o.exact() && i.exact());
}

AffineMap affine_power(const AffineMap& s, unsigned n) {
  if (!s.is_diagonal()) throw std::invalid_argument("affine_power needs a diagonal map (b = c = 0)");
  if (n == 0) throw std::invalid_argument("affine_power needs n >= 1");
  auto geometric = [n](const QComplex& ratio, const QComplex& shift) {
    if (ratio == QComplex(1)) return QComplex(static_cast<long>(n)) * shift;
    return shift * (pow(ratio, n) - QComplex(1)) / (ratio - QComplex(1));
  };
  return AffineMap(pow(s.a(), n), 0, geometric(s.a(), s.f()), 0, pow(s.d(), n), geometric(s.d(), s.g()),
                   s.exact());
}

AffineSplit normalize_affine(const AffineMap& a, const QComplex& b) {
  if (a.is_elementary()) throw std::invalid_argument("normalize_affine rejects elementary affine maps (alpha2 = 0)");
  if (b.is_zero()) throw std::invalid_argument("normalize_affine needs b != 0");
  const QComplex& alpha1 = a.a();
  const QComplex& beta1 = a.b();
  const QComplex& delta1 = a.f();
  const QComplex& alpha2 = a.c();
  const QComplex& beta2 = a.d();
  const QComplex& delta2 = a.g();
  QComplex c = alpha1 / alpha2;
  QComplex r2 = (delta1 - c * delta2) / b;
  QComplex s2 = (beta1 - c * beta2) / b;
  return {AffineMap(b, c, 0, 0, 1, 0, a.exact()), AffineMap(alpha2, beta2, delta2, 0, s2, r2, a.exact())};
}

// --- ElementaryMap -----------------------------------------------------------

ElementaryMap::ElementaryMap(QComplex alpha, QComplex beta, QComplex gamma, Poly1<QComplex> p, bool exact)
    : alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      gamma_(std::move(gamma)),
      p_(std::move(p)),
      alphaf_(alpha_.to_cplx()),
      betaf_(beta_.to_cplx()),
      gammaf_(gamma_.to_cplx()),
      pf_(to_float(p_)),
      exact_(exact) {
  if (alpha_.is_zero() || beta_.is_zero()) throw std::invalid_argument("elementary map needs alpha*beta != 0");
}

ElementaryMap ElementaryMap::from_affine(const AffineMap& a) {
  if (!a.is_elementary()) throw std::invalid_argument("affine map is not elementary");
  return ElementaryMap(a.a(), a.d(), a.g(), Poly1<QComplex>({a.f(), a.b()}), a.exact());
}

Point ElementaryMap::apply(const Point& z) const {
  return {alphaf_ * z.x + pf_.eval(z.y), betaf_ * z.y + gammaf_};
}

ElementaryMap ElementaryMap::inverse() const {
  QComplex ia = QComplex(1) / alpha_;
  QComplex ib = QComplex(1) / beta_;
  Poly1<QComplex> q = p_.compose_affine(ib, -gamma_ * ib).scaled(-ia);
  return ElementaryMap(ia, ib, -gamma_ * ib, std::move(q), exact_);
}

AffineMap ElementaryMap::to_affine() const {
  if (!is_affine()) throw std::logic_error("elementary map is not affine");
  QComplex lin = p_.degree() >= 1 ? p_[1] : QComplex(0);
  return AffineMap(alpha_, lin, p_[0], 0, beta_, gamma_, exact_);
}

template <class T> PolyMap2<T> ElementaryMap::expand() const {
  typename Poly2<T>::Accumulator first, second;
  for (unsigned k = 0; k <= p_.degree(); ++k) first[Monomial{0, k}] = scalar_from<T>(p_[k]);
  first[Monomial{1, 0}] = scalar_from<T>(alpha_);
  second[Monomial{0, 1}] = scalar_from<T>(beta_);
  second[Monomial{0, 0}] = scalar_from<T>(gamma_);
  return {Poly2<T>::from_map(first), Poly2<T>::from_map(second)};
}

ElementaryMap compose(const ElementaryMap& o, const ElementaryMap& i) {
  // o(i(x,y)) = (ao ai x + ao pi(y) + po(bi y + gi), bo bi y + bo gi + go)
  Poly1<QComplex> p = i.p().scaled(o.alpha()) + o.p().compose_affine(i.beta(), i.gamma());
  return ElementaryMap(o.alpha() * i.alpha(), o.beta() * i.beta(), o.beta() * i.gamma() + o.gamma(), std::move(p),
                       o.exact() && i.exact());
}

// --- AutoWord ----------------------------------------------------------------

AutoWord::AutoWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("automorphism word must be nonempty");
}

AutoWord AutoWord::from_composition(std::vector<Letter> written_order) {
  std::reverse(written_order.begin(), written_order.end());
  return AutoWord(std::move(written_order));
}

AutoWord AutoWord::from_henon(const HenonMap& h) {
  return AutoWord(std::vector<Letter>(h.factors().begin(), h.factors().end()));
}

bool AutoWord::exact() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](const Letter& l) { return std::visit([](const auto& m) { return m.exact(); }, l); });
}

bool AutoWord::is_henon_word() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](const Letter& l) { return std::holds_alternative<HenonFactor>(l); });
}

Point AutoWord::apply(const Point& z) const {
  Point w = z;
  for (const auto& l : letters_) w = std::visit([&w](const auto& m) { return m.apply(w); }, l);
  if (!finite(w)) throw EscapedRange();
  return w;
}

AutoWord AutoWord::inverse() const {
  std::vector<Letter> out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    if (const auto* a = std::get_if<AffineMap>(&*it)) {
      out.emplace_back(a->inverse());
    } else if (const auto* e = std::get_if<ElementaryMap>(&*it)) {
      out.emplace_back(e->inverse());
    } else {
      // (x, y) -> ((p(x) - y) / delta, x): swap, then (u, v) -> ((p(v) - u) / delta, v).
      const auto& h = std::get<HenonFactor>(*it);
      QComplex inv = QComplex(1) / h.delta();
      out.emplace_back(AffineMap::swap());
      out.emplace_back(ElementaryMap(-inv, 1, 0, h.p().scaled(inv), h.exact()));
    }
  }
  return AutoWord(std::move(out));
}

AutoWord AutoWord::then(const AutoWord& next) const {
  std::vector<Letter> all = letters_;
  all.insert(all.end(), next.letters_.begin(), next.letters_.end());
  return AutoWord(std::move(all));
}

// --- expansion ---------------------------------------------------------------

namespace {

template <class T>
PolyMap2<T> apply_henon_factor(const HenonFactor& h, const PolyMap2<T>& inner, std::size_t budget) {
  // (y, p(y) - delta x) applied to inner, Horner in inner.second.
  Poly1<T> p = h.poly<T>();
  Poly2<T> acc = Poly2<T>::constant(p.leading());
  for (unsigned k = p.degree(); k-- > 0;)
    acc = Poly2<T>::multiply(acc, inner.second, budget) + Poly2<T>::constant(p[k]);
  acc = acc - inner.first.scaled(h.delta_as<T>());
  return {inner.second, std::move(acc)};
}

template <class T>
PolyMap2<T> apply_letter(const Letter& l, const PolyMap2<T>& inner, std::size_t budget) {
  if (const auto* h = std::get_if<HenonFactor>(&l)) return apply_henon_factor(*h, inner, budget);
  PolyMap2<T> outer = std::holds_alternative<AffineMap>(l) ? std::get<AffineMap>(l).expand<T>()
                                                          : std::get<ElementaryMap>(l).expand<T>();
  return compose(outer, inner, budget);
}

}  // namespace

template <class T> PolyMap2<T> word_expand(const HenonMap& h, std::size_t budget) {
  PolyMap2<T> acc = PolyMap2<T>::identity();
  for (const auto& f : h.factors()) acc = apply_henon_factor(f, acc, budget);
  return acc;
}

template <class T> PolyMap2<T> word_expand(const AutoWord& w, std::size_t budget) {
  PolyMap2<T> acc = PolyMap2<T>::identity();
  for (const auto& l : w.letters()) acc = apply_letter(l, acc, budget);
  return acc;
}

template PolyMap2<cplx> word_expand<cplx>(const HenonMap&, std::size_t);
template PolyMap2<QComplex> word_expand<QComplex>(const HenonMap&, std::size_t);
template PolyMap2<cplx> word_expand<cplx>(const AutoWord&, std::size_t);
template PolyMap2<QComplex> word_expand<QComplex>(const AutoWord&, std::size_t);
template PolyMap2<cplx> AffineMap::expand<cplx>() const;
template PolyMap2<QComplex> AffineMap::expand<QComplex>() const;
template PolyMap2<cplx> ElementaryMap::expand<cplx>() const;
template PolyMap2<QComplex> ElementaryMap::expand<QComplex>() const;

}  // namespace henon
