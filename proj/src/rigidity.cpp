#include "henon/rigidity.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

namespace henon {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

bool usable(const GreenValue& v) {
  return v.status == EscapeStatus::escaped || v.status == EscapeStatus::bounded;
}

}  // namespace

// --- functoriality -----------------------------------------------------------

std::string FunctorialReport::to_text() const {
  std::ostringstream os;
  os << "verdict: " << (pass ? "PASS" : "FAIL") << "\n"
     << "check: functorial\n"
     << "identities: G+(H z) = d G+(z), G-(H^-1 z) = d G-(z)\n"
     << "samples: " << samples << "\n"
     << "escaped_plus: " << escaped_plus << "\n"
     << "escaped_minus: " << escaped_minus << "\n"
     << "skipped: " << skipped << "\n"
     << "tolerance: " << num(tol) << "\n"
     << "max_residual_plus: " << num(max_residual_plus) << "\n"
     << "max_residual_minus: " << num(max_residual_minus) << "\n"
     << "max_excess: " << num(max_excess) << "\n";
  return os.str();
}

FunctorialReport verify_functorial(const HenonMap& h, std::size_t n_samples, double tol, std::uint64_t seed,
                                   double box, const GreenPerturbation& perturb) {
  const GreenFunction gp(h, Direction::plus);
  const GreenFunction gm(h, Direction::minus);
  const double d = static_cast<double>(h.degree());
  const double inner_tol = std::min(kDefaultTol, tol / 100);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-box, box);

  FunctorialReport r;
  r.tol = tol;
  r.max_excess = -tol;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng), e = u(rng);
    const Point z{{a, b}, {c, e}};
    ++r.samples;

    const GreenValue g0 = gp.evaluate(z, inner_tol);
    const GreenValue g1 = gp.evaluate(h.apply(z), inner_tol);
    const GreenValue m0 = gm.evaluate(z, inner_tol);
    const GreenValue m1 = gm.evaluate(h.apply_inverse(z), inner_tol);
    if (!usable(g0) || !usable(g1) || !usable(m0) || !usable(m1)) {
      ++r.skipped;
      continue;
    }
    double base = g0.value;
    if (perturb) base += perturb(i, base);
    r.escaped_plus += g0.escaped;
    r.escaped_minus += m0.escaped;
    const double res_plus = std::abs(g1.value - d * base);
    const double res_minus = std::abs(m1.value - d * m0.value);
    r.max_residual_plus = std::max(r.max_residual_plus, res_plus);
    r.max_residual_minus = std::max(r.max_residual_minus, res_minus);
    r.max_excess = std::max({r.max_excess, res_plus - tol, res_minus - tol});
  }
  r.pass = r.max_residual_plus <= tol && r.max_residual_minus <= tol;
  return r;
}

// --- invariance --------------------------------------------------------------

std::string InvarianceReport::to_text() const {
  std::ostringstream os;
  os << "verdict: " << (pass ? "PASS" : "FAIL") << "\n"
     << "check: level-invariance (sampled necessary condition)\n"
     << "level: " << num(level) << "\n"
     << "samples: " << samples << "\n"
     << "sampling_failures: " << sampling_failures << "\n"
     << "tolerance: " << num(tol) << "\n"
     << "max_deviation: " << num(max_deviation) << "\n";
  return os.str();
}

InvarianceReport verify_invariance(const HenonMap& h, const AutoWord& f, double c, std::size_t n_samples, double tol,
                                   std::uint64_t seed) {
  if (!(c >= 0)) throw std::invalid_argument("verify_invariance needs c >= 0");
  const GreenFunction g(h, Direction::plus);
  const double inner_tol = std::min(1e-9, tol / 100);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);

  InvarianceReport r;
  r.level = c;
  r.tol = tol;

  auto check = [&](const Point& z, double level_at_z, double bound_at_z) {
    Point fz;
    try {
      fz = f.apply(z);
    } catch (const EscapedRange&) {
      r.max_deviation = std::numeric_limits<double>::infinity();
      ++r.samples;
      return;
    }
    const GreenValue gf = g.evaluate(fz, inner_tol);
    const double dev = std::abs(gf.value - level_at_z);
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev > tol + bound_at_z + gf.error_bound) r.pass = false;
    ++r.samples;
  };

  if (c == 0) {
    // Members of K+: real points near the origin first, then a complex box.
    const std::size_t attempts = 200 * n_samples;
    for (std::size_t k = 0; k < attempts && r.samples < n_samples; ++k) {
      const double s = k % 2 == 0 ? 0.5 : 1.5;
      const bool real = k % 2 == 0;
      const Point z{{s * unit(rng), real ? 0.0 : s * unit(rng)}, {s * unit(rng), real ? 0.0 : s * unit(rng)}};
      if (in_K_plus(g, z) != Membership::inside) {
        ++r.sampling_failures;
        continue;
      }
      check(z, 0.0, 0.0);
    }
  } else {
    for (std::size_t k = 0; k < n_samples; ++k) {
      const Ray ray{{unit(rng), unit(rng)}, angle(rng)};
      try {
        const LevelPoint lp = sample_level_plus(g, c, ray, inner_tol);
        check(lp.point, lp.achieved_level, lp.residual);
      } catch (const std::runtime_error&) {
        ++r.sampling_failures;
      }
    }
  }
  if (r.samples == 0) r.pass = false;
  if (r.max_deviation > tol) r.pass = false;
  return r;
}

// --- scaled commutation --------------------------------------------------------

AffineMap DiagonalScaling::as_affine() const { return AffineMap(delta_minus, 0, 0, 0, delta_plus, 0, exact); }

std::string CommutationReport::to_text() const {
  std::ostringstream os;
  os << "verdict: " << (holds ? "HOLDS" : "FAILS") << "\n"
     << "check: scaled-commutation\n"
     << "identity: H2 o H1 = C o H1 o H2, C(x, y) = (delta_minus x, delta_plus y)\n"
     << "note: the variant H2 o H1 = C o H2 o H1 only admits C = identity and is not the checked form\n"
     << "backend: " << (exact ? "exact" : "float64") << "\n"
     << "delta_minus: " << henon::to_text(C.delta_minus) << "\n"
     << "delta_plus: " << henon::to_text(C.delta_plus) << "\n"
     << "rel1_second_components: " << (rel1 ? "equal" : "differ") << "\n"
     << "rel2_first_components: " << (rel2 ? "equal" : "differ") << "\n"
     << "tolerance: " << num(tol) << "\n"
     << "max_residual: " << num(max_residual) << "\n"
     << "predicted_abs_delta_plus: " << num(predicted_delta_plus) << "\n"
     << "predicted_abs_delta_minus: " << num(predicted_delta_minus) << "\n";
  return os.str();
}

namespace {

template <class T>
void compare_sides(const HenonMap& h1, const HenonMap& h2, const DiagonalScaling& C, double tol, std::size_t budget,
                   CommutationReport& r) {
  const PolyMap2<T> lhs = word_expand<T>(h1.then(h2), budget);
  const AutoWord rhs_word = AutoWord::from_henon(h2.then(h1)).then(AutoWord({C.as_affine()}));
  const PolyMap2<T> rhs = word_expand<T>(rhs_word, budget);
  const PolyMap2<T> first_l{lhs.first, Poly2<T>()}, first_r{rhs.first, Poly2<T>()};
  const PolyMap2<T> second_l{Poly2<T>(), lhs.second}, second_r{Poly2<T>(), rhs.second};
  r.rel1 = polymap_equal(second_l, second_r, tol);
  r.rel2 = polymap_equal(first_l, first_r, tol);
  r.max_residual = max_coeff_difference(lhs, rhs);
}

double log_abs(const QComplex& v) { return 0.5 * std::log(v.norm().get_d()); }

}  // namespace

CommutationReport check_commutation_scaled(const HenonMap& h1, const HenonMap& h2, const DiagonalScaling& C,
                                           double tol, std::size_t budget) {
  CommutationReport r;
  r.C = C;
  r.exact = h1.backend() == Backend::exact && h2.backend() == Backend::exact && C.exact;
  r.tol = r.exact ? 0.0 : tol;
  if (r.exact) compare_sides<QComplex>(h1, h2, C, 0.0, budget, r);
  else compare_sides<cplx>(h1, h2, C, tol, budget, r);
  r.holds = r.rel1 && r.rel2;

  const BoettcherConstants k1 = leading_constant(h1), k2 = leading_constant(h2);
  const double e1 = static_cast<double>(h1.degree()) - 1, e2 = static_cast<double>(h2.degree()) - 1;
  const double c = log_abs(k1.c_H) / e1 - log_abs(k2.c_H) / e2;
  const double d = log_abs(k1.c_H_prime) / e1 - log_abs(k2.c_H_prime) / e2;
  r.predicted_delta_plus = std::exp(c * e1 * e2);
  r.predicted_delta_minus = std::exp(d * e1 * e2);
  return r;
}

// --- two-level constants -------------------------------------------------------

std::string TwoLevelResult::to_text() const {
  std::ostringstream os;
  os << "verdict: " << (relation_residual.is_zero() ? "PASS" : "FAIL") << "\n"
     << "check: two-level-delta\n"
     << "abs_delta_plus: " << num(delta_plus) << "\n"
     << "abs_delta_minus: " << num(delta_minus) << "\n"
     << "delta_plus_from_constants: " << henon::to_text(delta_plus_exact) << "\n"
     << "relc_c: " << num(relc_c) << "\n"
     << "relation_residual: " << henon::to_text(relation_residual) << "\n"
     << "modulus_residual: " << num(modulus_residual) << "\n";
  return os.str();
}

TwoLevelResult two_level_delta(const HenonMap& h1, const HenonMap& h2, double c1, double c2, double d1, double d2) {
  const std::uint64_t dh1 = h1.degree(), dh2 = h2.degree();
  const double e = static_cast<double>(dh1 - 1) * static_cast<double>(dh2 - 1);
  TwoLevelResult r;
  r.delta_plus = std::exp((c1 - c2) * e);
  r.delta_minus = std::exp((d1 - d2) * e);

  const BoettcherConstants k1 = leading_constant(h1), k2 = leading_constant(h2);
  const QComplex lhs = pow(k1.c_H, static_cast<unsigned>(dh2)) * k2.c_H;
  const QComplex rhs_unit = pow(k2.c_H, static_cast<unsigned>(dh1)) * k1.c_H;
  r.delta_plus_exact = lhs / rhs_unit;

  const mpq_class n1 = k1.c_H.norm(), n2 = k2.c_H.norm();
  mpq_class predicted_sq = 1;
  for (std::uint64_t k = 1; k < dh2; ++k) predicted_sq *= n1;
  for (std::uint64_t k = 1; k < dh1; ++k) predicted_sq /= n2;
  r.relation_residual = QComplex(r.delta_plus_exact.norm() - predicted_sq);

  r.relc_c = log_abs(k1.c_H) / static_cast<double>(dh1 - 1) - log_abs(k2.c_H) / static_cast<double>(dh2 - 1);
  r.modulus_residual = std::abs(std::sqrt(r.delta_plus_exact.norm().get_d()) - std::exp(r.relc_c * e));
  return r;
}

// --- iterate coincidence -------------------------------------------------------

namespace {

template <class T>
std::optional<std::pair<unsigned, unsigned>> search(const PolyMap2<T>& f, const PolyMap2<T>& h, unsigned mmax,
                                                    unsigned nmax, double tol, std::size_t budget,
                                                    const std::function<bool(unsigned, unsigned)>& degree_match) {
  std::vector<PolyMap2<T>> fp{f}, hp{h};
  auto power = [&](std::vector<PolyMap2<T>>& cache, const PolyMap2<T>& base, unsigned k) -> const PolyMap2<T>& {
    while (cache.size() < k) cache.push_back(compose(base, cache.back(), budget));
    return cache[k - 1];
  };
  for (unsigned m = 1; m <= mmax; ++m) {
    for (unsigned n = 1; n <= nmax; ++n) {
      if (!degree_match(m, n)) continue;
      const PolyMap2<T>& a = power(fp, f, m);
      const PolyMap2<T>& b = power(hp, h, n);
      if (a.total_degree() != b.total_degree()) continue;
      if (polymap_equal(a, b, tol)) return std::make_pair(m, n);
    }
  }
  return std::nullopt;
}

bool pow_equal(std::uint64_t a, unsigned m, std::uint64_t b, unsigned n) {
  // a^m == b^n without overflow: compare logs first, then exact products.
  const double la = m * std::log(static_cast<double>(a)), lb = n * std::log(static_cast<double>(b));
  if (std::abs(la - lb) > 1e-9 * std::max(1.0, la)) return false;
  if (la > 63 * std::log(2.0)) return true;  // ambiguous in 64 bits; let the expansion decide
  std::uint64_t pa = 1, pb = 1;
  for (unsigned k = 0; k < m; ++k) pa *= a;
  for (unsigned k = 0; k < n; ++k) pb *= b;
  return pa == pb;
}

std::optional<std::pair<unsigned, unsigned>> coincide(const AutoWord& f, const HenonMap& h, unsigned mmax,
                                                      unsigned nmax, std::size_t budget,
                                                      std::optional<std::uint64_t> f_degree) {
  const std::uint64_t dh = h.degree();
  const bool exact = f.exact() && h.backend() == Backend::exact;
  auto run = [&]<class T>(T*) {
    const PolyMap2<T> ef = word_expand<T>(f, budget);
    const std::uint64_t df = f_degree ? *f_degree : ef.total_degree();
    auto match = [&](unsigned m, unsigned n) { return df >= 1 && pow_equal(df, m, dh, n); };
    // Words that are not Hénon words can have deg(F^m) < deg(F)^m, so the
    // degree filter only applies when the degree is multiplicative.
    auto any = [](unsigned, unsigned) { return true; };
    const std::function<bool(unsigned, unsigned)> filter =
        f_degree ? std::function<bool(unsigned, unsigned)>(match) : std::function<bool(unsigned, unsigned)>(any);
    return search<T>(ef, word_expand<T>(h, budget), mmax, nmax, exact ? 0.0 : 1e-9, budget, filter);
  };
  if (exact) return run(static_cast<QComplex*>(nullptr));
  return run(static_cast<cplx*>(nullptr));
}

}  // namespace

std::optional<std::pair<unsigned, unsigned>> iterate_coincidence(const HenonMap& f, const HenonMap& h, unsigned mmax,
                                                                 unsigned nmax, std::size_t budget) {
  return coincide(AutoWord::from_henon(f), h, mmax, nmax, budget, f.degree());
}

std::optional<std::pair<unsigned, unsigned>> iterate_coincidence(const AutoWord& f, const HenonMap& h, unsigned mmax,
                                                                 unsigned nmax, std::size_t budget) {
  return coincide(f, h, mmax, nmax, budget, std::nullopt);
}

// --- affine forms ---------------------------------------------------------------

bool check_affine_form(const AffineMap& s, AffineForm mode) {
  if (!s.c().is_zero()) return false;
  if (mode == AffineForm::level) return true;
  if (!s.b().is_zero()) return false;
  if (s.exact()) return s.a().norm() == 1 && s.d().norm() == 1;
  return std::abs(std::abs(s.a().to_cplx()) - 1) <= 1e-12 && std::abs(std::abs(s.d().to_cplx()) - 1) <= 1e-12;
}

}  // namespace henon
