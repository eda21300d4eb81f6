#include "henon/green.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>

namespace henon {

int default_max_iter() {
  if (const char* env = std::getenv("HENON_MAX_ITER")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 100'000'000) return static_cast<int>(v);
  }
  return kDefaultMaxIter;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::v_plus: return "Vplus";
    case Region::v_minus: return "Vminus";
    case Region::v: return "V";
  }
  return "?";
}

Region region_of(const Point& z, double R) {
  const double ax = std::abs(z.x), ay = std::abs(z.y);
  if (ax < ay && ay > R) return Region::v_plus;
  if (ay < ax && ax > R) return Region::v_minus;
  return Region::v;
}

const char* status_name(EscapeStatus s) {
  switch (s) {
    case EscapeStatus::escaped: return "escaped";
    case EscapeStatus::bounded: return "bounded";
    case EscapeStatus::undecided: return "undecided";
    case EscapeStatus::overflow: return "overflow";
  }
  return "?";
}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::inside: return "true";
    case Membership::outside: return "false";
    case Membership::undecided: return "undecided";
  }
  return "?";
}

// --- filtration --------------------------------------------------------------

namespace {

double tail_sum(const HenonFactor& f) {
  double s = 0;
  for (unsigned k = 0; k < f.degree(); ++k) s += std::abs(f.p_float()[k]);
  return s;
}

// Rounding allowance for the sampled inequalities, which are tight at |x| = |y| = R.
constexpr double kSlack = 1 - 1e-12;

bool is_vr(const Point& z, double R) { return std::abs(z.x) <= R && std::abs(z.y) <= R; }

// Sampled check of the per-factor escape inequalities and of the
// forward/backward invariance of the filtration for the whole word.
bool certify(const HenonMap& h, double R, std::size_t& checked) {
  constexpr int kAngles = 24;
  const double two_pi = 2 * std::numbers::pi;
  for (const auto& f : h.factors()) {
    for (double scale : {1.0, 1.5, 4.0, 32.0}) {
      const double r = R * scale;
      for (int a = 0; a < kAngles; ++a) {
        const cplx big = std::polar(r, two_pi * a / kAngles);
        for (double frac : {0.0, 0.5, 1.0}) {
          for (int b = 0; b < 8; ++b) {
            const cplx small = std::polar(r * frac, two_pi * b / 8);
            ++checked;
            // forward: |y| >= max(|x|, R)  =>  |p(y) - delta x| >= max(2|y|, R)
            const cplx fy = f.p_float().eval(big) - f.delta_float() * small;
            if (!(std::abs(fy) >= kSlack * 2 * r && std::abs(fy) >= kSlack * R)) return false;
            // backward: |x| >= max(|y|, R)  =>  |(p(x) - y) / delta| >= max(2|x|, R)
            const cplx bx = (f.p_float().eval(big) - small) / f.delta_float();
            if (!(std::abs(bx) >= kSlack * 2 * r && std::abs(bx) >= kSlack * R)) return false;
          }
        }
      }
    }
  }
  // Whole-word inclusions on points just inside V_R+, V_R-, and in V_R.
  for (int a = 0; a < kAngles; ++a) {
    for (int b = 0; b < kAngles; ++b) {
      const cplx u = std::polar(1.0, two_pi * a / kAngles);
      const cplx v = std::polar(1.0, two_pi * (b + 0.5) / kAngles);
      for (double frac : {0.0, 0.3, 0.99}) {
        ++checked;
        const double r = R * 1.0001;
        Point plus{v * (r * frac), u * r};
        Point minus{u * r, v * (r * frac)};
        Point inner{v * (R * frac), u * R};
        Point img_plus = plus, img_minus = minus, img_inner = inner, pre_inner = inner;
        for (const auto& f : h.factors()) {
          img_plus = f.apply(img_plus);
          img_inner = f.apply(img_inner);
        }
        for (auto it = h.factors().rbegin(); it != h.factors().rend(); ++it) {
          img_minus = it->apply_inverse(img_minus);
          pre_inner = it->apply_inverse(pre_inner);
        }
        if (region_of(img_plus, R) != Region::v_plus) return false;
        if (region_of(img_minus, R) != Region::v_minus) return false;
        const Region ri = region_of(img_inner, R);
        if (ri == Region::v_minus || (ri == Region::v && !is_vr(img_inner, R))) return false;
        const Region rp = region_of(pre_inner, R);
        if (rp == Region::v_plus || (rp == Region::v && !is_vr(pre_inner, R))) return false;
      }
    }
  }
  return true;
}

}  // namespace

FiltrationRadius filtration_radius(const HenonMap& h) {
  FiltrationRadius out;
  for (const auto& f : h.factors()) {
    const double c = std::abs(f.p_float().leading());
    const double delta = std::abs(f.delta_float());
    const double s = tail_sum(f);
    FactorRadius fr{std::max(1.0, (2 + delta + s) / c), std::max(1.0, (1 + 2 * delta + s) / c)};
    out.factors.push_back(fr);
    out.R = std::max({out.R, fr.forward, fr.backward});
  }
  for (; out.doublings <= 60; ++out.doublings) {
    if (certify(h, out.R, out.samples_checked)) return out;
    out.R *= 2;
  }
  throw CertificationError("filtration radius could not be certified; coefficients look pathological");
}

// --- escape engine -----------------------------------------------------------

namespace {

// Log(1 + e) without cancellation for small e.
cplx clog1p(cplx e) {
  const double re = 0.5 * std::log1p(2 * e.real() + std::norm(e));
  const double im = std::atan2(e.imag(), 1 + e.real());
  return {re, im};
}

cplx wrap_arg(cplx l) { return {l.real(), std::remainder(l.imag(), 2 * std::numbers::pi)}; }

}  // namespace

EscapeEngine::EscapeEngine(const HenonMap& h, Direction dir)
    : dir_(dir), oriented_(dir == Direction::plus ? h : h.swapped_inverse()), radius_(filtration_radius(h)) {
  const auto& fs = oriented_.factors();
  degree_ = static_cast<double>(oriented_.degree());
  double weight = 1;
  factors_.resize(fs.size());
  for (std::size_t j = fs.size(); j-- > 0;) {
    const auto& f = fs[j];
    Factor& out = factors_[j];
    const cplx c = f.p_float().leading();
    out.degree = f.degree();
    for (unsigned k = 0; k < f.degree(); ++k) out.normalized.push_back(f.p_float()[k] / c);
    out.other = f.delta_float() / c;
    out.log_c = std::log(c);
    out.weight = weight;
    out.escape_constant = (tail_sum(f) + std::abs(f.delta_float())) / std::abs(c);
    weight *= f.degree();
  }
  double kappa = 0;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const Factor& f = factors_[j];
    log_abs_c_ += f.weight * f.log_c.real();
    tail_constant_ += f.weight * f.escape_constant;
    max_escape_constant_ = std::max(max_escape_constant_, f.escape_constant);
    const double growth =
        std::max(1.0, tail_sum(fs[j]) + std::abs(fs[j].p_float().leading()) + std::abs(fs[j].delta_float()));
    kappa += f.weight * std::log(growth);
  }
  escape_threshold_ = std::max({radius_.R, 2 * max_escape_constant_, 1.0});
  l3_constant_ = kappa / (degree_ - 1);
}

double EscapeEngine::l1_constant() const {
  return std::abs(log_abs_c_) / (degree_ - 1) +
         2 * tail_constant_ / (escape_threshold_ * degree_ * (1 - 1 / (2 * degree_)));
}

bool EscapeEngine::sweep(Point& z) const {
  for (const auto& f : oriented_.factors()) z = f.apply(z);
  return std::isfinite(z.x.real()) && std::isfinite(z.x.imag()) && std::isfinite(z.y.real()) &&
         std::isfinite(z.y.imag());
}

TelescopeResult EscapeEngine::telescope(const Point& start, double threshold, int max_sweeps) const {
  TelescopeResult r;
  cplx ly = std::log(start.y);
  bool x_zero = start.x == cplx(0, 0);
  cplx lx = x_zero ? cplx(0) : std::log(start.x);
  const double geometric = 1 / (1 - 1 / (2 * degree_));
  const double log_valid = std::log(escape_threshold_);
  double scale = 1 / degree_;
  for (int n = 0; n < max_sweeps; ++n) {
    cplx L = 0;
    for (const auto& f : factors_) {
      // v = (p(y) - delta x) / (c y^d) = 1 + sum_k (a_k/c) w^(d-k) - (delta/c) x w^d,  w = 1/y
      const cplx w = std::exp(-ly);
      cplx acc = 0;
      for (const auto& a : f.normalized) acc = acc * w + a;
      cplx eps = acc * w;
      if (!x_zero) eps -= f.other * std::exp(lx - static_cast<double>(f.degree) * ly);
      const double dev = std::abs(eps);
      r.max_deviation = std::max(r.max_deviation, dev);
      if (!(dev < 0.5)) throw BranchError("telescoping factor |v - 1| >= 1/2; move deeper into V_R+");
      const cplx lv = clog1p(eps);
      L += f.weight * lv;
      const cplx next = wrap_arg(f.log_c + static_cast<double>(f.degree) * ly + lv);
      lx = ly;
      x_zero = false;
      ly = next;
    }
    r.sum += L * scale;
    r.sweeps = n + 1;
    scale /= degree_;
    r.log_y_end = ly.real();
    if (ly.real() >= log_valid) {
      r.tail_bound = 2 * tail_constant_ * std::exp(-ly.real()) * scale * geometric;
      if (r.tail_bound <= threshold) break;
    } else {
      r.tail_bound = std::numeric_limits<double>::infinity();
    }
  }
  return r;
}

// --- Green functions ---------------------------------------------------------

GreenValue GreenFunction::evaluate(const Point& z0, double tol, int maxiter) const {
  const EscapeEngine& e = engine_;
  const double R = e.radius().R;
  Point z = e.orient(z0);
  GreenValue out;
  int n = 0;
  int grace = 0;
  bool tie = false;
  for (;;) {
    const Region rg = region_of(z, R);
    if (rg == Region::v_plus) {
      if (std::abs(z.y) >= e.escape_threshold() || grace > 256) break;
      ++grace;
    } else {
      tie = rg == Region::v && !is_vr(z, R);
      if (n >= maxiter) {
        const double lm = std::max({0.0, std::log(std::abs(z.x)), std::log(std::abs(z.y))});
        out.value = 0;
        out.escaped = false;
        out.iterations = n;
        out.error_bound = (lm + e.l3_constant()) * std::exp(-n * std::log(e.degree()));
        out.status = tie ? EscapeStatus::undecided : EscapeStatus::bounded;
        return out;
      }
    }
    if (!e.sweep(z)) {
      out.value = std::numeric_limits<double>::infinity();
      out.error_bound = std::numeric_limits<double>::infinity();
      out.escaped = true;
      out.iterations = n + 1;
      out.status = EscapeStatus::overflow;
      return out;
    }
    ++n;
  }
  const double log_scale = -n * std::log(e.degree());
  const double shrink = std::exp(log_scale);
  const double threshold = 0.5 * tol * std::exp(-log_scale);
  const TelescopeResult t = e.telescope(z, threshold);
  const double head = std::log(std::abs(z.y));
  const double constant = e.log_abs_c() / (e.degree() - 1);
  const double eps = std::numeric_limits<double>::epsilon();
  const double rounding = 16 * eps * (std::abs(head) + std::abs(constant) + 1) * (t.sweeps + 1);
  out.value = (head + constant + t.sum.real()) * shrink;
  out.error_bound = (t.tail_bound + rounding) * shrink;
  out.iterations = n + t.sweeps;
  out.escaped = true;
  out.status = EscapeStatus::escaped;
  return out;
}

std::vector<double> GreenFunction::partial_estimates(const Point& z0, int count, int maxiter) const {
  const EscapeEngine& e = engine_;
  Point z = e.orient(z0);
  int n = 0;
  while (region_of(z, e.radius().R) != Region::v_plus) {
    if (n >= maxiter || !e.sweep(z)) return {};
    ++n;
  }
  // log|y| recursion; real parts only, so no branch bookkeeping is needed.
  std::vector<double> out;
  double log_scale = -n * std::log(e.degree());
  cplx ly = std::log(z.y);
  bool x_zero = z.x == cplx(0, 0);
  cplx lx = x_zero ? cplx(0) : std::log(z.x);
  const double offset = e.log_abs_c() / (e.degree() - 1);
  out.push_back((ly.real() + offset) * std::exp(log_scale));
  const auto& fs = e.oriented().factors();
  while (static_cast<int>(out.size()) < count) {
    for (const auto& f : fs) {
      const cplx c = f.p_float().leading();
      const cplx w = std::exp(-ly);
      cplx acc = 0;
      for (unsigned k = 0; k < f.degree(); ++k) acc = acc * w + f.p_float()[k] / c;
      cplx eps = acc * w;
      if (!x_zero) eps -= (f.delta_float() / c) * std::exp(lx - static_cast<double>(f.degree()) * ly);
      const cplx next = wrap_arg(std::log(c) + static_cast<double>(f.degree()) * ly + clog1p(eps));
      lx = ly;
      x_zero = false;
      ly = next;
    }
    log_scale -= std::log(e.degree());
    out.push_back((ly.real() + offset) * std::exp(log_scale));
  }
  return out;
}

GreenValue green_plus(const HenonMap& h, const Point& z, double tol, int maxiter) {
  return GreenFunction(h, Direction::plus).evaluate(z, tol, maxiter);
}

GreenValue green_minus(const HenonMap& h, const Point& z, double tol, int maxiter) {
  return GreenFunction(h, Direction::minus).evaluate(z, tol, maxiter);
}

GreenValue green_clipped(const GreenFunction& g, const Point& z, double c, double tol, int maxiter) {
  if (!(c >= 0)) throw std::invalid_argument("green_clipped needs c >= 0");
  GreenValue v = g.evaluate(z, tol, maxiter);
  v.value = std::max(v.value - c, 0.0);
  return v;
}

GreenValue green_clipped(const HenonMap& h, const Point& z, double c, double tol, int maxiter) {
  return green_clipped(GreenFunction(h, Direction::plus), z, c, tol, maxiter);
}

Membership in_K_plus(const GreenFunction& g, const Point& z0, int maxiter) {
  const EscapeEngine& e = g.engine();
  const double R = e.radius().R;
  Point z = e.orient(z0);
  bool tie = false;
  for (int n = 0;; ++n) {
    const Region rg = region_of(z, R);
    if (rg == Region::v_plus) return Membership::outside;
    if (rg == Region::v && !is_vr(z, R)) tie = true;
    if (n >= maxiter) break;
    if (!e.sweep(z)) return Membership::undecided;
  }
  return tie ? Membership::undecided : Membership::inside;
}

Membership in_K_plus(const HenonMap& h, const Point& z, int maxiter) {
  return in_K_plus(GreenFunction(h, Direction::plus), z, maxiter);
}

// --- level sampling ----------------------------------------------------------

Point Ray::at(double t) const { return {x0, std::polar(t, theta)}; }

LevelPoint sample_level_plus(const GreenFunction& g, double c, const Ray& ray, double tol) {
  if (!(c > 0)) throw std::invalid_argument("sample_level_plus needs c > 0");
  const double inner_tol = std::min(kDefaultTol, tol / 16);
  auto level = [&](double t) { return g.evaluate(ray.at(t), inner_tol).value; };
  double lo = kRayTMin;
  if (level(lo) >= c) throw BracketError("ray starts above the requested level");
  double hi = lo;
  for (;;) {
    hi = lo * 2;
    if (hi > kRayTMax) throw BracketError("ray misses the requested level within the search bounds");
    if (level(hi) > c) break;
    lo = hi;
  }
  LevelPoint best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    const double v = level(mid);
    const double res = std::abs(v - c);
    if (res < best.residual) best = {ray.at(mid), v, res, mid};
    if (res <= tol) return best;
    if (v < c) lo = mid;
    else hi = mid;
  }
  throw BracketError("bisection stalled before reaching the requested residual");
}

LevelPoint sample_level_plus(const HenonMap& h, double c, const Ray& ray, double tol) {
  return sample_level_plus(GreenFunction(h, Direction::plus), c, ray, tol);
}

Multiplier estimate_multiplier(const HenonMap& h, const AutoWord& f, double c, const std::vector<Point>& samples,
                               double tol) {
  GreenFunction g(h, Direction::plus);
  std::vector<double> ratios;
  for (const auto& z : samples) {
    const GreenValue base = green_clipped(g, z, c, tol);
    if (!(base.value > 10 * tol) || base.status == EscapeStatus::overflow) continue;
    Point fz;
    try {
      fz = f.apply(z);
    } catch (const EscapedRange&) {
      continue;
    }
    const GreenValue image = green_clipped(g, fz, c, tol);
    if (image.status == EscapeStatus::overflow) continue;
    ratios.push_back(image.value / base.value);
  }
  if (ratios.empty()) throw std::invalid_argument("estimate_multiplier: no usable samples");
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  Multiplier out{median, 1 / median, 0, m};
  for (double r : ratios) out.residual = std::max(out.residual, std::abs(r - median));
  return out;
}

std::string green_csv_header() { return "x_re,x_im,y_re,y_im,G_value,error_bound,iterations,escaped"; }

std::string green_csv_row(const Point& z, const GreenValue& v) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%s", z.x.real(), z.x.imag(), z.y.real(),
                z.y.imag(), v.value, v.error_bound, v.iterations, v.escaped ? "true" : "false");
  return buf;
}

}  // namespace henon
