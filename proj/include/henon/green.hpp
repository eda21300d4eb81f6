#pragma once

// Escape-rate Green functions G+/G- of a Hénon map with certified error
// bounds, the filtration V_R+ / V_R- / V_R, level sampling and multiplier
// estimation.
//
// G- is evaluated through the identity H^{-1} = tau o Ĥ o tau (see
// HenonMap::swapped_inverse), so both directions share one escape engine
// that always escapes along the second coordinate.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "henon/maps.hpp"

namespace henon {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kDefaultMaxIter = 1000;

// kDefaultMaxIter unless HENON_MAX_ITER holds a positive integer.
int default_max_iter();

struct FactorRadius {
  double forward = 0;   // max(1, (2 + |delta| + sum_{k<d}|a_k|) / |c|)
  double backward = 0;  // max(1, (1 + 2|delta| + sum_{k<d}|a_k|) / |c|)
};

struct FiltrationRadius {
  double R = 0;
  std::vector<FactorRadius> factors;
  std::size_t samples_checked = 0;
  int doublings = 0;
};

// Raised when the sampled certificate cannot be established.
class CertificationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

FiltrationRadius filtration_radius(const HenonMap& h);

enum class Region { v_plus, v_minus, v };
const char* region_name(Region r);

// Strict inequalities; points on |x| = |y| > R resolve to V.
Region region_of(const Point& z, double R);

enum class EscapeStatus { escaped, bounded, undecided, overflow };
const char* status_name(EscapeStatus s);

struct GreenValue {
  double value = 0;        // nats
  double error_bound = 0;  // |value - G(z)| <= error_bound
  int iterations = 0;
  bool escaped = false;
  EscapeStatus status = EscapeStatus::bounded;
};

enum class Direction { plus, minus };

// Complex logarithm of the escaping coordinate, kept in log form so that
// orbits never overflow once they are deep in the escape region.
struct LogPoint {
  cplx log_x;
  bool x_zero = false;
  cplx log_y;
};

struct TelescopeResult {
  cplx sum;                 // sum_n L_n / d^(n+1), L_n = sum_j D_j Log v_{n,j}
  double tail_bound = 0;    // bound on |remaining sum|
  int sweeps = 0;
  double max_deviation = 0; // max |v - 1| over computed factor steps
  double log_y_end = 0;     // log |y| after the last computed sweep
};

// Precomputed per-map data for the escape recursion of one direction.
class EscapeEngine {
public:
  EscapeEngine(const HenonMap& h, Direction dir);

  Direction direction() const { return dir_; }
  const HenonMap& oriented() const { return oriented_; }
  const FiltrationRadius& radius() const { return radius_; }
  double degree() const { return degree_; }
  double log_abs_c() const { return log_abs_c_; }
  // Sum_j D_j A_j with A_j = (sum_{k<d}|a_k| + |delta|) / |c|.
  double tail_constant() const { return tail_constant_; }
  // |y| >= this and |x| < |y| starts the telescoping tail.
  double escape_threshold() const { return escape_threshold_; }
  // |G - log|y|| <= l1_constant() when |y| >= escape_threshold(), |x| < |y|.
  double l1_constant() const;
  // G <= max(log+|x|, log+|y|) + l3_constant() everywhere.
  double l3_constant() const { return l3_constant_; }

  Point orient(const Point& z) const { return dir_ == Direction::plus ? z : Point{z.y, z.x}; }

  // One application of the oriented word; false when the result overflows.
  bool sweep(Point& z) const;

  // Telescoping product from `start` until tail_bound <= threshold (and the
  // a-priori bound is valid) or max_sweeps. Throws BranchError when some
  // |v - 1| >= 1/2.
  TelescopeResult telescope(const Point& start, double threshold, int max_sweeps = 256) const;

private:
  struct Factor {
    std::vector<cplx> normalized;  // a_k / c, k < d
    cplx other;                    // delta / c
    cplx log_c;
    unsigned degree = 2;
    double weight = 1;             // product of the degrees applied after it
    double escape_constant = 0;
  };

  Direction dir_;
  HenonMap oriented_;
  FiltrationRadius radius_;
  std::vector<Factor> factors_;
  double degree_ = 2;
  double log_abs_c_ = 0;
  double tail_constant_ = 0;
  double max_escape_constant_ = 0;
  double escape_threshold_ = 0;
  double l3_constant_ = 0;
};

class BranchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class GreenFunction {
public:
  GreenFunction(const HenonMap& h, Direction dir) : engine_(h, dir) {}

  const EscapeEngine& engine() const { return engine_; }

  GreenValue evaluate(const Point& z, double tol = kDefaultTol, int maxiter = default_max_iter()) const;

  // v_n = (log|y_n| + log|c_H| / (d - 1)) / d^n for the sweeps from V_R+
  // entry onward (n = entry, entry + 1, ...), computed in log form.
  std::vector<double> partial_estimates(const Point& z, int count, int maxiter = default_max_iter()) const;

private:
  EscapeEngine engine_;
};

GreenValue green_plus(const HenonMap& h, const Point& z, double tol = kDefaultTol, int maxiter = default_max_iter());
GreenValue green_minus(const HenonMap& h, const Point& z, double tol = kDefaultTol, int maxiter = default_max_iter());

// max(G+ - c, 0); the bound is inherited.
GreenValue green_clipped(const GreenFunction& g, const Point& z, double c, double tol = kDefaultTol,
                         int maxiter = default_max_iter());
GreenValue green_clipped(const HenonMap& h, const Point& z, double c, double tol = kDefaultTol,
                         int maxiter = default_max_iter());

enum class Membership { inside, outside, undecided };
const char* membership_name(Membership m);

// outside iff the orbit enters V_R+ within maxiter steps; inside iff it
// stays in V_R u V_R- for maxiter steps.
Membership in_K_plus(const HenonMap& h, const Point& z, int maxiter = default_max_iter());
Membership in_K_plus(const GreenFunction& g, const Point& z, int maxiter = default_max_iter());

struct LevelPoint {
  Point point;
  double achieved_level = 0;
  double residual = 0;
  double t = 0;  // ray parameter
};

struct Ray {
  cplx x0;
  double theta = 0;
  Point at(double t) const;
};

class BracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kRayTMin = 1e-6;
inline constexpr double kRayTMax = 1e12;

// Bisection for G+ = c along z(t) = (x0, t e^{i theta}).
LevelPoint sample_level_plus(const GreenFunction& g, double c, const Ray& ray, double tol = 1e-9);
LevelPoint sample_level_plus(const HenonMap& h, double c, const Ray& ray, double tol = 1e-9);

struct Multiplier {
  double b_plus = 0;
  double b_minus = 0;
  double residual = 0;  // max |ratio - median|
  std::size_t used = 0;
};

// Median of G_{H,c}(F z) / G_{H,c}(z) over samples with G_{H,c}(z) > 10 tol.
Multiplier estimate_multiplier(const HenonMap& h, const AutoWord& f, double c, const std::vector<Point>& samples,
                               double tol = kDefaultTol);

// One CSV row per point: x_re,x_im,y_re,y_im,G_value,error_bound,iterations,escaped
std::string green_csv_header();
std::string green_csv_row(const Point& z, const GreenValue& v);

}  // namespace henon
