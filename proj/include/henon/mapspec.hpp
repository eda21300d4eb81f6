#pragma once

// JSON map specs:
//
//   {"factors":[{"kind":"henon","p":[0,0,1],"delta":1}]}
//
// Factors are listed first-applied-first. Kinds and fields:
//   henon       p (coefficients from power 0 up), delta
//   affine      a, b, f, c, d, g      (a x + b y + f, c x + d y + g)
//   elementary  alpha, beta, gamma, p (alpha x + p(y), beta y + gamma)
// A numeral is a JSON integer, a string "p/q" or decimal, a JSON float, or
// {"re": numeral, "im": numeral}. Any JSON float switches the whole map to
// the float64 backend; otherwise arithmetic is exact.

#include <stdexcept>
#include <string>
#include <variant>

#include "henon/maps.hpp"

namespace henon {

class MapSpecError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParsedMap {
public:
  explicit ParsedMap(HenonMap h) : map_(std::move(h)) {}
  explicit ParsedMap(AutoWord w) : map_(std::move(w)) {}

  bool is_henon() const { return std::holds_alternative<HenonMap>(map_); }
  const HenonMap& henon() const;  // throws MapSpecError for other words
  AutoWord word() const;
  bool exact() const;

private:
  std::variant<HenonMap, AutoWord> map_;
};

ParsedMap parse_map_spec(const std::string& text);
ParsedMap load_map_spec(const std::string& path);

std::string serialize_map(const HenonMap& h);
std::string serialize_map(const AutoWord& w);
std::string serialize_map(const ParsedMap& m);

}  // namespace henon
