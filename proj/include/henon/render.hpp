#pragma once

// Green-function grids over real 2D slices of C^2, level curves by marching
// squares, and PPM output.
//
// Pixel (i, j) samples the slice at its center: u = u_min + (i + 1/2) du,
// v = v_max - (j + 1/2) dv, so row 0 is the top of the image.

#include <array>
#include <string>
#include <vector>

#include "henon/green.hpp"

namespace henon {

struct SliceSpec {
  Point base{};
  Point e1{{0, 0}, {1, 0}};  // default: the plane x = 0, u = Re y, v = Im y
  Point e2{{0, 0}, {0, 1}};
  double u_min = -1, u_max = 1, v_min = -1, v_max = 1;
  int width = 2, height = 2;

  void validate() const;  // throws std::invalid_argument
  double u_at(int i) const;
  double v_at(int j) const;
  Point embed(double u, double v) const;
};

struct GridResult {
  SliceSpec slice;
  std::vector<GreenValue> values;  // row-major, height x width
  std::string map_digest;
  std::size_t undecided = 0;

  const GreenValue& at(int i, int j) const { return values[static_cast<std::size_t>(j) * slice.width + i]; }
  double value(int i, int j) const { return at(i, j).value; }
};

// threads = 0 picks the hardware concurrency. Output does not depend on it.
GridResult sample_grid(const HenonMap& h, const SliceSpec& slice, double tol = kDefaultTol,
                       int maxiter = default_max_iter(), unsigned threads = 0);

// A grid holding arbitrary values, for contouring synthetic fields.
GridResult field_grid(const SliceSpec& slice, const std::vector<double>& values);

struct Polyline {
  std::vector<std::array<double, 2>> vertices;  // (u, v)
  bool closed = false;
};

std::vector<Polyline> contour_level(const GridResult& grid, double c);

// polyline_id,vertex_index,u,v
std::string contour_csv(const std::vector<Polyline>& lines);

struct Palette {
  enum class Kind { escape_log, two_tone };
  Kind kind = Kind::escape_log;
  double c = 0;  // threshold for two_tone

  static Palette escape_log() { return {Kind::escape_log, 0}; }
  static Palette two_tone(double c) { return {Kind::two_tone, c}; }
};

std::string encode_ppm(const GridResult& grid, const Palette& palette);
void write_image(const GridResult& grid, const Palette& palette, const std::string& path);

}  // namespace henon
