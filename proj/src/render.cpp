#include "henon/render.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <thread>

#include "henon/io.hpp"
#include "henon/mapspec.hpp"

namespace henon {

void SliceSpec::validate() const {
  if (width < 2 || height < 2) throw std::invalid_argument("slice resolution must be at least 2x2");
  if (!(u_min < u_max) || !(v_min < v_max)) throw std::invalid_argument("slice bounds must be increasing");
  if (e1 == Point{} && e2 == Point{}) throw std::invalid_argument("slice directions are both zero");
}

double SliceSpec::u_at(int i) const { return u_min + (i + 0.5) * (u_max - u_min) / width; }
double SliceSpec::v_at(int j) const { return v_max - (j + 0.5) * (v_max - v_min) / height; }

Point SliceSpec::embed(double u, double v) const {
  return {base.x + u * e1.x + v * e2.x, base.y + u * e1.y + v * e2.y};
}

GridResult sample_grid(const HenonMap& h, const SliceSpec& slice, double tol, int maxiter, unsigned threads) {
  slice.validate();
  const GreenFunction g(h, Direction::plus);
  GridResult out;
  out.slice = slice;
  out.map_digest = sha256_hex(serialize_map(h));
  out.values.resize(static_cast<std::size_t>(slice.width) * slice.height);

  std::atomic<int> next_row{0};
  auto worker = [&] {
    for (int j = next_row++; j < slice.height; j = next_row++) {
      const double v = slice.v_at(j);
      for (int i = 0; i < slice.width; ++i)
        out.values[static_cast<std::size_t>(j) * slice.width + i] = g.evaluate(slice.embed(slice.u_at(i), v), tol, maxiter);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(slice.height));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& v : out.values) out.undecided += v.status == EscapeStatus::undecided;
  return out;
}

GridResult field_grid(const SliceSpec& slice, const std::vector<double>& values) {
  slice.validate();
  if (values.size() != static_cast<std::size_t>(slice.width) * slice.height)
    throw std::invalid_argument("field size does not match the slice resolution");
  GridResult out;
  out.slice = slice;
  for (double v : values) {
    GreenValue g;
    g.value = v;
    g.escaped = v > 0;
    g.status = v > 0 ? EscapeStatus::escaped : EscapeStatus::bounded;
    out.values.push_back(g);
  }
  return out;
}

// --- marching squares ------------------------------------------------------------

namespace {

struct Segment {
  long a, b;  // edge ids
};

}  // namespace

std::vector<Polyline> contour_level(const GridResult& grid, double c) {
  if (!(c > 0)) throw std::invalid_argument("contour level must be positive");
  const SliceSpec& s = grid.slice;
  const int W = s.width, H = s.height;
  // Edge ids: 2*(j*W + i) joins node (i, j) to (i+1, j); +1 joins it to (i, j+1).
  auto h_edge = [W](int i, int j) { return 2L * (static_cast<long>(j) * W + i); };
  auto v_edge = [W](int i, int j) { return 2L * (static_cast<long>(j) * W + i) + 1; };

  std::vector<Segment> segs;
  for (int j = 0; j + 1 < H; ++j) {
    for (int i = 0; i + 1 < W; ++i) {
      const double q[4] = {grid.value(i, j), grid.value(i + 1, j), grid.value(i + 1, j + 1), grid.value(i, j + 1)};
      const bool up[4] = {q[0] >= c, q[1] >= c, q[2] >= c, q[3] >= c};
      // e0: n0-n1, e1: n1-n2, e2: n3-n2, e3: n0-n3
      const long e[4] = {h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
      const bool cut[4] = {up[0] != up[1], up[1] != up[2], up[3] != up[2], up[0] != up[3]};
      const int n = cut[0] + cut[1] + cut[2] + cut[3];
      if (n == 2) {
        long ends[2];
        int k = 0;
        for (int t = 0; t < 4; ++t)
          if (cut[t]) ends[k++] = e[t];
        segs.push_back({ends[0], ends[1]});
      } else if (n == 4) {
        const bool center_up = (q[0] + q[1] + q[2] + q[3]) / 4 >= c;
        if (center_up == up[0]) {
          // n0 and n2 join through the center; cut off n1 and n3.
          segs.push_back({e[0], e[1]});
          segs.push_back({e[2], e[3]});
        } else {
          segs.push_back({e[3], e[0]});
          segs.push_back({e[1], e[2]});
        }
      }
    }
  }

  auto vertex = [&](long id) -> std::array<double, 2> {
    const long node = id / 2;
    const int i = static_cast<int>(node % W), j = static_cast<int>(node / W);
    const int i2 = id % 2 == 0 ? i + 1 : i, j2 = id % 2 == 0 ? j : j + 1;
    const double a = grid.value(i, j), b = grid.value(i2, j2);
    const double t = (c - a) / (b - a);
    const double u = s.u_at(i) + t * (s.u_at(i2) - s.u_at(i));
    const double v = s.v_at(j) + t * (s.v_at(j2) - s.v_at(j));
    return {u, v};
  };

  std::map<long, std::vector<std::size_t>> at_edge;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    at_edge[segs[k].a].push_back(k);
    at_edge[segs[k].b].push_back(k);
  }
  std::vector<bool> used(segs.size(), false);
  auto walk = [&](std::size_t first, long start) {
    Polyline line;
    line.vertices.push_back(vertex(start));
    long cur = start;
    std::size_t seg = first;
    for (;;) {
      used[seg] = true;
      cur = segs[seg].a == cur ? segs[seg].b : segs[seg].a;
      line.vertices.push_back(vertex(cur));
      std::size_t nxt = segs.size();
      for (std::size_t cand : at_edge[cur])
        if (!used[cand]) nxt = cand;
      if (nxt == segs.size()) break;
      seg = nxt;
    }
    line.closed = cur == start && line.vertices.size() > 2;
    return line;
  };

  std::vector<Polyline> out;
  // Open chains start at edges touched by a single segment (the grid border).
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (used[k]) continue;
    if (at_edge[segs[k].a].size() == 1) out.push_back(walk(k, segs[k].a));
    else if (at_edge[segs[k].b].size() == 1) out.push_back(walk(k, segs[k].b));
  }
  for (std::size_t k = 0; k < segs.size(); ++k)
    if (!used[k]) out.push_back(walk(k, segs[k].a));
  return out;
}

std::string contour_csv(const std::vector<Polyline>& lines) {
  std::string out = "polyline_id,vertex_index,u,v\n";
  char buf[128];
  for (std::size_t p = 0; p < lines.size(); ++p) {
    for (std::size_t k = 0; k < lines[p].vertices.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", p, k, lines[p].vertices[k][0], lines[p].vertices[k][1]);
      out += buf;
    }
  }
  return out;
}

// --- images ------------------------------------------------------------------

namespace {

using Rgb = std::array<unsigned char, 3>;

constexpr Rgb kDark{18, 22, 38};
constexpr Rgb kLight{236, 230, 212};

// Piecewise-linear ramp through fixed stops, in integer arithmetic.
std::array<Rgb, 256> make_gradient() {
  constexpr int stops[5][3] = {{8, 10, 30}, {40, 60, 140}, {60, 170, 190}, {240, 210, 90}, {255, 250, 240}};
  std::array<Rgb, 256> g{};
  for (int k = 0; k < 256; ++k) {
    const int seg = std::min(3, k * 4 / 256);
    const int lo = seg * 64, t = k - lo;  // t in [0, 64)
    for (int ch = 0; ch < 3; ++ch)
      g[k][ch] = static_cast<unsigned char>(stops[seg][ch] + ((stops[seg + 1][ch] - stops[seg][ch]) * t) / 63);
  }
  return g;
}

}  // namespace

std::string encode_ppm(const GridResult& grid, const Palette& palette) {
  static const std::array<Rgb, 256> gradient = make_gradient();
  const int W = grid.slice.width, H = grid.slice.height;
  std::string out = "P6\n" + std::to_string(W) + " " + std::to_string(H) + "\n255\n";
  out.reserve(out.size() + 3 * static_cast<std::size_t>(W) * H);
  for (int j = 0; j < H; ++j) {
    for (int i = 0; i < W; ++i) {
      const double g = grid.value(i, j);
      Rgb px;
      if (palette.kind == Palette::Kind::two_tone) {
        px = g < palette.c ? kDark : kLight;
      } else {
        const double t = std::isfinite(g) ? g / (g + 1) : 1.0;
        px = gradient[std::min(255, static_cast<int>(t * 256))];
      }
      out.append(reinterpret_cast<const char*>(px.data()), 3);
    }
  }
  return out;
}

void write_image(const GridResult& grid, const Palette& palette, const std::string& path) {
  write_file_atomic(path, encode_ppm(grid, palette));
}

}  // namespace henon
