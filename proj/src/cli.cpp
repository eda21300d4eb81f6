#include "henon/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "henon/boettcher.hpp"
#include "henon/io.hpp"
#include "henon/mapspec.hpp"
#include "henon/render.hpp"
#include "henon/rigidity.hpp"

namespace henon {

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2, kNumeric = 3;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::vector<double> split_numbers(const std::string& text, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError(std::string("bad number in ") + what + ": \"" + item + "\"");
    v.push_back(d);
  }
  return v;
}

// "x,y" (real) or "x_re,x_im,y_re,y_im"
Point parse_point(const std::string& text) {
  const auto v = split_numbers(text, "point");
  if (v.size() == 2) return {{v[0], 0}, {v[1], 0}};
  if (v.size() == 4) return {{v[0], v[1]}, {v[2], v[3]}};
  throw UsageError("a point needs 2 or 4 comma-separated numbers: \"" + text + "\"");
}

// One numeral: exact rational literal if possible, else complex text.
std::pair<QComplex, bool> parse_numeral(const std::string& text) {
  try {
    return {QComplex::parse_rational(text), true};
  } catch (const std::exception&) {
  }
  try {
    return {QComplex::from_double(parse_cplx(text)), false};
  } catch (const std::exception&) {
    throw UsageError("bad numeral \"" + text + "\"");
  }
}

DiagonalScaling parse_scaling(const std::string& text) {
  if (text == "identity") return {};
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--C takes \"identity\" or \"delta_minus,delta_plus\"");
  const auto [dm, e1] = parse_numeral(text.substr(0, comma));
  const auto [dp, e2] = parse_numeral(text.substr(comma + 1));
  if (dm.is_zero() || dp.is_zero()) throw UsageError("--C entries must be nonzero");
  return {dm, dp, e1 && e2};
}

struct Outputs {
  std::string dir;
  std::map<std::string, std::string> written;  // name -> digest

  bool enabled() const { return !dir.empty(); }
  void put(const std::string& name, const std::string& bytes) {
    if (!enabled()) return;
    std::filesystem::create_directories(dir);
    write_file_atomic((std::filesystem::path(dir) / name).string(), bytes);
    written[name] = sha256_hex(bytes);
  }
  void finish() {
    if (!enabled() || written.empty()) return;
    std::string manifest;
    for (const auto& [name, digest] : written) manifest += digest + "  " + name + "\n";
    write_file_atomic((std::filesystem::path(dir) / "manifest.txt").string(), manifest);
  }
};

struct SliceFlags {
  std::string base = "0,0,0,0", e1 = "0,0,1,0", e2 = "0,0,0,1", bounds = "-2.5,2.5,-2.5,2.5", size = "256,256";

  void add(CLI::App* app) {
    app->add_option("--base", base, "slice origin x_re,x_im,y_re,y_im")->capture_default_str();
    app->add_option("--e1", e1, "direction of u")->capture_default_str();
    app->add_option("--e2", e2, "direction of v")->capture_default_str();
    app->add_option("--bounds", bounds, "u_min,u_max,v_min,v_max")->capture_default_str();
    app->add_option("--size", size, "width,height in pixels")->capture_default_str();
  }

  SliceSpec build() const {
    SliceSpec s;
    s.base = parse_point(base);
    s.e1 = parse_point(e1);
    s.e2 = parse_point(e2);
    const auto b = split_numbers(bounds, "--bounds");
    const auto z = split_numbers(size, "--size");
    if (b.size() != 4) throw UsageError("--bounds needs four numbers");
    if (z.size() != 2) throw UsageError("--size needs two integers");
    s.u_min = b[0], s.u_max = b[1], s.v_min = b[2], s.v_max = b[3];
    s.width = static_cast<int>(z[0]), s.height = static_cast<int>(z[1]);
    if (s.width != z[0] || s.height != z[1]) throw UsageError("--size needs integers");
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return s;
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Green functions, Böttcher coordinates and rigidity checks for complex Hénon maps", "henon"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Outputs outputs;
  std::string map_path, map1_path, map2_path, f_path, point_text;
  std::vector<std::string> points;
  double tol = kDefaultTol, c = 0, c1 = 0, c2 = 0, d1 = 0, d2 = 0;
  int maxiter = default_max_iter();
  bool minus = false, inverse = false;
  int steps = 10;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  unsigned threads = 0, mmax = 3, nmax = 3;
  std::string palette = "escape-log", scaling = "identity";
  SliceFlags slice_flags;

  auto add_out = [&](CLI::App* s) { s->add_option("--out", outputs.dir, "directory for artifacts and manifest"); };
  auto add_map = [&](CLI::App* s) { s->add_option("--map", map_path, "map spec JSON file")->required(); };

  auto* green = app.add_subcommand("green", "evaluate G+ (or G- with --minus)");
  add_map(green);
  green->add_option("--point", points, "x,y or x_re,x_im,y_re,y_im (repeatable)")->required();
  green->add_option("--tol", tol)->capture_default_str();
  green->add_option("--maxiter", maxiter)->capture_default_str();
  green->add_flag("--minus", minus);
  add_out(green);

  auto* orbit = app.add_subcommand("orbit", "print an orbit with filtration regions");
  add_map(orbit);
  orbit->add_option("--point", point_text)->required();
  orbit->add_option("--steps", steps)->capture_default_str();
  orbit->add_flag("--inverse", inverse);
  add_out(orbit);

  auto* render = app.add_subcommand("render", "PPM image of G+ over a slice");
  add_map(render);
  slice_flags.add(render);
  render->add_option("--palette", palette, "escape-log or two-tone")->capture_default_str();
  render->add_option("--c", c, "two-tone threshold")->capture_default_str();
  render->add_option("--tol", tol)->capture_default_str();
  render->add_option("--maxiter", maxiter)->capture_default_str();
  render->add_option("--threads", threads, "0 = hardware concurrency")->capture_default_str();
  render->add_option("--out", outputs.dir)->required();

  auto* contour = app.add_subcommand("contour", "level curves G+ = c over a slice as CSV");
  add_map(contour);
  slice_flags.add(contour);
  contour->add_option("--c", c)->required();
  contour->add_option("--tol", tol)->capture_default_str();
  contour->add_option("--maxiter", maxiter)->capture_default_str();
  contour->add_option("--threads", threads)->capture_default_str();
  add_out(contour);

  auto* classify = app.add_subcommand("classify", "case of an automorphism word");
  add_map(classify);
  add_out(classify);

  auto* boett = app.add_subcommand("boettcher", "Böttcher coordinate phi+ (or phi- with --minus)");
  add_map(boett);
  boett->add_option("--point", point_text)->required();
  boett->add_option("--tol", tol, "relative truncation tolerance");
  boett->add_flag("--minus", minus);
  add_out(boett);

  auto* vf = app.add_subcommand("verify-functorial", "G+ o H = d G+ and G- o H^-1 = d G- on samples");
  add_map(vf);
  samples = 1000;
  vf->add_option("--samples", samples)->capture_default_str();
  vf->add_option("--tol", tol, "residual tolerance (default 1e-6)");
  vf->add_option("--seed", seed)->capture_default_str();
  add_out(vf);

  auto* vi = app.add_subcommand("verify-invariance", "sampled check that F preserves the level G+ = c");
  add_map(vi);
  vi->add_option("--F", f_path, "map spec of F")->required();
  vi->add_option("--c", c)->required();
  vi->add_option("--samples", samples);
  vi->add_option("--tol", tol, "deviation tolerance (default 1e-6)");
  vi->add_option("--seed", seed)->capture_default_str();
  add_out(vi);

  auto* cm = app.add_subcommand("commute", "check H2 o H1 = C o H1 o H2 by exact expansion");
  cm->add_option("--map1", map1_path)->required();
  cm->add_option("--map2", map2_path)->required();
  cm->add_option("--C", scaling, "identity or delta_minus,delta_plus")->capture_default_str();
  cm->add_option("--tol", tol, "coefficient tolerance on the float backend");
  add_out(cm);

  auto* tl = app.add_subcommand("two-level", "moduli of delta+ and delta- and the constant relation");
  tl->add_option("--map1", map1_path)->required();
  tl->add_option("--map2", map2_path)->required();
  tl->add_option("--c1", c1)->capture_default_str();
  tl->add_option("--c2", c2)->capture_default_str();
  tl->add_option("--d1", d1)->capture_default_str();
  tl->add_option("--d2", d2)->capture_default_str();
  add_out(tl);

  auto* co = app.add_subcommand("coincide", "least (m, n) with F^m = H^n");
  co->add_option("--F", f_path)->required();
  co->add_option("--map", map_path)->required();
  co->add_option("--mmax", mmax)->capture_default_str();
  co->add_option("--nmax", nmax)->capture_default_str();
  add_out(co);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  const bool tol_given = [&] {
    for (auto* s : app.get_subcommands())
      if (auto* o = s->get_option_no_throw("--tol"); o && o->count() > 0) return true;
    return false;
  }();

  try {
    int status = kOk;
    std::string report;
    if (green->parsed()) {
      const ParsedMap m = load_map_spec(map_path);
      const GreenFunction g(m.henon(), minus ? Direction::minus : Direction::plus);
      std::string csv = green_csv_header() + "\n";
      std::vector<GreenValue> vals;
      for (const auto& p : points) {
        const Point z = parse_point(p);
        vals.push_back(g.evaluate(z, tol, maxiter));
        csv += green_csv_row(z, vals.back()) + "\n";
        if (vals.back().status == EscapeStatus::overflow) status = kNumeric;
      }
      if (vals.size() == 1) {
        const GreenValue& v = vals[0];
        out << "value: " << num(v.value) << "\n"
            << "error_bound: " << num(v.error_bound) << "\n"
            << "iterations: " << v.iterations << "\n"
            << "escaped: " << (v.escaped ? "true" : "false") << "\n"
            << "status: " << status_name(v.status) << "\n";
      } else {
        out << csv;
      }
      outputs.put("green.csv", csv);
    } else if (orbit->parsed()) {
      const ParsedMap m = load_map_spec(map_path);
      const HenonMap& h = m.henon();
      const double R = filtration_radius(h).R;
      Point z = parse_point(point_text);
      std::string csv = "n,x_re,x_im,y_re,y_im,region\n";
      auto row = [&](int n) {
        csv += std::to_string(n) + "," + num(z.x.real()) + "," + num(z.x.imag()) + "," + num(z.y.real()) + "," +
               num(z.y.imag()) + "," + region_name(region_of(z, R)) + "\n";
      };
      row(0);
      for (int n = 1; n <= steps; ++n) {
        try {
          z = inverse ? h.apply_inverse(z) : h.apply(z);
        } catch (const EscapedRange&) {
          err << "orbit left the representable range at step " << n << "\n";
          status = kNumeric;
          break;
        }
        row(n);
      }
      out << csv;
      outputs.put("orbit.csv", csv);
    } else if (render->parsed()) {
      const ParsedMap m = load_map_spec(map_path);
      const SliceSpec s = slice_flags.build();
      Palette pal;
      if (palette == "two-tone") pal = Palette::two_tone(c);
      else if (palette == "escape-log") pal = Palette::escape_log();
      else throw UsageError("--palette must be escape-log or two-tone");
      const GridResult grid = sample_grid(m.henon(), s, tol, maxiter, threads);
      const std::string ppm = encode_ppm(grid, pal);
      outputs.put("image.ppm", ppm);
      out << "image: image.ppm\n"
          << "sha256: " << sha256_hex(ppm) << "\n"
          << "undecided: " << grid.undecided << "\n";
    } else if (contour->parsed()) {
      if (!(c > 0)) throw UsageError("--c must be positive");
      const ParsedMap m = load_map_spec(map_path);
      const GridResult grid = sample_grid(m.henon(), slice_flags.build(), tol, maxiter, threads);
      const std::string csv = contour_csv(contour_level(grid, c));
      if (outputs.enabled()) outputs.put("contours.csv", csv);
      else out << csv;
    } else if (classify->parsed()) {
      const ParsedMap m = load_map_spec(map_path);
      const WordClass wc = classify_word(m.word());
      report = std::string("case: ") + case_name(wc.kind) + "\n" + "pattern: " + wc.pattern + "\n" +
               "indeterminacy_forward: " + wc.indeterminacy_fwd.to_text() + "\n" +
               "indeterminacy_backward: " + wc.indeterminacy_bwd.to_text() + "\n";
    } else if (boett->parsed()) {
      const ParsedMap m = load_map_spec(map_path);
      const double t = tol_given ? tol : kBoettcherTol;
      const Point z = parse_point(point_text);
      const BoettcherValue b = minus ? boettcher_minus(m.henon(), z, t) : boettcher_plus(m.henon(), z, t);
      const BoettcherConstants k = leading_constant(m.henon());
      report = "value: " + to_text(b.value) + "\n" + "error_bound: " + num(b.error_bound) + "\n" +
               "terms_used: " + std::to_string(b.terms_used) + "\n" + "c_H: " + to_text(k.c_H) + "\n" +
               "c_H_prime: " + to_text(k.c_H_prime) + "\n";
    } else if (vf->parsed()) {
      const ParsedMap m = load_map_spec(map_path);
      const FunctorialReport r = verify_functorial(m.henon(), samples, tol_given ? tol : 1e-6, seed);
      report = r.to_text();
      status = r.pass ? kOk : kFail;
    } else if (vi->parsed()) {
      if (!(c >= 0)) throw UsageError("--c must be nonnegative");
      const ParsedMap m = load_map_spec(map_path);
      const ParsedMap f = load_map_spec(f_path);
      const InvarianceReport r =
          verify_invariance(m.henon(), f.word(), c, samples ? samples : 50, tol_given ? tol : 1e-6, seed);
      report = r.to_text();
      status = r.pass ? kOk : kFail;
    } else if (cm->parsed()) {
      const ParsedMap a = load_map_spec(map1_path), b = load_map_spec(map2_path);
      const CommutationReport r =
          check_commutation_scaled(a.henon(), b.henon(), parse_scaling(scaling), tol_given ? tol : 1e-9);
      report = r.to_text();
      status = r.holds ? kOk : kFail;
    } else if (tl->parsed()) {
      const ParsedMap a = load_map_spec(map1_path), b = load_map_spec(map2_path);
      const TwoLevelResult r = two_level_delta(a.henon(), b.henon(), c1, c2, d1, d2);
      report = r.to_text();
      status = r.relation_residual.is_zero() ? kOk : kFail;
    } else if (co->parsed()) {
      const ParsedMap f = load_map_spec(f_path), h = load_map_spec(map_path);
      const auto hit = f.is_henon() ? iterate_coincidence(f.henon(), h.henon(), mmax, nmax)
                                    : iterate_coincidence(f.word(), h.henon(), mmax, nmax);
      report = "result: " + (hit ? std::to_string(hit->first) + "," + std::to_string(hit->second) : "none") + "\n";
    }
    if (!report.empty()) {
      out << report;
      outputs.put("report.txt", report);
    }
    outputs.finish();
    return status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const MapSpecError& e) {
    err << "map spec error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace henon
