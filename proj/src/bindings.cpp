#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "henon/boettcher.hpp"
#include "henon/cli.hpp"
#include "henon/io.hpp"
#include "henon/mapspec.hpp"
#include "henon/render.hpp"
#include "henon/rigidity.hpp"

namespace py = pybind11;
using namespace henon;

namespace {

HenonMap henon_from_json(const std::string& spec) { return parse_map_spec(spec).henon(); }

py::dict green_dict(const GreenValue& v) {
  py::dict d;
  d["value"] = v.value;
  d["error_bound"] = v.error_bound;
  d["iterations"] = v.iterations;
  d["escaped"] = v.escaped;
  d["status"] = status_name(v.status);
  return d;
}

SliceSpec square_slice(double half_width, int size) {
  SliceSpec s;
  s.u_min = s.v_min = -half_width;
  s.u_max = s.v_max = half_width;
  s.width = s.height = size;
  return s;
}

}  // namespace

PYBIND11_MODULE(_henon, m) {
  m.doc() = "Escape-rate Green functions, Böttcher coordinates and rigidity checks for Hénon maps";

  py::register_exception<MapSpecError>(m, "MapSpecError", PyExc_ValueError);
  py::register_exception<BranchError>(m, "BranchError", PyExc_ArithmeticError);

  py::class_<Point>(m, "Point")
      .def(py::init<cplx, cplx>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y)
      .def("__repr__", [](const Point& p) { return "Point(" + to_text(p.x) + ", " + to_text(p.y) + ")"; });
  py::implicitly_convertible<py::tuple, Point>();

  py::class_<HenonMap>(m, "HenonMap")
      .def(py::init(&henon_from_json), py::arg("spec_json"))
      .def_property_readonly("degree", &HenonMap::degree)
      .def("apply", &HenonMap::apply)
      .def("apply_inverse", &HenonMap::apply_inverse)
      .def("then", &HenonMap::then)
      .def("power", &HenonMap::power)
      .def("to_json", [](const HenonMap& h) { return serialize_map(h); });

  m.def("filtration_radius", [](const HenonMap& h) { return filtration_radius(h).R; });
  m.def(
      "green_plus", [](const HenonMap& h, const Point& z, double tol) { return green_dict(green_plus(h, z, tol)); },
      py::arg("map"), py::arg("point"), py::arg("tol") = kDefaultTol);
  m.def(
      "green_minus", [](const HenonMap& h, const Point& z, double tol) { return green_dict(green_minus(h, z, tol)); },
      py::arg("map"), py::arg("point"), py::arg("tol") = kDefaultTol);
  m.def("in_K_plus", [](const HenonMap& h, const Point& z) { return std::string(membership_name(in_K_plus(h, z))); });
  m.def(
      "boettcher_plus",
      [](const HenonMap& h, const Point& z, double tol) {
        const BoettcherValue b = boettcher_plus(h, z, tol);
        return py::make_tuple(b.value, b.error_bound);
      },
      py::arg("map"), py::arg("point"), py::arg("tol") = kBoettcherTol);
  m.def("leading_constants", [](const HenonMap& h) {
    const BoettcherConstants k = leading_constant(h);
    return py::make_tuple(to_text(k.c_H), to_text(k.c_H_prime));
  });
  m.def(
      "verify_functorial",
      [](const HenonMap& h, std::size_t n, double tol, std::uint64_t seed) {
        const FunctorialReport r = verify_functorial(h, n, tol, seed);
        return py::make_tuple(r.pass, r.to_text());
      },
      py::arg("map"), py::arg("samples") = 1000, py::arg("tol") = 1e-6, py::arg("seed") = 1);
  m.def(
      "render_ppm",
      [](const HenonMap& h, double half_width, int size, double c, unsigned threads) {
        const GridResult g = sample_grid(h, square_slice(half_width, size), kDefaultTol, default_max_iter(), threads);
        return py::bytes(encode_ppm(g, c > 0 ? Palette::two_tone(c) : Palette::escape_log()));
      },
      py::arg("map"), py::arg("half_width") = 2.5, py::arg("size") = 256, py::arg("c") = 0.0, py::arg("threads") = 0,
      "PPM of G+ on the plane x = 0; c > 0 selects the two-tone palette");
  m.def("sha256_hex", [](const py::bytes& b) { return sha256_hex(std::string(b)); });
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
