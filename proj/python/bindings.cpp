#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <sstream>

#include "entire_dynamics/cli.hpp"
#include "entire_dynamics/topology.hpp"

namespace py = pybind11;
using namespace ed;

namespace {

py::array_t<std::uint8_t> as_array(const std::vector<std::uint8_t>& v, int w, int h) {
  py::array_t<std::uint8_t> out({h, w});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

PixelSet pixel_set(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::InvalidArgument, "mask must be a 2-d array");
  PixelSet s(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  for (std::size_t i = 0; i < s.mask.size(); ++i) s.mask[i] = a.data()[i] ? 1 : 0;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dynamics of the entire maps alpha*erf(z)+beta and friends";

  static py::exception<Error> error_type(m, "EdError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(to_string(e.code())) + ": " + e.what());
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  // special functions and parameters
  m.def("erf", [](Complex z) { return erf(z).value; }, py::arg("z"));
  m.def("erf_with_error", [](Complex z) {
    const ErfEvaluation e = erf(z);
    return py::make_tuple(e.value, e.est_abs_error);
  });
  m.def("f_ab", &f_ab, py::arg("z"), py::arg("alpha"), py::arg("beta"));
  m.def("f_ab_prime", &f_ab_prime, py::arg("z"), py::arg("alpha"));

  py::class_<ErfRoot>(m, "ErfRoot")
      .def_readonly("root", &ErfRoot::root)
      .def_readonly("iterations", &ErfRoot::iterations)
      .def_readonly("residual", &ErfRoot::residual);
  py::class_<ErfFamilyParams>(m, "ErfFamilyParams")
      .def_readonly("c", &ErfFamilyParams::c)
      .def_readonly("alpha", &ErfFamilyParams::alpha)
      .def_readonly("beta", &ErfFamilyParams::beta)
      .def_readonly("fixed_point_residual", &ErfFamilyParams::fixed_point_residual)
      .def_readonly("multiplier_residual", &ErfFamilyParams::multiplier_residual)
      .def_property_readonly("fixed_point", &ErfFamilyParams::fixed_point);
  m.def("solve_erf_equals_one", &solve_erf_equals_one, py::arg("seed") = kTabulatedRootSeed,
        py::arg("tol") = kDefaultRootTolerance);
  m.def("derive_params", &derive_params, py::arg("c"), py::arg("tol") = kResidualTolerance);
  m.def("reference_params", &reference_params, py::return_value_policy::reference);
  m.def("asymptotic_values", &asymptotic_values);

  // classifier
  py::enum_<OrbitTag>(m, "OrbitTag")
      .value("Escaping", OrbitTag::Escaping)
      .value("Bounded", OrbitTag::Bounded)
      .value("Bungee", OrbitTag::Bungee)
      .value("FastEscaping", OrbitTag::FastEscaping)
      .value("Undetermined", OrbitTag::Undetermined);
  py::class_<ClassifierConfig>(m, "ClassifierConfig")
      .def(py::init<>())
      .def_readwrite("escape_radius", &ClassifierConfig::escape_radius)
      .def_readwrite("bound_radius", &ClassifierConfig::bound_radius)
      .def_readwrite("max_iter", &ClassifierConfig::max_iter)
      .def_readwrite("confirm_window", &ClassifierConfig::confirm_window)
      .def_readwrite("overflow_threshold", &ClassifierConfig::overflow_threshold)
      .def("validate", &ClassifierConfig::validate);
  py::class_<OrbitEvidence>(m, "OrbitEvidence")
      .def_readonly("iterations", &OrbitEvidence::iterations)
      .def_readonly("max_modulus", &OrbitEvidence::max_modulus)
      .def_readonly("min_modulus_after_burn_in", &OrbitEvidence::min_modulus_after_burn_in)
      .def_readonly("first_escape_index", &OrbitEvidence::first_escape_index)
      .def_readonly("excursions", &OrbitEvidence::excursions)
      .def_readonly("saturated", &OrbitEvidence::saturated);
  py::class_<OrbitClass>(m, "OrbitClass")
      .def_readonly("tag", &OrbitClass::tag)
      .def_readonly("evidence", &OrbitClass::evidence);
  py::class_<DynamicalMap>(m, "DynamicalMap")
      .def("__call__", &DynamicalMap::operator())
      .def_readonly("label", &DynamicalMap::label)
      .def_readonly("is_polynomial", &DynamicalMap::is_polynomial)
      .def_readonly("known_asymptotic_values", &DynamicalMap::known_asymptotic_values);
  m.def(
      "make_map", [](const std::string& name, const MapParams& params) { return builtin_registry().make(name, params); },
      py::arg("name"), py::arg("params") = MapParams{});
  m.def("map_names", [] { return builtin_registry().names(); });
  m.def("classify", &classify, py::arg("map"), py::arg("z"), py::arg("cfg") = ClassifierConfig{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<MaxModulus>(m, "MaxModulus")
      .def_readonly("value", &MaxModulus::value)
      .def_readonly("saturated", &MaxModulus::saturated);
  py::class_<ModulusLadder>(m, "ModulusLadder")
      .def_readonly("base_radius", &ModulusLadder::base_radius)
      .def_readonly("values", &ModulusLadder::values)
      .def_readonly("depth", &ModulusLadder::depth)
      .def_readonly("saturated", &ModulusLadder::saturated);
  py::class_<FastEscapeCertificate>(m, "FastEscapeCertificate")
      .def_readonly("fast_escaping", &FastEscapeCertificate::fast_escaping)
      .def_readonly("shift", &FastEscapeCertificate::shift);
  m.def("max_modulus", &max_modulus, py::arg("map"), py::arg("r"), py::arg("samples") = 4096,
        py::arg("overflow_threshold") = 1e150);
  m.def("modulus_ladder", &modulus_ladder, py::arg("map"), py::arg("base_radius"), py::arg("depth"),
        py::arg("samples") = 4096, py::arg("overflow_threshold") = 1e150);
  m.def("classify_fast_escaping", &classify_fast_escaping, py::arg("map"), py::arg("z"), py::arg("ladder"),
        py::arg("cfg") = ClassifierConfig{});

  // raster
  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](Complex center, double width, int px_w, int px_h) { return GridSpec{center, width, px_w, px_h}; }),
           py::arg("center") = Complex{}, py::arg("width") = 4.0, py::arg("px_w") = 400, py::arg("px_h") = 400)
      .def_readwrite("center", &GridSpec::center)
      .def_readwrite("width", &GridSpec::width)
      .def_readwrite("px_w", &GridSpec::px_w)
      .def_readwrite("px_h", &GridSpec::px_h)
      .def("pixel_center", [](const GridSpec& g, int x, int y) { return g.pixel_center({x, y}); })
      .def("pixel_of", [](const GridSpec& g, Complex z) -> py::object {
        const auto p = g.pixel_of(z);
        return p ? py::object(py::make_tuple(p->x, p->y)) : py::object(py::none());
      });
  m.def("reference_viewport", &reference_viewport, py::arg("px"));
  py::class_<ClassificationRaster>(m, "ClassificationRaster")
      .def_readonly("grid", &ClassificationRaster::grid)
      .def_property_readonly("cells",
                             [](const ClassificationRaster& r) {
                               std::vector<std::uint8_t> v(r.cells.size());
                               std::transform(r.cells.begin(), r.cells.end(), v.begin(),
                                              [](OrbitTag t) { return static_cast<std::uint8_t>(t); });
                               return as_array(v, r.grid.px_w, r.grid.px_h);
                             })
      .def_property_readonly("julia_mask",
                             [](const ClassificationRaster& r) { return as_array(r.julia_mask, r.grid.px_w, r.grid.px_h); })
      .def("counts", [](const ClassificationRaster& r) {
        py::dict d;
        const auto c = r.counts();
        for (int i = 0; i < kOrbitTagCount; ++i) d[to_string(static_cast<OrbitTag>(i))] = c[i];
        return d;
      });
  m.def("rasterize", &rasterize, py::arg("map"), py::arg("grid"), py::arg("cfg") = ClassifierConfig{},
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "render", [](const ClassificationRaster& r, const std::filesystem::path& out) { render(r, {}, out); },
      py::arg("raster"), py::arg("path"));

  // topology on 2-d masks (nonzero = in the set)
  m.def("connected_with_infinity", [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
    return connected_with_infinity(pixel_set(a));
  });
  m.def(
      "separates_from_infinity",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a, int x, int y) {
        return separates_from_infinity(pixel_set(a), {x, y});
      },
      py::arg("mask"), py::arg("x"), py::arg("y"));
  m.def("spiderweb_detect", [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
    const SpiderwebResult s = spiderweb_detect(pixel_set(a));
    py::dict d;
    d["candidate"] = s.candidate;
    d["nested_domain_count"] = s.nested_domain_count;
    d["set_components"] = s.set_components;
    d["bounded_complementary_components"] = s.bounded_complementary_components;
    return d;
  });
  m.def("corollary_check", [](const ClassificationRaster& r) {
    const CorollaryVerdict v = corollary_check(r);
    py::dict d;
    d["escaping_spiderweb"] = v.escaping_spiderweb.candidate;
    d["bounded_or_bungee_components"] = v.bounded_or_bungee_components;
    d["bounded_or_bungee_disconnected"] = v.bounded_or_bungee_disconnected;
    d["consistent"] = v.consistent;
    return d;
  });

  // command line
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"edyn"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
