#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "irgrowth/borel_transform.hpp"
#include "irgrowth/canonical_product.hpp"
#include "irgrowth/contour.hpp"
#include "irgrowth/errors.hpp"
#include "irgrowth/growth.hpp"
#include "irgrowth/log_complex.hpp"
#include "irgrowth/profile.hpp"
#include "irgrowth/zero_lattice.hpp"

namespace py = pybind11;
using namespace irgrowth;

namespace {

GrowthProfile control_profile(const std::string& name, double theta, const std::vector<double>& radii) {
  if (name == "exp2z") return sample_profile(name, theta, radii, controls::log_abs_exp2z);
  if (name == "sin2z") return sample_profile(name, theta, radii, controls::log_abs_sin2z);
  throw std::invalid_argument("unknown control '" + name + "' (exp2z or sin2z)");
}

py::dict integration_dict(const IntegrationResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["error_estimate"] = r.error_estimate;
  d["nodes"] = r.nodes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dyadic zero lattice, its canonical product, Borel transform and growth diagnostics";

  py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<LatticeExhausted>(m, "LatticeExhausted", PyExc_IndexError);
  py::register_exception<InsufficientSamples>(m, "InsufficientSamples", PyExc_ValueError);

  py::class_<LogComplex>(m, "LogComplex")
      .def(py::init<>())
      .def_static("from_complex", &LogComplex::from_complex)
      .def_static("polar", &LogComplex::polar, py::arg("log_mag"), py::arg("arg"))
      .def_readonly("log_mag", &LogComplex::log_mag)
      .def_readonly("arg", &LogComplex::arg)
      .def("is_zero", &LogComplex::is_zero)
      .def("to_complex", &LogComplex::to_complex)
      .def("__mul__", [](const LogComplex& a, const LogComplex& b) { return lc_mul(a, b); })
      .def("__add__", [](const LogComplex& a, const LogComplex& b) { return lc_add(a, b); })
      .def("__repr__", [](const LogComplex& a) {
        return "LogComplex(log_mag=" + std::to_string(a.log_mag) + ", arg=" + std::to_string(a.arg) + ")";
      });

  py::class_<ZeroLattice>(m, "ZeroLattice")
      .def(py::init<int, double>(), py::arg("k_max") = ZeroLattice::kDefaultKMax, py::arg("rotation") = 0.0)
      .def_property_readonly("k_max", &ZeroLattice::k_max)
      .def_property_readonly("radius", &ZeroLattice::radius)
      .def_property_readonly("total_zeros", &ZeroLattice::total_zeros)
      .def("zero", &ZeroLattice::zero, py::arg("k"), py::arg("j"))
      .def("circle", &ZeroLattice::circle, py::arg("k"))
      .def("counting", &ZeroLattice::counting, py::arg("r"))
      .def("normalized_count", &ZeroLattice::normalized_count, py::arg("r"))
      .def("reciprocal_sum", &ZeroLattice::reciprocal_sum, py::arg("r"));

  m.def("verify_lattice", [](const ZeroLattice& lattice) {
    const LatticeReport r = verify_lattice(lattice);
    py::dict d;
    d["k_max"] = r.k_max;
    d["sup_normalized_count"] = r.sup_normalized_count;
    d["max_reciprocal_sum"] = r.max_reciprocal_sum;
    d["counting_bound_holds"] = r.counting_bound_holds;
    d["reciprocal_bound_holds"] = r.reciprocal_bound_holds;
    return d;
  });

  py::class_<GrowthProfile>(m, "GrowthProfile")
      .def(py::init([](std::string id, double theta, std::vector<double> radii, std::vector<double> values) {
             GrowthProfile p{std::move(id), theta, std::move(radii), std::move(values)};
             p.validate();
             return p;
           }),
           py::arg("function_id"), py::arg("theta"), py::arg("radii"), py::arg("values"))
      .def_readonly("function_id", &GrowthProfile::function_id)
      .def_readonly("theta", &GrowthProfile::theta)
      .def_readonly("radii", &GrowthProfile::radii)
      .def_readonly("values", &GrowthProfile::values);

  m.def("geometric_radii", &geometric_radii, py::arg("r_min"), py::arg("r_max"), py::arg("samples"));
  m.def("control_profile", &control_profile, py::arg("name"), py::arg("theta"), py::arg("radii"),
        "log|h|/r along a ray for h = e^{2z} ('exp2z') or sin(2z) ('sin2z').");

  py::class_<ProductEvaluator>(m, "ProductEvaluator")
      .def(py::init<ZeroLattice, int>(), py::arg("lattice") = ZeroLattice{},
           py::arg("tail_margin") = ProductEvaluator::kDefaultTailMargin)
      .def_property_readonly("lattice", &ProductEvaluator::lattice)
      .def("cutoff", &ProductEvaluator::cutoff, py::arg("z"))
      .def("eval_log", &ProductEvaluator::eval_log, py::arg("z"), py::call_guard<py::gil_scoped_release>())
      .def("__call__", [](const ProductEvaluator& f, std::complex<double> z) { return f.eval_log(z).to_complex(); })
      .def("eval_log_truncated", &ProductEvaluator::eval_log_truncated, py::arg("z"), py::arg("k_cut"))
      .def("eval_log_direct", &ProductEvaluator::eval_log_direct, py::arg("z"), py::arg("k_cut"),
           py::call_guard<py::gil_scoped_release>())
      .def("growth_profile", &ProductEvaluator::growth_profile, py::arg("theta"), py::arg("r_min"),
           py::arg("r_max"), py::arg("samples"), py::call_guard<py::gil_scoped_release>())
      .def("max_modulus", &ProductEvaluator::max_modulus, py::arg("r"), py::arg("n_theta") = 64)
      .def("max_modulus_profile", &ProductEvaluator::max_modulus_profile, py::arg("radii"),
           py::arg("n_theta") = 64, py::call_guard<py::gil_scoped_release>());

  py::class_<CoefficientStream>(m, "CoefficientStream")
      .def(py::init<>())
      .def("taylor", [](const CoefficientStream& s, std::uint64_t k) {
        const auto a = s.taylor(k);
        return py::make_tuple(a.sign, a.log2_abs);
      }, py::arg("m"), "(sign, log2|a_m|) with a_m = sign * 2^log2|a_m|")
      .def("borel", [](const CoefficientStream& s, std::uint64_t k) {
        const auto c = s.borel(k);
        return py::make_tuple(c.sign, c.log_abs);
      }, py::arg("m"), "(sign, log|c_m|) with c_m = m! a_m");

  py::class_<BorelEvaluator>(m, "BorelEvaluator")
      .def(py::init<double, double>(), py::arg("min_modulus") = BorelEvaluator::kDefaultMinModulus,
           py::arg("term_floor") = BorelEvaluator::kDefaultTermFloor)
      .def("__call__", [](const BorelEvaluator& g, std::complex<double> s) { return g(s); }, py::arg("s"))
      .def("evaluate", [](const BorelEvaluator& g, std::complex<double> s) {
        const auto r = g.evaluate(s);
        return py::make_tuple(r.value, r.tail_bound, r.last_index);
      }, py::arg("s"), "(value, tail_bound, last_index)");

  m.def("borel_inversion", [](std::complex<double> z, double radius) {
    return integration_dict(borel_inversion(z, radius));
  }, py::arg("z"), py::arg("radius") = 4.0);
  m.def("u_eval", [](std::complex<double> z) { return integration_dict(u_eval(z)); }, py::arg("z"));
  m.def("u_eval_log", [](std::complex<double> z) { return u_eval_log(z); }, py::arg("z"));
  m.def("F_eval", [](std::complex<double> z) { return integration_dict(F_eval(z)); }, py::arg("z"));
  m.def("F_via_identity", [](std::complex<double> z, const ProductEvaluator& f) {
    return F_via_identity(z, f);
  }, py::arg("z"), py::arg("f"));
  m.def("splitting_residual", [](std::complex<double> z, const ProductEvaluator& f) {
    return splitting_residual(F_eval(z), u_eval(z), f.eval_log(z).to_complex());
  }, py::arg("z"), py::arg("f"), "|F(z) + u(z) - f(z)|");
  m.attr("U_DECAY_CONSTANT") = kUDecayConstant;

  py::class_<WindowStats>(m, "WindowStats")
      .def_readonly("k", &WindowStats::k)
      .def_readonly("r_lo", &WindowStats::r_lo)
      .def_readonly("r_hi", &WindowStats::r_hi)
      .def_readonly("inf", &WindowStats::inf)
      .def_readonly("q_low", &WindowStats::q_low)
      .def_readonly("q_high", &WindowStats::q_high)
      .def_readonly("sup", &WindowStats::sup)
      .def_readonly("samples", &WindowStats::samples)
      .def_property_readonly("width", &WindowStats::width);

  m.def("window_stats", &window_stats, py::arg("profile"), py::arg("q") = 0.1,
        py::arg("min_samples") = kMinWindowSamples);

  py::class_<IntervalSet>(m, "IntervalSet")
      .def(py::init<>())
      .def("add", &IntervalSet::add, py::arg("lo"), py::arg("hi"))
      .def("contains", &IntervalSet::contains, py::arg("r"))
      .def_property_readonly("intervals", &IntervalSet::intervals);
  m.def("relative_measure", &relative_measure, py::arg("e"), py::arg("r"));

  m.def("classify", [](const GrowthProfile& p, double q, double gap_tol, double drift_tol,
                       std::size_t trailing_windows) {
    ClassifyOptions opts;
    opts.q = q;
    opts.gap_tol = gap_tol;
    opts.drift_tol = drift_tol;
    opts.trailing_windows = trailing_windows;
    const RegularityVerdict v = classify(p, opts);
    py::dict d;
    d["function_id"] = v.function_id;
    d["theta"] = v.theta;
    d["verdict"] = to_string(v.verdict);
    d["limit_or_gap"] = v.limit_or_gap;
    d["windows"] = v.windows;
    return d;
  }, py::arg("profile"), py::arg("q") = 0.1, py::arg("gap_tol") = 0.02, py::arg("drift_tol") = 0.02,
     py::arg("trailing_windows") = 4);

  m.def("type_estimate", [](const std::vector<GrowthProfile>& profiles) {
    const TypeEstimate t = type_estimate(profiles);
    return py::make_tuple(t.value, t.theta, t.max_radius);
  }, py::arg("profiles"), "(value, theta, max_radius)");
}
