#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opuc/cmv.hpp"
#include "opuc/coeffs.hpp"
#include "opuc/jacobi.hpp"
#include "opuc/json_io.hpp"
#include "opuc/moebius.hpp"
#include "opuc/polys.hpp"
#include "opuc/schur.hpp"
#include "opuc/spectral.hpp"

namespace py = pybind11;
using namespace opuc;

namespace {

std::vector<std::vector<cdouble>> dense_block(const CmvWindow& w,
                                              std::int64_t r0,
                                              std::int64_t r1) {
  auto flat = w.to_dense(r0, r1);
  auto n = static_cast<std::size_t>(r1 - r0 + 1);
  std::vector<std::vector<cdouble>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    rows[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * n),
                   flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "CMV and Schur-function analysis kernels";

  py::enum_<Orientation>(m, "Orientation")
      .value("half_line", Orientation::half_line)
      .value("whole_line", Orientation::whole_line);

  py::enum_<Side>(m, "Side")
      .value("plus", Side::plus)
      .value("minus", Side::minus);

  py::enum_<Distribution>(m, "Distribution")
      .value("rademacher", Distribution::rademacher)
      .value("uniform", Distribution::uniform);

  py::enum_<BoundaryPath>(m, "BoundaryPath")
      .value("closed_form", BoundaryPath::closed_form)
      .value("rational", BoundaryPath::rational)
      .value("periodic", BoundaryPath::periodic)
      .value("phase_twist", BoundaryPath::phase_twist)
      .value("extrapolated", BoundaryPath::extrapolated);

  py::class_<ScaleSequence>(m, "ScaleSequence")
      .def(py::init([](double value, double power) {
             return ScaleSequence{value, power};
           }),
           py::arg("value"), py::arg("power") = 0.0)
      .def_readwrite("value", &ScaleSequence::value)
      .def_readwrite("power", &ScaleSequence::power);

  py::class_<ZeroTail>(m, "ZeroTail").def(py::init<>());
  py::class_<ConstantTail>(m, "ConstantTail")
      .def(py::init([](cdouble value) {
             return ConstantTail{value};
           }),
           py::arg("value"))
      .def_readwrite("value", &ConstantTail::value);
  py::class_<PeriodicTail>(m, "PeriodicTail")
      .def(py::init([](std::vector<cdouble> values) {
             return PeriodicTail{std::move(values)};
           }),
           py::arg("values"))
      .def_readwrite("values", &PeriodicTail::values);

  py::class_<VerblunskyDescriptor>(m, "VerblunskyDescriptor")
      .def_static("constant", &VerblunskyDescriptor::constant, py::arg("value"),
                  py::arg("orientation") = Orientation::half_line)
      .def_static("periodic", &VerblunskyDescriptor::periodic,
                  py::arg("values"),
                  py::arg("orientation") = Orientation::half_line)
      .def_static("explicit_list", &VerblunskyDescriptor::explicit_list,
                  py::arg("values"), py::arg("tail") = TailRule{ZeroTail{}})
      .def_static("finite_support", &VerblunskyDescriptor::finite_support,
                  py::arg("support"),
                  py::arg("orientation") = Orientation::whole_line)
      .def_static("sparse", &VerblunskyDescriptor::sparse, py::arg("base"),
                  py::arg("value"),
                  py::arg("orientation") = Orientation::half_line,
                  py::arg("offset") = 0)
      .def_static("lopez", &VerblunskyDescriptor::lopez, py::arg("n0"),
                  py::arg("k"), py::arg("a"), py::arg("b"), py::arg("t"),
                  py::arg("t0"), py::arg("orientation") = Orientation::half_line)
      .def_static("random", &VerblunskyDescriptor::random, py::arg("base"),
                  py::arg("scale"), py::arg("dist"), py::arg("seed"))
      .def_static("from_json",
                  [](const std::string& s) {
                    return descriptor_from_json(json::parse(s));
                  })
      .def_readonly("orientation", &VerblunskyDescriptor::orientation)
      .def("to_json",
           [](const VerblunskyDescriptor& d) {
             return descriptor_to_json(d).dump();
           })
      .def("__repr__", [](const VerblunskyDescriptor& d) {
        return "VerblunskyDescriptor(" + descriptor_to_json(d).dump() + ")";
      });

  m.def("value_at", &value_at, py::arg("desc"), py::arg("n"));
  m.def("shift", &shift, py::arg("desc"), py::arg("m"));

  py::class_<RightLimit>(m, "RightLimit")
      .def_readonly("descriptor", &RightLimit::descriptor)
      .def_readonly("witness_shifts", &RightLimit::witness_shifts)
      .def_readonly("phase_class", &RightLimit::phase_class);
  m.def("right_limits", &right_limits, py::arg("desc"));

  py::class_<SparseCheckReport>(m, "SparseCheckReport")
      .def_readonly("pair_decay", &SparseCheckReport::pair_decay)
      .def_readonly("limsup_estimate", &SparseCheckReport::limsup_estimate)
      .def_readonly("tol", &SparseCheckReport::tol)
      .def_readonly("singular_indicated",
                    &SparseCheckReport::singular_indicated);
  m.def("sparse_condition_check", &sparse_condition_check, py::arg("desc"),
        py::arg("kmax"), py::arg("N"), py::arg("tol") = 1e-3);

  py::class_<ArcSet>(m, "ArcSet")
      .def(py::init<>())
      .def(py::init<const std::vector<std::pair<double, double>>&>(),
           py::arg("arcs"))
      .def_static("full_circle", &ArcSet::full_circle)
      .def("arcs", &ArcSet::arcs)
      .def("empty", &ArcSet::empty)
      .def("measure", &ArcSet::measure)
      .def("contains", &ArcSet::contains, py::arg("theta"))
      .def("complement", &ArcSet::complement)
      .def("star", &ArcSet::star)
      .def("intersect", &ArcSet::intersect, py::arg("other"))
      .def("__repr__", [](const ArcSet& s) {
        return "ArcSet(" + arcs_to_json(s).dump() + ")";
      });
  m.def("harmonic_measure", &harmonic_measure, py::arg("z"), py::arg("arcs"));

  py::class_<DepthPolicy>(m, "DepthPolicy")
      .def(py::init([](std::int64_t fixed, double tol, std::int64_t max_depth) {
             DepthPolicy p;
             p.fixed = fixed;
             p.tol = tol;
             p.max_depth = max_depth;
             return p;
           }),
           py::arg("fixed") = -1, py::arg("tol") = 1e-12,
           py::arg("max_depth") = 100000)
      .def_readwrite("fixed", &DepthPolicy::fixed)
      .def_readwrite("tol", &DepthPolicy::tol)
      .def_readwrite("max_depth", &DepthPolicy::max_depth);

  py::class_<SchurValue>(m, "SchurValue")
      .def_readonly("value", &SchurValue::value)
      .def_readonly("exact", &SchurValue::exact)
      .def_readonly("depth", &SchurValue::depth);

  m.def("f_plus", &f_plus, py::arg("desc"), py::arg("n"), py::arg("z"),
        py::arg("policy") = DepthPolicy{});
  m.def("f_minus", &f_minus, py::arg("desc"), py::arg("n"), py::arg("z"),
        py::arg("policy") = DepthPolicy{});
  m.def("diag_schur", &diag_schur, py::arg("desc"), py::arg("n"), py::arg("z"),
        py::arg("policy") = DepthPolicy{});
  m.def("caratheodory", &caratheodory, py::arg("z"), py::arg("f"));
  m.def("constant_alpha_closed_form", &constant_alpha_closed_form,
        py::arg("a"), py::arg("z"));
  m.def("constant_alpha_band", &constant_alpha_band, py::arg("a"));
  m.def("schur_params_from_taylor", &schur_params_from_taylor, py::arg("c"));

  py::class_<SzegoPair>(m, "SzegoPair")
      .def_readonly("phi", &SzegoPair::phi)
      .def_readonly("phi_star", &SzegoPair::phi_star)
      .def_readonly("n", &SzegoPair::n)
      .def_readonly("rho_product", &SzegoPair::rho_product);
  m.def("szego_eval", &szego_eval, py::arg("desc"), py::arg("n"), py::arg("z"));

  py::class_<RatioTrace>(m, "RatioTrace")
      .def_readonly("ratios", &RatioTrace::ratios)
      .def_readonly("limit", &RatioTrace::limit)
      .def_readonly("deviation", &RatioTrace::deviation)
      .def_readonly("converged", &RatioTrace::converged);
  m.def("ratio_trace", &ratio_trace, py::arg("desc"), py::arg("z"),
        py::arg("N"), py::arg("tol") = 1e-6);
  m.def("ktilde_descriptor", &ktilde_descriptor, py::arg("c"),
        py::arg("orientation"));

  py::class_<TwoPointRecovery>(m, "TwoPointRecovery")
      .def_readonly("consecutive_product", &TwoPointRecovery::consecutive_product)
      .def_readonly("modulus", &TwoPointRecovery::modulus)
      .def_readonly("moment", &TwoPointRecovery::moment);
  m.def("ratio_two_point", &ratio_two_point, py::arg("z1"), py::arg("g1"),
        py::arg("z2"), py::arg("g2"));

  m.def("power_diagonal", &power_diagonal, py::arg("desc"), py::arg("n"),
        py::arg("l"));
  m.def(
      "cmv_dense",
      [](const VerblunskyDescriptor& desc, std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw std::invalid_argument("cmv_dense: empty row range");
        std::int64_t center = (lo + hi) / 2;
        std::int64_t halfwidth = std::max(center - lo, hi - center) + 2;
        return dense_block(build_whole_cmv(desc, center, halfwidth), lo, hi);
      },
      py::arg("desc"), py::arg("lo"), py::arg("hi"),
      "Dense rows [lo, hi] of the five-diagonal unitary");
  m.def(
      "cmv_half_dense",
      [](const VerblunskyDescriptor& desc, std::int64_t N,
         std::optional<cdouble> terminator) {
        return dense_block(build_half_cmv(desc, N, terminator), 0, N - 1);
      },
      py::arg("desc"), py::arg("N"), py::arg("terminator") = std::nullopt,
      "Dense top-left N x N corner of the half-line matrix");

  py::class_<JacobiPair>(m, "JacobiPair")
      .def(py::init([](double a, double b) {
             return JacobiPair{a, b};
           }),
           py::arg("a") = 1.0, py::arg("b") = 0.0)
      .def_readwrite("a", &JacobiPair::a)
      .def_readwrite("b", &JacobiPair::b);

  py::class_<JacobiDescriptor>(m, "JacobiDescriptor")
      .def_static("constant", &JacobiDescriptor::constant, py::arg("value"),
                  py::arg("orientation") = Orientation::whole_line)
      .def_static("periodic", &JacobiDescriptor::periodic, py::arg("values"),
                  py::arg("orientation") = Orientation::whole_line)
      .def_static("explicit_list", &JacobiDescriptor::explicit_list,
                  py::arg("values"), py::arg("tail") = JacobiPair{})
      .def_static("deviation", &JacobiDescriptor::deviation,
                  py::arg("background"), py::arg("deviations"))
      .def_static("from_json",
                  [](const std::string& s) {
                    return jacobi_from_json(json::parse(s));
                  })
      .def_readonly("orientation", &JacobiDescriptor::orientation)
      .def("to_json",
           [](const JacobiDescriptor& d) { return jacobi_to_json(d).dump(); })
      .def("__repr__", [](const JacobiDescriptor& d) {
        return "JacobiDescriptor(" + jacobi_to_json(d).dump() + ")";
      });

  m.def("jacobi_at", &jacobi_at, py::arg("desc"), py::arg("n"));
  m.def("jacobi_moment", &jacobi_moment, py::arg("desc"), py::arg("n"),
        py::arg("l"));
  m.def("m_function", &m_function, py::arg("desc"), py::arg("n"),
        py::arg("side"), py::arg("z"), py::arg("depth") = 256);
  m.def("resolvent_diagonal", &resolvent_diagonal, py::arg("desc"),
        py::arg("n"), py::arg("z"), py::arg("depth") = 256);

  py::class_<SimonClassification>(m, "SimonClassification")
      .def_readonly("in_class", &SimonClassification::in_class)
      .def_readonly("a", &SimonClassification::a)
      .def_readonly("c", &SimonClassification::c)
      .def_readonly("b", &SimonClassification::b)
      .def_readonly("A", &SimonClassification::A)
      .def_readonly("B", &SimonClassification::B)
      .def_readonly("witness", &SimonClassification::witness)
      .def_readonly("witness_field", &SimonClassification::witness_field)
      .def_readonly("spectral_tag", &SimonClassification::spectral_tag)
      .def_readonly("max_moment_drift", &SimonClassification::max_moment_drift);
  m.def("simon_classify", &simon_classify, py::arg("desc"),
        py::arg("probe_lo"), py::arg("probe_hi"));

  py::class_<BoundaryGrid>(m, "BoundaryGrid")
      .def_static("standard", &BoundaryGrid::standard, py::arg("size") = 4096)
      .def_readwrite("size", &BoundaryGrid::size)
      .def_readwrite("radii", &BoundaryGrid::radii);

  py::class_<SigmaAcEstimate>(m, "SigmaAcEstimate")
      .def_readonly("arcs", &SigmaAcEstimate::arcs)
      .def_readonly("path", &SigmaAcEstimate::path)
      .def_readonly("approximate", &SigmaAcEstimate::approximate)
      .def_readonly("grid_size", &SigmaAcEstimate::grid_size)
      .def_readonly("threshold", &SigmaAcEstimate::threshold);
  m.def("sigma_ac_estimate", &sigma_ac_estimate, py::arg("desc"),
        py::arg("grid") = BoundaryGrid::standard());

  py::class_<DefectReport>(m, "DefectReport")
      .def_readonly("theta", &DefectReport::theta)
      .def_readonly("defect", &DefectReport::defect)
      .def_readonly("median", &DefectReport::median)
      .def_readonly("q90", &DefectReport::q90)
      .def_readonly("max_defect", &DefectReport::max_defect)
      .def_readonly("below_tol", &DefectReport::below_tol)
      .def_readonly("tol", &DefectReport::tol)
      .def_readonly("approximate", &DefectReport::approximate);
  m.def("reflectionless_defect_operator", &reflectionless_defect_operator,
        py::arg("desc"), py::arg("n"), py::arg("A"),
        py::arg("grid") = BoundaryGrid::standard());
  m.def("reflectionless_defect_measure", &reflectionless_defect_measure,
        py::arg("desc"), py::arg("n"), py::arg("A"),
        py::arg("grid") = BoundaryGrid::standard());

  auto label = py::class_<KhrushchevLabel>(m, "KhrushchevLabel");
  py::enum_<KhrushchevLabel::Kind>(label, "Kind")
      .value("finite_order", KhrushchevLabel::Kind::finite_order)
      .value("all_vanish", KhrushchevLabel::Kind::all_vanish)
      .value("rejected", KhrushchevLabel::Kind::rejected);
  label.def_readonly("kind", &KhrushchevLabel::kind)
      .def_readonly("c", &KhrushchevLabel::c)
      .def_readonly("k", &KhrushchevLabel::k)
      .def_readonly("spectral_tag", &KhrushchevLabel::spectral_tag)
      .def_readonly("witness", &KhrushchevLabel::witness)
      .def_readonly("note", &KhrushchevLabel::note)
      .def_readonly("moment_residual", &KhrushchevLabel::moment_residual);
  m.def("khrushchev_classify", &khrushchev_classify, py::arg("desc"),
        py::arg("probe_lo"), py::arg("probe_hi"), py::arg("lmax") = 6);

  m.def("pearson_defect", &pearson_defect, py::arg("desc"), py::arg("n"),
        py::arg("A"), py::arg("S"), py::arg("grid") = BoundaryGrid::standard());

  py::class_<DeterminacyReport>(m, "DeterminacyReport")
      .def_readonly("hypothesis_met", &DeterminacyReport::hypothesis_met)
      .def_readonly("note", &DeterminacyReport::note)
      .def_readonly("defect_a_q90", &DeterminacyReport::defect_a_q90)
      .def_readonly("defect_b_q90", &DeterminacyReport::defect_b_q90)
      .def_readonly("max_alpha_diff", &DeterminacyReport::max_alpha_diff)
      .def_readonly("probe", &DeterminacyReport::probe);
  m.def("two_sided_determinacy_check", &two_sided_determinacy_check,
        py::arg("desc_a"), py::arg("desc_b"), py::arg("A"),
        py::arg("grid") = BoundaryGrid::standard(), py::arg("probe") = 64);

  py::class_<SeedOutcome>(m, "SeedOutcome")
      .def_readonly("seed", &SeedOutcome::seed)
      .def_readonly("measures", &SeedOutcome::measures)
      .def_readonly("final_arcs", &SeedOutcome::final_arcs);

  py::class_<RandomExperimentReport>(m, "RandomExperimentReport")
      .def_readonly("hypothesis_met", &RandomExperimentReport::hypothesis_met)
      .def_readonly("note", &RandomExperimentReport::note)
      .def_readonly("radii", &RandomExperimentReport::radii)
      .def_readonly("eps", &RandomExperimentReport::eps)
      .def_readonly("outcomes", &RandomExperimentReport::outcomes)
      .def_readonly("ensemble_max", &RandomExperimentReport::ensemble_max)
      .def_readonly("trend_decreasing",
                    &RandomExperimentReport::trend_decreasing);
  m.def("random_experiment", &random_experiment, py::arg("base"),
        py::arg("scale"), py::arg("dist"), py::arg("seeds"), py::arg("grid"),
        py::arg("eps") = 0.1);

  py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);
}
