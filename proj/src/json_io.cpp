#include "opuc/json_io.hpp"

#include <algorithm>

namespace opuc {

namespace {

const char* orientation_name(Orientation o) {
  return o == Orientation::half_line ? "half-line" : "whole-line";
}

Orientation orientation_from(const json& j, const std::string& what) {
  std::string s = j.get<std::string>();
  if (s == "half-line") return Orientation::half_line;
  if (s == "whole-line") return Orientation::whole_line;
  throw std::invalid_argument(what + ": unknown orientation \"" + s + "\"");
}

std::int64_t int_from(const json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw std::invalid_argument(what + ": expected an integer");
  return j.get<std::int64_t>();
}

double real_from(const json& j, const std::string& what) {
  if (!j.is_number())
    throw std::invalid_argument(what + ": expected a number");
  return j.get<double>();
}

std::vector<cdouble> complex_list_from(const json& j, const std::string& what) {
  if (!j.is_array())
    throw std::invalid_argument(what + ": expected an array");
  std::vector<cdouble> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e, what));
  return out;
}

json tail_to_json(const TailRule& tail) {
  json j;
  if (std::holds_alternative<ZeroTail>(tail)) {
    j["kind"] = "zero";
  } else if (const auto* c = std::get_if<ConstantTail>(&tail)) {
    j["kind"] = "constant";
    j["value"] = complex_to_json(c->value);
  } else {
    j["kind"] = "periodic";
    json vs = json::array();
    for (cdouble v : std::get<PeriodicTail>(tail).values)
      vs.push_back(complex_to_json(v));
    j["values"] = vs;
  }
  return j;
}

TailRule tail_from_json(const json& j) {
  if (!j.is_object())
    throw std::invalid_argument("tail rule: expected an object");
  check_fields(j, "tail rule", {"kind"}, {"value", "values"});
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return ZeroTail{};
  if (kind == "constant") {
    check_fields(j, "constant tail", {"kind", "value"});
    return ConstantTail{complex_from_json(j.at("value"), "constant tail")};
  }
  if (kind == "periodic") {
    check_fields(j, "periodic tail", {"kind", "values"});
    return PeriodicTail{complex_list_from(j.at("values"), "periodic tail")};
  }
  throw std::invalid_argument("tail rule: unknown kind \"" + kind + "\"");
}

json pair_to_json(JacobiPair p) { return json::array({p.a, p.b}); }

JacobiPair pair_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument(what + ": expected an [a, b] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

const char* dist_name(Distribution d) {
  return d == Distribution::rademacher ? "rademacher" : "uniform";
}

Distribution dist_from(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "rademacher") return Distribution::rademacher;
  if (s == "uniform") return Distribution::uniform;
  throw std::invalid_argument("random descriptor: unknown distribution \"" + s +
                              "\"");
}

}  // namespace

void check_fields(const json& j, const std::string& what,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  if (!j.is_object())
    throw std::invalid_argument(what + ": expected an object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    auto match = [&key](const char* f) { return key == f; };
    if (!std::any_of(required.begin(), required.end(), match) &&
        !std::any_of(optional.begin(), optional.end(), match))
      throw std::invalid_argument(what + ": unknown field \"" + key + "\"");
  }
  for (const char* f : required)
    if (!j.contains(f))
      throw std::invalid_argument(what + ": missing field \"" + std::string(f) +
                                  "\"");
}

json complex_to_json(cdouble v) {
  return json::array({v.real(), v.imag()});
}

cdouble complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument(what + ": expected [re, im] or a real number");
}

json descriptor_to_json(const VerblunskyDescriptor& desc) {
  json j;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantCoeffs>) {
          j["kind"] = "constant";
          j["orientation"] = orientation_name(desc.orientation);
          j["value"] = complex_to_json(k.value);
        } else if constexpr (std::is_same_v<T, PeriodicCoeffs>) {
          j["kind"] = "periodic";
          j["orientation"] = orientation_name(desc.orientation);
          json vs = json::array();
          for (cdouble v : k.values) vs.push_back(complex_to_json(v));
          j["values"] = vs;
        } else if constexpr (std::is_same_v<T, ExplicitCoeffs>) {
          j["kind"] = "explicit";
          j["orientation"] = orientation_name(desc.orientation);
          json vs = json::array();
          for (cdouble v : k.values) vs.push_back(complex_to_json(v));
          j["values"] = vs;
          j["tail"] = tail_to_json(k.tail);
        } else if constexpr (std::is_same_v<T, FiniteSupportCoeffs>) {
          j["kind"] = "finite-support";
          j["orientation"] = orientation_name(desc.orientation);
          json su = json::array();
          for (const auto& [site, v] : k.support)
            su.push_back(json::array({site, complex_to_json(v)}));
          j["support"] = su;
        } else if constexpr (std::is_same_v<T, SparseCoeffs>) {
          j["kind"] = "sparse";
          j["orientation"] = orientation_name(desc.orientation);
          j["base"] = k.base;
          j["value"] = complex_to_json(k.value);
          j["offset"] = k.offset;
        } else if constexpr (std::is_same_v<T, LopezCoeffs>) {
          j["kind"] = "lopez";
          j["orientation"] = orientation_name(desc.orientation);
          j["n0"] = k.n0;
          j["k"] = k.k;
          j["a"] = k.a;
          j["b"] = k.b;
          j["t"] = k.t;
          j["t0"] = k.t0;
        } else {
          static_assert(std::is_same_v<T, RandomCoeffs>);
          j["kind"] = "random";
          j["base"] = descriptor_to_json(*k.base);
          j["scale"] = json{{"value", k.scale.value}, {"power", k.scale.power}};
          j["dist"] = dist_name(k.dist);
          j["seed"] = k.seed;
          if (k.index_offset != 0) j["index_offset"] = k.index_offset;
        }
      },
      desc.kind);
  return j;
}

VerblunskyDescriptor descriptor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("descriptor: expected an object with \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  auto orientation = [&](Orientation fallback) {
    return j.contains("orientation")
               ? orientation_from(j.at("orientation"), "descriptor")
               : fallback;
  };
  if (kind == "constant") {
    check_fields(j, "constant descriptor", {"kind", "value"}, {"orientation"});
    return VerblunskyDescriptor::constant(
        complex_from_json(j.at("value"), "constant descriptor"),
        orientation(Orientation::half_line));
  }
  if (kind == "periodic") {
    check_fields(j, "periodic descriptor", {"kind", "values"}, {"orientation"});
    return VerblunskyDescriptor::periodic(
        complex_list_from(j.at("values"), "periodic descriptor"),
        orientation(Orientation::half_line));
  }
  if (kind == "explicit") {
    check_fields(j, "explicit descriptor", {"kind", "values"},
                 {"orientation", "tail"});
    if (orientation(Orientation::half_line) != Orientation::half_line)
      throw std::invalid_argument("explicit descriptor: half-line only");
    TailRule tail = j.contains("tail") ? tail_from_json(j.at("tail"))
                                       : TailRule{ZeroTail{}};
    return VerblunskyDescriptor::explicit_list(
        complex_list_from(j.at("values"), "explicit descriptor"), tail);
  }
  if (kind == "finite-support") {
    check_fields(j, "finite-support descriptor", {"kind", "support"},
                 {"orientation"});
    std::map<std::int64_t, cdouble> support;
    const json& su = j.at("support");
    if (!su.is_array())
      throw std::invalid_argument("finite-support descriptor: support must be "
                                  "a list of [site, value] pairs");
    for (const auto& e : su) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("finite-support descriptor: support must "
                                    "be a list of [site, value] pairs");
      support[int_from(e[0], "finite-support site")] =
          complex_from_json(e[1], "finite-support value");
    }
    return VerblunskyDescriptor::finite_support(
        std::move(support), orientation(Orientation::whole_line));
  }
  if (kind == "sparse") {
    check_fields(j, "sparse descriptor", {"kind", "base", "value"},
                 {"orientation", "offset"});
    std::int64_t offset =
        j.contains("offset") ? int_from(j.at("offset"), "sparse offset") : 0;
    return VerblunskyDescriptor::sparse(
        int_from(j.at("base"), "sparse base"),
        complex_from_json(j.at("value"), "sparse descriptor"),
        orientation(Orientation::half_line), offset);
  }
  if (kind == "lopez") {
    check_fields(j, "lopez descriptor", {"kind", "k", "a", "b", "t"},
                 {"orientation", "n0", "t0"});
    std::int64_t n0 = j.contains("n0") ? int_from(j.at("n0"), "lopez n0") : 0;
    double t0 = j.contains("t0") ? real_from(j.at("t0"), "lopez t0") : 0.0;
    return VerblunskyDescriptor::lopez(
        n0, int_from(j.at("k"), "lopez k"), real_from(j.at("a"), "lopez a"),
        real_from(j.at("b"), "lopez b"), real_from(j.at("t"), "lopez t"), t0,
        orientation(Orientation::half_line));
  }
  if (kind == "random") {
    check_fields(j, "random descriptor", {"kind", "base", "scale", "dist", "seed"},
                 {"orientation", "index_offset"});
    VerblunskyDescriptor base = descriptor_from_json(j.at("base"));
    if (j.contains("orientation") &&
        orientation_from(j.at("orientation"), "descriptor") != base.orientation)
      throw std::invalid_argument(
          "random descriptor: orientation disagrees with its base");
    const json& sc = j.at("scale");
    check_fields(sc, "scale sequence", {"value"}, {"power"});
    ScaleSequence scale;
    scale.value = real_from(sc.at("value"), "scale value");
    scale.power =
        sc.contains("power") ? real_from(sc.at("power"), "scale power") : 0.0;
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw std::invalid_argument("random descriptor: seed must be an integer");
    auto out = VerblunskyDescriptor::random(std::move(base), scale,
                                            dist_from(j.at("dist")),
                                            j.at("seed").get<std::uint64_t>());
    if (j.contains("index_offset"))
      std::get<RandomCoeffs>(out.kind).index_offset =
          int_from(j.at("index_offset"), "random index_offset");
    return out;
  }
  throw std::invalid_argument("descriptor: unknown kind \"" + kind + "\"");
}

json jacobi_to_json(const JacobiDescriptor& desc) {
  json j;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantJacobi>) {
          j["kind"] = "constant";
          j["orientation"] = orientation_name(desc.orientation);
          j["value"] = pair_to_json(k.value);
        } else if constexpr (std::is_same_v<T, PeriodicJacobi>) {
          j["kind"] = "periodic";
          j["orientation"] = orientation_name(desc.orientation);
          json vs = json::array();
          for (JacobiPair p : k.values) vs.push_back(pair_to_json(p));
          j["values"] = vs;
        } else if constexpr (std::is_same_v<T, ExplicitJacobi>) {
          j["kind"] = "explicit";
          j["orientation"] = orientation_name(desc.orientation);
          json vs = json::array();
          for (JacobiPair p : k.values) vs.push_back(pair_to_json(p));
          j["values"] = vs;
          j["tail"] = pair_to_json(k.tail);
        } else {
          static_assert(std::is_same_v<T, DeviationJacobi>);
          j["kind"] = "deviation";
          j["orientation"] = orientation_name(desc.orientation);
          j["background"] = pair_to_json(k.background);
          json ds = json::array();
          for (const auto& [site, p] : k.deviations)
            ds.push_back(json::array({site, pair_to_json(p)}));
          j["deviations"] = ds;
        }
      },
      desc.kind);
  return j;
}

JacobiDescriptor jacobi_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument(
        "jacobi descriptor: expected an object with \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  auto orientation = [&](Orientation fallback) {
    return j.contains("orientation")
               ? orientation_from(j.at("orientation"), "jacobi descriptor")
               : fallback;
  };
  if (kind == "constant") {
    check_fields(j, "constant jacobi", {"kind", "value"}, {"orientation"});
    return JacobiDescriptor::constant(
        pair_from_json(j.at("value"), "constant jacobi"),
        orientation(Orientation::whole_line));
  }
  if (kind == "periodic") {
    check_fields(j, "periodic jacobi", {"kind", "values"}, {"orientation"});
    std::vector<JacobiPair> values;
    for (const auto& e : j.at("values"))
      values.push_back(pair_from_json(e, "periodic jacobi"));
    return JacobiDescriptor::periodic(std::move(values),
                                      orientation(Orientation::whole_line));
  }
  if (kind == "explicit") {
    check_fields(j, "explicit jacobi", {"kind", "values"},
                 {"orientation", "tail"});
    if (orientation(Orientation::half_line) != Orientation::half_line)
      throw std::invalid_argument("explicit jacobi: half-line only");
    std::vector<JacobiPair> values;
    for (const auto& e : j.at("values"))
      values.push_back(pair_from_json(e, "explicit jacobi"));
    JacobiPair tail = j.contains("tail")
                          ? pair_from_json(j.at("tail"), "explicit jacobi tail")
                          : JacobiPair{};
    return JacobiDescriptor::explicit_list(std::move(values), tail);
  }
  if (kind == "deviation") {
    check_fields(j, "deviation jacobi", {"kind", "background", "deviations"},
                 {"orientation"});
    if (orientation(Orientation::whole_line) != Orientation::whole_line)
      throw std::invalid_argument("deviation jacobi: whole-line only");
    std::map<std::int64_t, JacobiPair> devs;
    const json& ds = j.at("deviations");
    if (!ds.is_array())
      throw std::invalid_argument("deviation jacobi: deviations must be a "
                                  "list of [site, [a, b]] pairs");
    for (const auto& e : ds) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("deviation jacobi: deviations must be a "
                                    "list of [site, [a, b]] pairs");
      devs[int_from(e[0], "deviation site")] =
          pair_from_json(e[1], "deviation value");
    }
    return JacobiDescriptor::deviation(
        pair_from_json(j.at("background"), "deviation background"),
        std::move(devs));
  }
  throw std::invalid_argument("jacobi descriptor: unknown kind \"" + kind +
                              "\"");
}

json arcs_to_json(const ArcSet& s) {
  json j = json::array();
  for (const auto& [lo, hi] : s.arcs()) j.push_back(json::array({lo, hi}));
  return j;
}

ArcSet arcs_from_json(const json& j, const std::string& what) {
  if (!j.is_array())
    throw std::invalid_argument(what + ": expected a list of [lo, hi] pairs");
  std::vector<std::pair<double, double>> arcs;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number())
      throw std::invalid_argument(what + ": expected a list of [lo, hi] pairs");
    arcs.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return ArcSet(arcs);
}

const char* path_name(BoundaryPath p) {
  switch (p) {
    case BoundaryPath::closed_form:
      return "closed-form";
    case BoundaryPath::rational:
      return "rational";
    case BoundaryPath::periodic:
      return "periodic";
    case BoundaryPath::phase_twist:
      return "phase-twist";
    case BoundaryPath::extrapolated:
      return "extrapolated";
  }
  return "unknown";
}

json report_to_json(const SigmaAcEstimate& r) {
  json j;
  j["arcs"] = arcs_to_json(r.arcs);
  j["measure"] = r.arcs.measure();
  j["path"] = path_name(r.path);
  j["approximate"] = r.approximate;
  j["grid_size"] = r.grid_size;
  j["threshold"] = r.threshold;
  return j;
}

json report_to_json(const DefectReport& r) {
  json j;
  j["samples"] = r.theta.size();
  j["median"] = r.median;
  j["q90"] = r.q90;
  j["max_defect"] = r.max_defect;
  j["tol"] = r.tol;
  j["approximate"] = r.approximate;
  j["below_tol"] = arcs_to_json(r.below_tol);
  return j;
}

json report_to_json(const KhrushchevLabel& r) {
  json j;
  switch (r.kind) {
    case KhrushchevLabel::Kind::finite_order:
      j["class"] = "finite-order";
      j["k"] = r.k;
      j["c"] = complex_to_json(r.c);
      j["spectral_tag"] = r.spectral_tag;
      j["moment_residual"] = r.moment_residual;
      break;
    case KhrushchevLabel::Kind::all_vanish:
      j["class"] = "all-vanish";
      j["spectral_tag"] = r.spectral_tag;
      j["moment_residual"] = r.moment_residual;
      break;
    case KhrushchevLabel::Kind::rejected:
      j["class"] = "rejected";
      j["witness"] = r.witness;
      j["note"] = r.note;
      break;
  }
  return j;
}

json report_to_json(const SimonClassification& r) {
  json j;
  j["in_class"] = r.in_class;
  if (r.in_class) {
    j["a"] = r.a;
    j["c"] = r.c;
    j["b"] = r.b;
    j["A"] = r.A;
    j["B"] = r.B;
    j["spectral_tag"] = r.spectral_tag;
    j["max_moment_drift"] = r.max_moment_drift;
  } else {
    j["witness"] = r.witness;
    j["witness_field"] = r.witness_field;
  }
  return j;
}

json report_to_json(const RightLimit& r) {
  json j;
  j["descriptor"] = descriptor_to_json(r.descriptor);
  j["witness_shifts"] = r.witness_shifts;
  j["phase_class"] = r.phase_class;
  return j;
}

json report_to_json(const SparseCheckReport& r) {
  json j;
  j["pair_decay"] = r.pair_decay;
  j["limsup_estimate"] = r.limsup_estimate;
  j["tol"] = r.tol;
  j["singular_indicated"] = r.singular_indicated;
  return j;
}

json report_to_json(const DeterminacyReport& r) {
  json j;
  j["hypothesis_met"] = r.hypothesis_met;
  j["note"] = r.note;
  j["defect_a_q90"] = r.defect_a_q90;
  j["defect_b_q90"] = r.defect_b_q90;
  j["max_alpha_diff"] = r.max_alpha_diff;
  j["probe"] = r.probe;
  return j;
}

json report_to_json(const RandomExperimentReport& r) {
  json j;
  j["hypothesis_met"] = r.hypothesis_met;
  j["note"] = r.note;
  j["radii"] = r.radii;
  j["eps"] = r.eps;
  j["ensemble_max"] = r.ensemble_max;
  j["trend_decreasing"] = r.trend_decreasing;
  json outs = json::array();
  for (const auto& oc : r.outcomes) {
    json o;
    o["seed"] = oc.seed;
    o["measures"] = oc.measures;
    o["final_arcs"] = arcs_to_json(oc.final_arcs);
    outs.push_back(o);
  }
  j["outcomes"] = outs;
  return j;
}

}  // namespace opuc
