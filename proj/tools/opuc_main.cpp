#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "opuc/cmv.hpp"
#include "opuc/format.hpp"
#include "opuc/jacobi.hpp"
#include "opuc/json_io.hpp"
#include "opuc/polys.hpp"
#include "opuc/schur.hpp"
#include "opuc/spectral.hpp"

namespace fs = std::filesystem;
using opuc::cdouble;
using opuc::json;

namespace {

std::int64_t int_field(const json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw std::invalid_argument(what + ": expected an integer");
  return j.get<std::int64_t>();
}

double real_field(const json& j, const std::string& what) {
  if (!j.is_number())
    throw std::invalid_argument(what + ": expected a number");
  return j.get<double>();
}

std::vector<cdouble> point_list(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(what + ": expected a non-empty array");
  std::vector<cdouble> out;
  for (const auto& e : j) out.push_back(opuc::complex_from_json(e, what));
  return out;
}

opuc::BoundaryGrid grid_field(const json& cfg, json& rc, std::int64_t def_size,
                              std::vector<double> def_radii) {
  opuc::BoundaryGrid g;
  g.size = def_size;
  g.radii = std::move(def_radii);
  if (cfg.contains("grid")) {
    const json& gj = cfg.at("grid");
    opuc::check_fields(gj, "grid", {}, {"size", "radii"});
    if (gj.contains("size")) g.size = int_field(gj.at("size"), "grid size");
    if (gj.contains("radii")) {
      g.radii.clear();
      for (const auto& e : gj.at("radii"))
        g.radii.push_back(real_field(e, "grid radius"));
    }
  }
  g.validate();
  rc["grid"] = json{{"size", g.size}, {"radii", g.radii}};
  return g;
}

opuc::DepthPolicy depth_field(const json& cfg, json& rc) {
  opuc::DepthPolicy pol;
  if (cfg.contains("depth")) {
    const json& dj = cfg.at("depth");
    opuc::check_fields(dj, "depth policy", {}, {"fixed", "tol", "max_depth"});
    if (dj.contains("fixed"))
      pol.fixed = int_field(dj.at("fixed"), "depth fixed");
    if (dj.contains("tol")) pol.tol = real_field(dj.at("tol"), "depth tol");
    if (dj.contains("max_depth"))
      pol.max_depth = int_field(dj.at("max_depth"), "depth max_depth");
  }
  rc["depth"] = json{
      {"fixed", pol.fixed}, {"tol", pol.tol}, {"max_depth", pol.max_depth}};
  return pol;
}

// The evaluation kernels run sequentially; the cap is honored trivially.
int threads_cap() {
  const char* s = std::getenv("OPUC_THREADS");
  if (!s) return 1;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 1)
    throw std::invalid_argument("OPUC_THREADS must be a positive integer");
  return static_cast<int>(v);
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open for writing: " + p.string());
  f << content;
  if (!f) throw std::invalid_argument("write failed: " + p.string());
}

using Handler = std::function<json(const json&, const fs::path&)>;

json run_schur_eval(const json& cfg, const fs::path& out) {
  opuc::check_fields(cfg, "schur-eval config", {"descriptor", "points"},
                     {"command", "n", "which", "depth", "out"});
  json rc;
  rc["command"] = "schur-eval";
  auto desc = opuc::descriptor_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::descriptor_to_json(desc);
  std::int64_t n = cfg.contains("n") ? int_field(cfg.at("n"), "n") : 0;
  rc["n"] = n;
  std::string which =
      cfg.contains("which") ? cfg.at("which").get<std::string>() : "plus";
  if (which != "plus" && which != "minus" && which != "diagonal")
    throw std::invalid_argument("which must be plus, minus, or diagonal");
  rc["which"] = which;
  auto points = point_list(cfg.at("points"), "points");
  json pts = json::array();
  for (cdouble z : points) pts.push_back(opuc::complex_to_json(z));
  rc["points"] = pts;
  auto pol = depth_field(cfg, rc);

  json values = json::array();
  std::string csv = "re_z,im_z,re_f,im_f,exact,depth\n";
  for (cdouble z : points) {
    opuc::SchurValue v = which == "plus"    ? opuc::f_plus(desc, n, z, pol)
                         : which == "minus" ? opuc::f_minus(desc, n, z, pol)
                                            : opuc::diag_schur(desc, n, z, pol);
    values.push_back(json{{"z", opuc::complex_to_json(z)},
                          {"value", opuc::complex_to_json(v.value)},
                          {"exact", v.exact},
                          {"depth", v.depth}});
    csv += opuc::format_double(z.real()) + ',' + opuc::format_double(z.imag()) +
           ',' + opuc::format_double(v.value.real()) + ',' +
           opuc::format_double(v.value.imag()) + ',' +
           (v.exact ? "1" : "0") + ',' + std::to_string(v.depth) + '\n';
  }
  write_file(out / "schur-eval.csv", csv);
  json summary;
  summary["config"] = rc;
  summary["values"] = values;
  return summary;
}

json run_sigma_ac(const json& cfg, const fs::path&) {
  opuc::check_fields(cfg, "sigma-ac config", {"descriptor"},
                     {"command", "grid", "out"});
  json rc;
  rc["command"] = "sigma-ac";
  auto desc = opuc::descriptor_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::descriptor_to_json(desc);
  auto grid = grid_field(cfg, rc, 4096, opuc::BoundaryGrid::standard().radii);
  auto est = opuc::sigma_ac_estimate(desc, grid);
  json summary;
  summary["config"] = rc;
  summary["sigma_ac"] = opuc::report_to_json(est);
  return summary;
}

json run_reflectionless(const json& cfg, const fs::path& out) {
  opuc::check_fields(cfg, "reflectionless config", {"descriptor", "arcs"},
                     {"command", "n", "grid", "out"});
  json rc;
  rc["command"] = "reflectionless";
  auto desc = opuc::descriptor_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::descriptor_to_json(desc);
  std::int64_t n = cfg.contains("n") ? int_field(cfg.at("n"), "n") : 0;
  rc["n"] = n;
  auto A = opuc::arcs_from_json(cfg.at("arcs"), "arcs");
  rc["arcs"] = opuc::arcs_to_json(A);
  auto grid = grid_field(cfg, rc, 4096, opuc::BoundaryGrid::standard().radii);

  auto op = opuc::reflectionless_defect_operator(desc, n, A, grid);
  auto me = opuc::reflectionless_defect_measure(desc, n, A, grid);
  for (auto [rep, name] : {std::pair{&op, "reflectionless-operator.csv"},
                           std::pair{&me, "reflectionless-measure.csv"}}) {
    std::string csv = "theta,defect\n";
    for (std::size_t i = 0; i < rep->theta.size(); ++i)
      csv += opuc::format_double(rep->theta[i]) + ',' +
             opuc::format_double(rep->defect[i]) + '\n';
    write_file(out / name, csv);
  }
  json summary;
  summary["config"] = rc;
  summary["operator"] = opuc::report_to_json(op);
  summary["measure"] = opuc::report_to_json(me);
  return summary;
}

json run_classify_khrushchev(const json& cfg, const fs::path&) {
  opuc::check_fields(cfg, "classify-khrushchev config", {"descriptor"},
                     {"command", "probe_lo", "probe_hi", "lmax", "out"});
  json rc;
  rc["command"] = "classify-khrushchev";
  auto desc = opuc::descriptor_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::descriptor_to_json(desc);
  std::int64_t lo =
      cfg.contains("probe_lo") ? int_field(cfg.at("probe_lo"), "probe_lo") : 0;
  std::int64_t hi =
      cfg.contains("probe_hi") ? int_field(cfg.at("probe_hi"), "probe_hi") : 32;
  std::int64_t lmax = cfg.contains("lmax") ? int_field(cfg.at("lmax"), "lmax") : 6;
  rc["probe_lo"] = lo;
  rc["probe_hi"] = hi;
  rc["lmax"] = lmax;
  auto label = opuc::khrushchev_classify(desc, lo, hi, lmax);
  json summary;
  summary["config"] = rc;
  summary["classification"] = opuc::report_to_json(label);
  return summary;
}

json run_classify_simon(const json& cfg, const fs::path&) {
  opuc::check_fields(cfg, "classify-simon config", {"descriptor"},
                     {"command", "probe_lo", "probe_hi", "out"});
  json rc;
  rc["command"] = "classify-simon";
  auto desc = opuc::jacobi_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::jacobi_to_json(desc);
  std::int64_t lo =
      cfg.contains("probe_lo") ? int_field(cfg.at("probe_lo"), "probe_lo") : -8;
  std::int64_t hi =
      cfg.contains("probe_hi") ? int_field(cfg.at("probe_hi"), "probe_hi") : 8;
  rc["probe_lo"] = lo;
  rc["probe_hi"] = hi;
  auto cls = opuc::simon_classify(desc, lo, hi);
  json summary;
  summary["config"] = rc;
  summary["classification"] = opuc::report_to_json(cls);
  return summary;
}

json run_moments(const json& cfg, const fs::path& out) {
  opuc::check_fields(cfg, "moments config", {"descriptor", "lmax"},
                     {"command", "sites", "out"});
  json rc;
  rc["command"] = "moments";
  auto desc = opuc::descriptor_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::descriptor_to_json(desc);
  std::int64_t lmax = int_field(cfg.at("lmax"), "lmax");
  rc["lmax"] = lmax;
  std::vector<std::int64_t> sites{0};
  if (cfg.contains("sites")) {
    sites.clear();
    for (const auto& e : cfg.at("sites"))
      sites.push_back(int_field(e, "sites"));
  }
  rc["sites"] = sites;

  json table = json::array();
  std::string csv = "n,l,re,im\n";
  for (std::int64_t n : sites) {
    json moments = json::array();
    for (std::int64_t l = 1; l <= lmax; ++l) {
      cdouble m = opuc::power_diagonal(desc, n, l);
      moments.push_back(opuc::complex_to_json(m));
      csv += std::to_string(n) + ',' + std::to_string(l) + ',' +
             opuc::format_double(m.real()) + ',' +
             opuc::format_double(m.imag()) + '\n';
    }
    table.push_back(json{{"n", n}, {"moments", moments}});
  }
  write_file(out / "moments.csv", csv);
  json summary;
  summary["config"] = rc;
  summary["table"] = table;
  return summary;
}

json run_ratio(const json& cfg, const fs::path& out) {
  opuc::check_fields(cfg, "ratio config", {"descriptor", "points"},
                     {"command", "depth", "tol", "out"});
  json rc;
  rc["command"] = "ratio";
  auto desc = opuc::descriptor_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::descriptor_to_json(desc);
  auto points = point_list(cfg.at("points"), "points");
  json pts = json::array();
  for (cdouble z : points) pts.push_back(opuc::complex_to_json(z));
  rc["points"] = pts;
  std::int64_t depth =
      cfg.contains("depth") ? int_field(cfg.at("depth"), "depth") : 256;
  double tol = cfg.contains("tol") ? real_field(cfg.at("tol"), "tol") : 1e-6;
  rc["depth"] = depth;
  rc["tol"] = tol;

  json values = json::array();
  std::string csv = "re_z,im_z,re_limit,im_limit,deviation,converged\n";
  std::vector<cdouble> limits;
  for (cdouble z : points) {
    auto tr = opuc::ratio_trace(desc, z, depth, tol);
    limits.push_back(tr.limit);
    values.push_back(json{{"z", opuc::complex_to_json(z)},
                          {"limit", opuc::complex_to_json(tr.limit)},
                          {"deviation", tr.deviation},
                          {"converged", tr.converged}});
    csv += opuc::format_double(z.real()) + ',' + opuc::format_double(z.imag()) +
           ',' + opuc::format_double(tr.limit.real()) + ',' +
           opuc::format_double(tr.limit.imag()) + ',' +
           opuc::format_double(tr.deviation) + ',' +
           (tr.converged ? "1" : "0") + '\n';
  }
  write_file(out / "ratio.csv", csv);
  json summary;
  summary["config"] = rc;
  summary["values"] = values;
  if (points.size() == 2) {
    // Two sample points determine the coefficient modulus and the consecutive
    // product; the limit L = 1 - z g gives back the two-point data g.
    cdouble g1 = (1.0 - limits[0]) / points[0];
    cdouble g2 = (1.0 - limits[1]) / points[1];
    auto rec = opuc::ratio_two_point(points[0], g1, points[1], g2);
    summary["two_point"] = json{
        {"consecutive_product", opuc::complex_to_json(rec.consecutive_product)},
        {"modulus", rec.modulus},
        {"moment", opuc::complex_to_json(rec.moment)}};
  }
  return summary;
}

json run_pearson_defect(const json& cfg, const fs::path&) {
  opuc::check_fields(cfg, "pearson-defect config", {"descriptor", "A", "S"},
                     {"command", "sites", "grid", "out"});
  json rc;
  rc["command"] = "pearson-defect";
  auto desc = opuc::descriptor_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::descriptor_to_json(desc);
  auto A = opuc::arcs_from_json(cfg.at("A"), "A");
  auto S = opuc::arcs_from_json(cfg.at("S"), "S");
  rc["A"] = opuc::arcs_to_json(A);
  rc["S"] = opuc::arcs_to_json(S);
  std::vector<std::int64_t> sites{0};
  if (cfg.contains("sites")) {
    sites.clear();
    for (const auto& e : cfg.at("sites"))
      sites.push_back(int_field(e, "sites"));
  }
  rc["sites"] = sites;
  auto grid = grid_field(cfg, rc, 16384, opuc::BoundaryGrid::standard().radii);

  json values = json::array();
  for (std::int64_t n : sites)
    values.push_back(
        json{{"n", n}, {"defect", opuc::pearson_defect(desc, n, A, S, grid)}});
  json summary;
  summary["config"] = rc;
  summary["values"] = values;
  return summary;
}

json run_right_limits(const json& cfg, const fs::path&) {
  opuc::check_fields(cfg, "right-limits config", {"descriptor"},
                     {"command", "out"});
  json rc;
  rc["command"] = "right-limits";
  auto desc = opuc::descriptor_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::descriptor_to_json(desc);
  auto limits = opuc::right_limits(desc);
  json ls = json::array();
  for (const auto& l : limits) ls.push_back(opuc::report_to_json(l));
  json summary;
  summary["config"] = rc;
  summary["limits"] = ls;
  return summary;
}

json run_sparse_check(const json& cfg, const fs::path&) {
  opuc::check_fields(cfg, "sparse-check config", {"descriptor"},
                     {"command", "kmax", "N", "tol", "out"});
  json rc;
  rc["command"] = "sparse-check";
  auto desc = opuc::descriptor_from_json(cfg.at("descriptor"));
  rc["descriptor"] = opuc::descriptor_to_json(desc);
  int kmax = cfg.contains("kmax")
                 ? static_cast<int>(int_field(cfg.at("kmax"), "kmax"))
                 : 4;
  std::int64_t N = cfg.contains("N") ? int_field(cfg.at("N"), "N") : 4096;
  double tol = cfg.contains("tol") ? real_field(cfg.at("tol"), "tol") : 1e-3;
  rc["kmax"] = kmax;
  rc["N"] = N;
  rc["tol"] = tol;
  auto report = opuc::sparse_condition_check(desc, kmax, N, tol);
  json summary;
  summary["config"] = rc;
  summary["report"] = opuc::report_to_json(report);
  return summary;
}

json run_random_experiment(const json& cfg, const fs::path& out) {
  opuc::check_fields(cfg, "random-experiment config",
                     {"base", "scale", "dist", "seeds"},
                     {"command", "grid", "eps", "out"});
  json rc;
  rc["command"] = "random-experiment";
  auto base = opuc::descriptor_from_json(cfg.at("base"));
  rc["base"] = opuc::descriptor_to_json(base);
  const json& sc = cfg.at("scale");
  opuc::check_fields(sc, "scale sequence", {"value"}, {"power"});
  opuc::ScaleSequence scale;
  scale.value = real_field(sc.at("value"), "scale value");
  scale.power =
      sc.contains("power") ? real_field(sc.at("power"), "scale power") : 0.0;
  rc["scale"] = json{{"value", scale.value}, {"power", scale.power}};
  std::string dist_name = cfg.at("dist").get<std::string>();
  opuc::Distribution dist;
  if (dist_name == "rademacher") {
    dist = opuc::Distribution::rademacher;
  } else if (dist_name == "uniform") {
    dist = opuc::Distribution::uniform;
  } else {
    throw std::invalid_argument("unknown distribution \"" + dist_name + "\"");
  }
  rc["dist"] = dist_name;
  std::vector<std::uint64_t> seeds;
  for (const auto& e : cfg.at("seeds")) {
    if (!e.is_number_unsigned() && !e.is_number_integer())
      throw std::invalid_argument("seeds must be integers");
    seeds.push_back(e.get<std::uint64_t>());
  }
  rc["seeds"] = seeds;
  double eps = cfg.contains("eps") ? real_field(cfg.at("eps"), "eps") : 0.1;
  rc["eps"] = eps;
  auto grid = grid_field(cfg, rc, 256, {0.99, 0.999, 0.9999});

  auto report = opuc::random_experiment(base, scale, dist, seeds, grid, eps);
  std::string csv = "seed,radius,measure\n";
  for (const auto& oc : report.outcomes)
    for (std::size_t j = 0; j < report.radii.size(); ++j)
      csv += std::to_string(oc.seed) + ',' +
             opuc::format_double(report.radii[j]) + ',' +
             opuc::format_double(oc.measures[j]) + '\n';
  write_file(out / "random-experiment.csv", csv);
  json summary;
  summary["config"] = rc;
  summary["report"] = opuc::report_to_json(report);
  return summary;
}

const char* describe(const std::string& name) {
  static const std::map<std::string, const char*> d = {
      {"schur-eval", "evaluate Schur functions on a point list"},
      {"sigma-ac", "estimate the essential support of the a.c. part"},
      {"reflectionless", "defect statistics over a boundary arc set"},
      {"classify-khrushchev", "match Khrushchev-class coefficient structure"},
      {"classify-simon", "match Simon-class Jacobi structure"},
      {"moments", "diagonal moments of operator powers"},
      {"ratio", "ratio-asymptotics traces, optional two-point recovery"},
      {"pearson-defect", "smoothed equidistribution defect across orders"},
      {"right-limits", "enumerate right limits of a structured descriptor"},
      {"sparse-check", "sparse-support singularity indicator"},
      {"random-experiment", "seeded random-coefficient ensemble summary"},
  };
  return d.at(name);
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"schur-eval", run_schur_eval},
      {"sigma-ac", run_sigma_ac},
      {"reflectionless", run_reflectionless},
      {"classify-khrushchev", run_classify_khrushchev},
      {"classify-simon", run_classify_simon},
      {"moments", run_moments},
      {"ratio", run_ratio},
      {"pearson-defect", run_pearson_defect},
      {"right-limits", run_right_limits},
      {"sparse-check", run_sparse_check},
      {"random-experiment", run_random_experiment},
  };
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CMV / Schur-function analysis toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  for (const auto& [name, handler] : handlers()) {
    auto* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config: " << config_path << "\n";
      return 2;
    }
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return 2;
    }
    if (!cfg.is_object()) {
      std::cerr << "config must be a JSON object\n";
      return 2;
    }
    if (cfg.contains("command") &&
        cfg.at("command").get<std::string>() != command) {
      std::cerr << "config command field disagrees with the subcommand\n";
      return 2;
    }
    if (cfg.contains("out") && out_dir == ".")
      out_dir = cfg.at("out").get<std::string>();
    fs::path out(out_dir);
    fs::create_directories(out);

    int cap = threads_cap();
    json summary;
    try {
      summary = handlers().at(command)(cfg, out);
      summary["threads_used"] = std::min(cap, 1);
    } catch (const opuc::numeric_error& e) {
      json diag;
      diag["error"] = "numeric";
      diag["what"] = e.what();
      diag["config"] = cfg;
      write_file(out / (command + ".json"), diag.dump(2) + "\n");
      std::cerr << "numeric error: " << e.what() << "\n";
      return 3;
    }
    write_file(out / (command + ".json"), summary.dump(2) + "\n");
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
