#include "opuc/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "opuc/cmv.hpp"

namespace opuc {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - b * floor_div(a, b);
}

bool unimodular(cdouble g) { return std::abs(g) >= 1.0 - 1e-12; }

MoebiusMap schur_step(cdouble z, cdouble g) {
  return {z, g, std::conj(g) * z, 1.0};
}

double wrap_angle(double t) {
  t = std::fmod(t, kTau);
  return t < 0.0 ? t + kTau : t;
}

// Harmonic measure seen from w, degenerating to the arc indicator when w
// sits on the boundary circle.
double harmonic_or_indicator(cdouble w, const ArcSet& s) {
  double r = std::abs(w);
  if (r >= 1.0 - 1e-9)
    return s.contains(wrap_angle(std::arg(w))) ? 1.0 : 0.0;
  return harmonic_measure(w, s);
}

struct Summary {
  double median = 0.0;
  double q90 = 0.0;
  double max = 0.0;
};

Summary summarize(std::vector<double> vals) {
  Summary s;
  if (vals.empty()) return s;
  std::sort(vals.begin(), vals.end());
  auto n = vals.size();
  s.median = (n % 2 == 1) ? vals[n / 2]
                          : 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
  s.q90 = vals[static_cast<std::size_t>(0.9 * static_cast<double>(n - 1))];
  s.max = vals.back();
  return s;
}

}  // namespace

BoundaryGrid BoundaryGrid::standard(std::int64_t size) {
  BoundaryGrid g;
  g.size = size;
  for (int j = 5; j >= 0; --j)
    g.radii.push_back(1.0 - 1e-6 * static_cast<double>(1 << j));
  return g;
}

double BoundaryGrid::step() const {
  return kTau / static_cast<double>(size);
}

double BoundaryGrid::theta(std::int64_t i) const {
  return step() * static_cast<double>(i);
}

void BoundaryGrid::validate() const {
  if (size < 64) throw std::invalid_argument("boundary grid: size < 64");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (radii[j] <= 0.0 || radii[j] > 1.0 - 1e-8)
      throw std::invalid_argument("boundary grid: radii must lie in (0, 1 - 1e-8]");
    if (j > 0 && radii[j] <= radii[j - 1])
      throw std::invalid_argument("boundary grid: radii must increase");
  }
}

BoundaryEvaluator::BoundaryEvaluator(const VerblunskyDescriptor& desc,
                                     std::int64_t n, Side side,
                                     BoundaryGrid grid)
    : desc_(desc), n_(n), side_(side), grid_(std::move(grid)) {
  grid_.validate();
  if (desc_.orientation == Orientation::half_line && side_ == Side::plus &&
      n_ < 0)
    throw std::invalid_argument("boundary evaluator: n < 0 on the half line");
  if (desc_.orientation == Orientation::half_line && side_ == Side::minus &&
      n_ < 0)
    throw std::invalid_argument("boundary evaluator: n < 0 on the half line");
  plan();
}

void BoundaryEvaluator::plan() {
  auto param = [this](std::int64_t j) {
    return side_ == Side::plus ? value_at(desc_, n_ + j)
                               : -std::conj(value_at(desc_, n_ - 1 - j));
  };
  // Half-line minus tails always end in the unimodular parameter 1 coming
  // from alpha_{-1} = -1: a finite parameter string, exact on the boundary.
  if (side_ == Side::minus &&
      desc_.orientation == Orientation::half_line) {
    std::vector<cdouble> pre;
    pre.reserve(static_cast<std::size_t>(n_));
    for (std::int64_t j = 0; j < n_; ++j) {
      cdouble g = param(j);
      if (unimodular(g)) {
        tail_ = Tail::blaschke;
        tail_param_ = g;
        prefix_ = std::move(pre);
        path_ = BoundaryPath::rational;
        return;
      }
      pre.push_back(g);
    }
    tail_ = Tail::blaschke;
    tail_param_ = 1.0;
    prefix_ = std::move(pre);
    path_ = BoundaryPath::rational;
    return;
  }

  if (const auto* c = std::get_if<ConstantCoeffs>(&desc_.kind)) {
    cdouble g = side_ == Side::plus ? c->value : -std::conj(c->value);
    if (std::abs(g) == 0.0) {
      tail_ = Tail::zero;
      path_ = BoundaryPath::rational;
    } else if (unimodular(g)) {
      tail_ = Tail::blaschke;
      tail_param_ = g;
      path_ = BoundaryPath::rational;
    } else {
      tail_ = Tail::constant;
      tail_param_ = g;
      path_ = BoundaryPath::closed_form;
    }
    return;
  }

  if (const auto* p = std::get_if<PeriodicCoeffs>(&desc_.kind)) {
    auto len = static_cast<std::int64_t>(p->values.size());
    std::vector<cdouble> per;
    per.reserve(static_cast<std::size_t>(len));
    bool all_zero = true;
    for (std::int64_t j = 0; j < len; ++j) {
      cdouble g = param(j);
      if (unimodular(g)) {
        // The algorithm terminates inside the first period.
        prefix_.assign(per.begin(), per.end());
        tail_ = Tail::blaschke;
        tail_param_ = g;
        path_ = BoundaryPath::rational;
        return;
      }
      all_zero = all_zero && std::abs(g) == 0.0;
      per.push_back(g);
    }
    if (all_zero) {
      tail_ = Tail::zero;
      path_ = BoundaryPath::rational;
    } else {
      period_ = std::move(per);
      tail_ = Tail::periodic;
      path_ = BoundaryPath::periodic;
    }
    return;
  }

  if (const auto* e = std::get_if<ExplicitCoeffs>(&desc_.kind)) {
    // Half line, plus side (the minus side returned above).
    auto len = static_cast<std::int64_t>(e->values.size());
    std::vector<cdouble> pre;
    for (std::int64_t j = 0; n_ + j < len; ++j) {
      cdouble g = param(j);
      if (unimodular(g)) {
        prefix_ = std::move(pre);
        tail_ = Tail::blaschke;
        tail_param_ = g;
        path_ = BoundaryPath::rational;
        return;
      }
      pre.push_back(g);
    }
    auto tail_start = std::max<std::int64_t>(0, len - n_);
    if (std::holds_alternative<ZeroTail>(e->tail)) {
      prefix_ = std::move(pre);
      tail_ = Tail::zero;
      path_ = BoundaryPath::rational;
    } else if (const auto* ct = std::get_if<ConstantTail>(&e->tail)) {
      prefix_ = std::move(pre);
      if (std::abs(ct->value) == 0.0) {
        tail_ = Tail::zero;
        path_ = BoundaryPath::rational;
      } else if (unimodular(ct->value)) {
        tail_ = Tail::blaschke;
        tail_param_ = ct->value;
        path_ = BoundaryPath::rational;
      } else {
        tail_ = Tail::constant;
        tail_param_ = ct->value;
        path_ = BoundaryPath::closed_form;
      }
    } else {
      const auto& pt = std::get<PeriodicTail>(e->tail);
      auto plen = static_cast<std::int64_t>(pt.values.size());
      std::vector<cdouble> per;
      bool all_zero = true;
      for (std::int64_t j = 0; j < plen; ++j) {
        cdouble g = param(tail_start + j);
        if (unimodular(g)) {
          for (std::int64_t i = 0; i < j; ++i) pre.push_back(param(tail_start + i));
          prefix_ = std::move(pre);
          tail_ = Tail::blaschke;
          tail_param_ = g;
          path_ = BoundaryPath::rational;
          return;
        }
        all_zero = all_zero && std::abs(g) == 0.0;
        per.push_back(g);
      }
      prefix_ = std::move(pre);
      if (all_zero) {
        tail_ = Tail::zero;
        path_ = BoundaryPath::rational;
      } else {
        period_ = std::move(per);
        tail_ = Tail::periodic;
        path_ = BoundaryPath::periodic;
      }
    }
    return;
  }

  if (const auto* f = std::get_if<FiniteSupportCoeffs>(&desc_.kind)) {
    std::int64_t last = 0;
    bool any = false;
    for (const auto& [site, v] : f->support) {
      if (std::abs(v) == 0.0) continue;
      std::int64_t j = side_ == Side::plus ? site - n_ : n_ - 1 - site;
      if (j >= 0) {
        last = any ? std::max(last, j) : j;
        any = true;
      }
    }
    std::vector<cdouble> pre;
    if (any) {
      for (std::int64_t j = 0; j <= last; ++j) {
        cdouble g = param(j);
        if (unimodular(g)) {
          prefix_ = std::move(pre);
          tail_ = Tail::blaschke;
          tail_param_ = g;
          path_ = BoundaryPath::rational;
          return;
        }
        pre.push_back(g);
      }
    }
    prefix_ = std::move(pre);
    tail_ = Tail::zero;
    path_ = BoundaryPath::rational;
    return;
  }

  if (const auto* s = std::get_if<SparseCoeffs>(&desc_.kind)) {
    if (side_ == Side::minus) {
      // Whole line: nothing is supported below site 1 + offset.
      std::vector<cdouble> pre;
      for (std::int64_t j = 0; n_ - 1 - j >= 1 + s->offset; ++j) {
        cdouble g = param(j);
        if (unimodular(g)) {
          prefix_ = std::move(pre);
          tail_ = Tail::blaschke;
          tail_param_ = g;
          path_ = BoundaryPath::rational;
          return;
        }
        pre.push_back(g);
      }
      prefix_ = std::move(pre);
      tail_ = Tail::zero;
      path_ = BoundaryPath::rational;
      return;
    }
    tail_ = Tail::extrapolate;
    path_ = BoundaryPath::extrapolated;
    return;
  }

  if (const auto* l = std::get_if<LopezCoeffs>(&desc_.kind)) {
    // gamma_j = e^{i(s + j psi)} g_j with g_j >= 0 of period 2k, so the
    // value is e^{i s} h(e^{i psi} z) for the real periodic sequence h.
    double tk = l->t / static_cast<double>(l->k);
    if (side_ == Side::plus) {
      twist_phase_ =
          l->t0 - tk * static_cast<double>(n_ - l->n0);
      twist_rotation_ = -tk;
    } else {
      twist_phase_ =
          kTau / 2.0 - l->t0 + tk * static_cast<double>(n_ - 1 - l->n0);
      twist_rotation_ = -tk;
    }
    std::vector<cdouble> per;
    bool hit_unimodular = false;
    std::int64_t break_j = 0;
    for (std::int64_t j = 0; j < 2 * l->k; ++j) {
      std::int64_t site = side_ == Side::plus ? n_ + j : n_ - 1 - j;
      std::int64_t d = site - l->n0;
      double g = 0.0;
      if (floor_mod(d, l->k) == 0) {
        std::int64_t m = floor_div(d, l->k);
        g = floor_mod(m, 2) == 0 ? l->a : l->b;
      }
      if (g >= 1.0 - 1e-12 && !hit_unimodular) {
        hit_unimodular = true;
        break_j = j;
      }
      per.push_back(g);
    }
    if (hit_unimodular) {
      // Terminates at the first unimodular support value; the twist still
      // carries the phases, so keep it and cut the real sequence there.
      prefix_.assign(per.begin(), per.begin() + break_j);
      tail_ = Tail::blaschke;
      tail_param_ = per[static_cast<std::size_t>(break_j)];
      path_ = BoundaryPath::phase_twist;
      return;
    }
    period_ = std::move(per);
    tail_ = Tail::periodic;
    path_ = BoundaryPath::phase_twist;
    return;
  }

  // Random coefficients: no structure to resolve the tail.
  tail_ = Tail::extrapolate;
  path_ = BoundaryPath::extrapolated;
}

cdouble BoundaryEvaluator::eval_structured(double theta) const {
  cdouble z = std::polar(1.0, theta + twist_rotation_);
  cdouble w;
  switch (tail_) {
    case Tail::zero:
      w = 0.0;
      break;
    case Tail::blaschke:
      w = tail_param_;
      break;
    case Tail::constant:
      w = constant_alpha_closed_form(tail_param_, z);
      break;
    case Tail::periodic: {
      std::vector<MoebiusMap> steps;
      steps.reserve(period_.size());
      for (cdouble g : period_) steps.push_back(schur_step(z, g));
      w = attracting_fixed_point(product(steps));
      break;
    }
    case Tail::extrapolate:
      throw std::logic_error("structured evaluation on extrapolated plan");
  }
  for (std::size_t j = prefix_.size(); j-- > 0;) {
    cdouble g = prefix_[j];
    cdouble den = 1.0 + std::conj(g) * z * w;
    if (std::abs(den) < 1e-15)
      throw numeric_error("boundary evaluation: composition pole");
    w = (g + z * w) / den;
  }
  return std::polar(1.0, twist_phase_) * w;
}

cdouble BoundaryEvaluator::eval_extrapolated(double theta) const {
  if (grid_.radii.empty())
    throw std::invalid_argument(
        "boundary evaluator: descriptor needs a radius schedule");
  DepthPolicy policy;
  policy.tol = 1e-10;
  policy.max_depth = 30000;
  // Truncating at depth N leaves an error up to 2|z|^N, so radii beyond
  // r_max = 1 - ln(2e4)/max_depth cannot be resolved below 1e-4 within the
  // budget.  When the schedule reaches past r_max, re-anchor it: same
  // geometric halving of the boundary distance, ending at r_max instead.
  auto radii = grid_.radii;
  double r_max = 1.0 - std::log(2e4) / static_cast<double>(policy.max_depth);
  if (radii.back() > r_max) {
    auto m0 = std::min<std::size_t>(radii.size(), 8);
    radii.resize(m0);
    for (std::size_t j = 0; j < m0; ++j)
      radii[j] = 1.0 - (1.0 - r_max) * std::pow(2.0, double(m0 - 1 - j));
  }
  auto m = radii.size();
  std::vector<cdouble> v(m);
  std::vector<double> d(m);
  for (std::size_t j = 0; j < m; ++j) {
    cdouble z = std::polar(radii[j], theta);
    v[j] = (side_ == Side::plus ? f_plus(desc_, n_, z, policy)
                                : f_minus(desc_, n_, z, policy))
               .value;
    d[j] = 1.0 - radii[j];
  }
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t j = 0; j + k < m; ++j)
      v[j] = (d[j + k] * v[j] - d[j] * v[j + 1]) / (d[j + k] - d[j]);
  cdouble w = v[0];
  double r = std::abs(w);
  if (r > 1.0) w /= r;
  return w;
}

cdouble BoundaryEvaluator::operator()(double theta) const {
  return tail_ == Tail::extrapolate ? eval_extrapolated(theta)
                                    : eval_structured(theta);
}

SigmaAcEstimate sigma_ac_estimate(const VerblunskyDescriptor& desc,
                                  const BoundaryGrid& grid) {
  grid.validate();
  if (desc.orientation != Orientation::half_line)
    throw std::invalid_argument("sigma_ac_estimate: half-line descriptor required");
  BoundaryEvaluator f(desc, 0, Side::plus, grid);
  SigmaAcEstimate out;
  out.path = f.path();
  out.approximate = !f.exact();
  out.grid_size = grid.size;
  out.threshold = f.exact() ? 1e-6 : 1e-3;
  double h = grid.step();
  std::vector<std::pair<double, double>> cells;
  for (std::int64_t i = 0; i < grid.size; ++i) {
    double theta = h * static_cast<double>(i);
    if (std::abs(f(theta)) < 1.0 - out.threshold)
      cells.emplace_back(h * static_cast<double>(i),
                         h * static_cast<double>(i + 1));
  }
  out.arcs = ArcSet(cells);
  return out;
}

namespace {

template <class DefectFn>
DefectReport defect_report(const VerblunskyDescriptor& desc, std::int64_t n,
                           const ArcSet& A, const BoundaryGrid& grid,
                           const DefectFn& defect_at) {
  grid.validate();
  BoundaryEvaluator fp(desc, n, Side::plus, grid);
  BoundaryEvaluator fm(desc, n, Side::minus, grid);
  DefectReport rep;
  rep.approximate = !(fp.exact() && fm.exact());
  rep.tol = rep.approximate ? 1e-3 : 1e-6;
  double h = grid.step();
  std::vector<std::pair<double, double>> cells;
  for (std::int64_t i = 0; i < grid.size; ++i) {
    double theta = h * static_cast<double>(i);
    if (!A.contains(theta)) continue;
    double dv = defect_at(theta, fp(theta), fm(theta));
    rep.theta.push_back(theta);
    rep.defect.push_back(dv);
    if (dv < rep.tol)
      cells.emplace_back(h * static_cast<double>(i),
                         h * static_cast<double>(i + 1));
  }
  rep.below_tol = ArcSet(cells);
  Summary s = summarize(rep.defect);
  rep.median = s.median;
  rep.q90 = s.q90;
  rep.max_defect = s.max;
  return rep;
}

}  // namespace

DefectReport reflectionless_defect_operator(const VerblunskyDescriptor& desc,
                                            std::int64_t n, const ArcSet& A,
                                            const BoundaryGrid& grid) {
  if (desc.orientation != Orientation::whole_line)
    throw std::invalid_argument(
        "reflectionless_defect_operator: whole-line descriptor required");
  return defect_report(desc, n, A, grid,
                       [](double theta, cdouble wp, cdouble wm) {
                         cdouble z = std::polar(1.0, theta);
                         return std::abs(z * wp - std::conj(wm));
                       });
}

DefectReport reflectionless_defect_measure(const VerblunskyDescriptor& desc,
                                           std::int64_t n, const ArcSet& A,
                                           const BoundaryGrid& grid) {
  if (desc.orientation != Orientation::whole_line)
    throw std::invalid_argument(
        "reflectionless_defect_measure: whole-line descriptor required");
  return defect_report(desc, n, A, grid,
                       [](double theta, cdouble wp, cdouble wm) {
                         cdouble z = std::polar(1.0, theta);
                         return std::abs(std::imag(z * wp * wm));
                       });
}

KhrushchevLabel khrushchev_classify(const VerblunskyDescriptor& desc,
                                    std::int64_t probe_lo,
                                    std::int64_t probe_hi, std::int64_t lmax) {
  if (desc.orientation != Orientation::whole_line)
    throw std::invalid_argument(
        "khrushchev_classify: whole-line descriptor required");
  if (probe_hi < probe_lo)
    throw std::invalid_argument("khrushchev_classify: empty probe window");
  if (lmax < 1) throw std::invalid_argument("khrushchev_classify: lmax < 1");
  KhrushchevLabel out;

  if (const auto* c = std::get_if<ConstantCoeffs>(&desc.kind)) {
    double m = std::abs(c->value);
    if (m == 0.0) {
      out.kind = KhrushchevLabel::Kind::all_vanish;
      out.spectral_tag = "reflectionless";
    } else {
      out.kind = KhrushchevLabel::Kind::finite_order;
      out.k = 1;
      out.c = -m * m;
      out.spectral_tag = m < 1.0 - 1e-12 ? "reflectionless" : "pure-point";
    }
  } else if (const auto* f = std::get_if<FiniteSupportCoeffs>(&desc.kind)) {
    std::vector<std::int64_t> sites;
    for (const auto& [site, v] : f->support)
      if (std::abs(v) != 0.0) sites.push_back(site);
    if (sites.size() >= 2) {
      out.kind = KhrushchevLabel::Kind::rejected;
      out.witness = sites[1];
      out.note = "two supported coefficients force unequal diagonal measures";
      return out;
    }
    out.kind = KhrushchevLabel::Kind::all_vanish;
    out.spectral_tag = sites.empty() ? "reflectionless" : "example-class";
  } else if (const auto* l = std::get_if<LopezCoeffs>(&desc.kind)) {
    out.kind = KhrushchevLabel::Kind::finite_order;
    out.k = l->k;
    out.c = -l->a * l->b * std::polar(1.0, l->t);
    out.spectral_tag = (l->a < 1.0 - 1e-12 && l->b < 1.0 - 1e-12)
                           ? "reflectionless"
                           : "pure-point";
  } else {
    out.kind = KhrushchevLabel::Kind::rejected;
    out.note = "descriptor kind carries no matchable structure; "
               "numeric-only classification refused";
    return out;
  }

  bool finite = out.kind == KhrushchevLabel::Kind::finite_order;
  std::int64_t probes[3] = {probe_lo, probe_lo + (probe_hi - probe_lo) / 2,
                            probe_hi};
  std::int64_t top = finite ? std::min(lmax, 2 * out.k) : lmax;
  for (std::int64_t l = 1; l <= top; ++l) {
    cdouble first{};
    for (int i = 0; i < 3; ++i) {
      cdouble m = power_diagonal(desc, probes[i], l);
      if (i == 0)
        first = m;
      else
        out.moment_residual = std::max(out.moment_residual, std::abs(m - first));
      if (!finite || l < out.k)
        out.moment_residual = std::max(out.moment_residual, std::abs(m));
      else if (l == out.k)
        out.moment_residual = std::max(out.moment_residual, std::abs(m - out.c));
    }
  }
  return out;
}

double pearson_defect(const VerblunskyDescriptor& desc, std::int64_t n,
                      const ArcSet& A, const ArcSet& S,
                      const BoundaryGrid& grid) {
  grid.validate();
  if (desc.orientation != Orientation::half_line)
    throw std::invalid_argument("pearson_defect: half-line descriptor required");
  if (A.empty()) return 0.0;
  BoundaryEvaluator fp(desc, n, Side::plus, grid);
  BoundaryEvaluator fm(desc, n, Side::minus, grid);
  ArcSet s_star = S.star();
  double h = grid.step();
  double enter = 0.0;
  double exit = 0.0;
  for (std::int64_t i = 0; i < grid.size; ++i) {
    double theta = h * static_cast<double>(i);
    if (!A.contains(theta)) continue;
    enter += harmonic_or_indicator(fp(theta), S);
    cdouble z = std::polar(1.0, theta);
    exit += harmonic_or_indicator(z * fm(theta), s_star);
  }
  return std::abs(enter - exit) / static_cast<double>(grid.size);
}

DeterminacyReport two_sided_determinacy_check(
    const VerblunskyDescriptor& desc_a, const VerblunskyDescriptor& desc_b,
    const ArcSet& A, const BoundaryGrid& grid, std::int64_t probe) {
  if (desc_a.orientation != Orientation::whole_line ||
      desc_b.orientation != Orientation::whole_line)
    throw std::invalid_argument(
        "two_sided_determinacy_check: whole-line descriptors required");
  if (probe < 1)
    throw std::invalid_argument("two_sided_determinacy_check: probe < 1");
  DeterminacyReport rep;
  rep.probe = probe;
  DefectReport da = reflectionless_defect_operator(desc_a, 0, A, grid);
  DefectReport db = reflectionless_defect_operator(desc_b, 0, A, grid);
  rep.defect_a_q90 = da.q90;
  rep.defect_b_q90 = db.q90;
  if (da.q90 >= da.tol || db.q90 >= db.tol) {
    rep.note = "hypothesis not met: defect too large on A";
    return rep;
  }
  for (std::int64_t m = -probe; m < 0; ++m) {
    if (std::abs(value_at(desc_a, m) - value_at(desc_b, m)) > 1e-12) {
      rep.note = "hypothesis not met: negative tails differ";
      return rep;
    }
  }
  rep.hypothesis_met = true;
  for (std::int64_t m = 0; m <= probe; ++m)
    rep.max_alpha_diff =
        std::max(rep.max_alpha_diff,
                 std::abs(value_at(desc_a, m) - value_at(desc_b, m)));
  return rep;
}

RandomExperimentReport random_experiment(const VerblunskyDescriptor& base,
                                         const ScaleSequence& scale,
                                         Distribution dist,
                                         const std::vector<std::uint64_t>& seeds,
                                         const BoundaryGrid& grid, double eps) {
  grid.validate();
  if (grid.radii.empty())
    throw std::invalid_argument("random_experiment: radius schedule required");
  if (seeds.empty())
    throw std::invalid_argument("random_experiment: no seeds");
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("random_experiment: eps must lie in (0, 1)");
  RandomExperimentReport rep;
  rep.radii = grid.radii;
  rep.eps = eps;
  if (scale.power > 0.0) {
    rep.hypothesis_met = false;
    rep.note = "hypothesis not met: scale sequence decays to zero";
  } else if (scale.value == 0.0) {
    rep.hypothesis_met = false;
    rep.note = "degenerate: zero randomness, deterministic base reproduced";
  }
  DepthPolicy policy;
  policy.tol = 1e-10;
  policy.max_depth = 30000;
  double h = grid.step();
  rep.ensemble_max.assign(grid.radii.size(), 0.0);
  for (std::uint64_t seed : seeds) {
    auto d = VerblunskyDescriptor::random(base, scale, dist, seed);
    SeedOutcome oc;
    oc.seed = seed;
    std::vector<std::pair<double, double>> cells;
    for (std::size_t rj = 0; rj < grid.radii.size(); ++rj) {
      double r = grid.radii[rj];
      std::int64_t count = 0;
      for (std::int64_t i = 0; i < grid.size; ++i) {
        cdouble z = std::polar(r, h * static_cast<double>(i));
        bool below = std::abs(f_plus(d, 0, z, policy).value) < 1.0 - eps;
        count += below;
        if (below && rj + 1 == grid.radii.size())
          cells.emplace_back(h * static_cast<double>(i),
                             h * static_cast<double>(i + 1));
      }
      double measure =
          kTau * static_cast<double>(count) / static_cast<double>(grid.size);
      oc.measures.push_back(measure);
      rep.ensemble_max[rj] = std::max(rep.ensemble_max[rj], measure);
    }
    oc.final_arcs = ArcSet(cells);
    rep.outcomes.push_back(std::move(oc));
  }
  rep.trend_decreasing =
      rep.ensemble_max.back() < rep.ensemble_max.front() - 1e-12;
  return rep;
}

}  // namespace opuc
