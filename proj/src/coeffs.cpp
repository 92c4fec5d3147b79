#include "opuc/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opuc {

namespace {

constexpr double kHalfLineBound = 1.0 - 1e-15;

void check_half_line_value(const cdouble& v) {
  if (std::abs(v) >= 1.0)
    throw std::invalid_argument(
        "half-line coefficients must have modulus < 1");
}

void check_whole_line_value(const cdouble& v) {
  if (std::abs(v) > 1.0 + 1e-15)
    throw std::invalid_argument(
        "whole-line coefficients must have modulus <= 1");
}

void check_values(const std::vector<cdouble>& vs, Orientation o) {
  for (const auto& v : vs)
    o == Orientation::half_line ? check_half_line_value(v)
                                : check_whole_line_value(v);
}

std::int64_t mod_index(std::int64_t n, std::int64_t p) {
  return ((n % p) + p) % p;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_draw(std::uint64_t& state) {
  state = splitmix(state);
  return static_cast<double>(state >> 11) * 0x1.0p-53;
}

bool sparse_supported(const SparseCoeffs& s, std::int64_t n) {
  std::int64_t m = n - s.offset;
  if (m < 1) return false;
  while (m % s.base == 0) m /= s.base;
  return m == 1;
}

cdouble lopez_value(const LopezCoeffs& l, std::int64_t n) {
  std::int64_t d = n - l.n0;
  if (d % l.k != 0) return 0.0;
  std::int64_t j = d / l.k;
  double modulus = mod_index(j, 2) == 0 ? l.a : l.b;
  return std::polar(modulus, l.t0 - static_cast<double>(j) * l.t);
}

cdouble random_value(const RandomCoeffs& r, std::int64_t n) {
  std::int64_t phys = n + r.index_offset;
  cdouble base = value_at(*r.base, phys);
  double s = r.scale.power == 0.0
                 ? r.scale.value
                 : r.scale.value /
                       std::pow(static_cast<double>(phys) + 1.0, r.scale.power);
  std::uint64_t state =
      splitmix(r.seed ^ splitmix(static_cast<std::uint64_t>(phys)));
  for (int tries = 0; tries < 64; ++tries) {
    double x = r.dist == Distribution::rademacher
                   ? (unit_draw(state) < 0.5 ? -1.0 : 1.0)
                   : 2.0 * unit_draw(state) - 1.0;
    cdouble v = base + s * x;
    if (std::abs(v) < kHalfLineBound) return v;
  }
  throw numeric_error(
      "random coefficients: rejection sampling cannot reach modulus < 1");
}

}  // namespace

VerblunskyDescriptor VerblunskyDescriptor::constant(cdouble value,
                                                    Orientation o) {
  check_values({value}, o);
  return {o, ConstantCoeffs{value}};
}

VerblunskyDescriptor VerblunskyDescriptor::periodic(std::vector<cdouble> values,
                                                    Orientation o) {
  if (values.empty())
    throw std::invalid_argument("periodic coefficients: empty period");
  check_values(values, o);
  return {o, PeriodicCoeffs{std::move(values)}};
}

VerblunskyDescriptor VerblunskyDescriptor::explicit_list(
    std::vector<cdouble> values, TailRule tail) {
  check_values(values, Orientation::half_line);
  std::visit(
      [](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ConstantTail>)
          check_half_line_value(t.value);
        else if constexpr (std::is_same_v<T, PeriodicTail>) {
          if (t.values.empty())
            throw std::invalid_argument("periodic tail: empty period");
          check_values(t.values, Orientation::half_line);
        }
      },
      tail);
  return {Orientation::half_line,
          ExplicitCoeffs{std::move(values), std::move(tail)}};
}

VerblunskyDescriptor VerblunskyDescriptor::finite_support(
    std::map<std::int64_t, cdouble> support, Orientation o) {
  for (const auto& [n, v] : support) {
    if (o == Orientation::half_line && n < 0)
      throw std::invalid_argument("half-line support index < 0");
    o == Orientation::half_line ? check_half_line_value(v)
                                : check_whole_line_value(v);
  }
  return {o, FiniteSupportCoeffs{std::move(support)}};
}

VerblunskyDescriptor VerblunskyDescriptor::sparse(std::int64_t base,
                                                  cdouble value, Orientation o,
                                                  std::int64_t offset) {
  if (base < 2) throw std::invalid_argument("sparse support: base must be >= 2");
  check_values({value}, o);
  return {o, SparseCoeffs{base, value, offset}};
}

VerblunskyDescriptor VerblunskyDescriptor::lopez(std::int64_t n0,
                                                 std::int64_t k, double a,
                                                 double b, double t, double t0,
                                                 Orientation o) {
  if (k < 1) throw std::invalid_argument("lopez spacing k must be >= 1");
  double bound = o == Orientation::half_line ? 1.0 : 1.0 + 1e-15;
  if (!(a > 0.0 && b > 0.0) ||
      (o == Orientation::half_line ? (a >= bound || b >= bound)
                                   : (a > bound || b > bound)))
    throw std::invalid_argument("lopez moduli must lie in (0,1] (whole line) "
                                "or (0,1) (half line)");
  return {o, LopezCoeffs{n0, k, a, b, t, t0}};
}

VerblunskyDescriptor VerblunskyDescriptor::random(VerblunskyDescriptor base,
                                                  ScaleSequence scale,
                                                  Distribution dist,
                                                  std::uint64_t seed) {
  if (scale.value < 0.0 || scale.power < 0.0)
    throw std::invalid_argument("random coefficients: negative scale");
  Orientation o = base.orientation;
  RandomCoeffs r;
  r.base = std::make_shared<VerblunskyDescriptor>(std::move(base));
  r.scale = scale;
  r.dist = dist;
  r.seed = seed;
  return {o, std::move(r)};
}

bool operator==(const VerblunskyDescriptor& x, const VerblunskyDescriptor& y) {
  if (x.orientation != y.orientation) return false;
  if (x.kind.index() != y.kind.index()) return false;
  return std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(y.kind);
        if constexpr (std::is_same_v<T, ConstantCoeffs>)
          return a.value == b.value;
        else if constexpr (std::is_same_v<T, PeriodicCoeffs>)
          return a.values == b.values;
        else if constexpr (std::is_same_v<T, ExplicitCoeffs>)
          return a.values == b.values && a.tail == b.tail;
        else if constexpr (std::is_same_v<T, FiniteSupportCoeffs>)
          return a.support == b.support;
        else if constexpr (std::is_same_v<T, SparseCoeffs>)
          return a.base == b.base && a.value == b.value && a.offset == b.offset;
        else if constexpr (std::is_same_v<T, LopezCoeffs>)
          return a.n0 == b.n0 && a.k == b.k && a.a == b.a && a.b == b.b &&
                 a.t == b.t && a.t0 == b.t0;
        else {
          bool base_eq = a.base ? (b.base && *a.base == *b.base) : !b.base;
          return base_eq && a.scale.value == b.scale.value &&
                 a.scale.power == b.scale.power && a.dist == b.dist &&
                 a.seed == b.seed && a.index_offset == b.index_offset;
        }
      },
      x.kind);
}

cdouble value_at(const VerblunskyDescriptor& desc, std::int64_t n) {
  if (desc.orientation == Orientation::half_line) {
    if (n == -1) return -1.0;
    if (n < -1)
      throw std::invalid_argument("half-line coefficient index below -1");
  }
  return std::visit(
      [&](const auto& k) -> cdouble {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantCoeffs>) {
          return k.value;
        } else if constexpr (std::is_same_v<T, PeriodicCoeffs>) {
          return k.values[static_cast<std::size_t>(
              mod_index(n, static_cast<std::int64_t>(k.values.size())))];
        } else if constexpr (std::is_same_v<T, ExplicitCoeffs>) {
          auto len = static_cast<std::int64_t>(k.values.size());
          if (n < len) return k.values[static_cast<std::size_t>(n)];
          return std::visit(
              [&](const auto& t) -> cdouble {
                using U = std::decay_t<decltype(t)>;
                if constexpr (std::is_same_v<U, ZeroTail>)
                  return 0.0;
                else if constexpr (std::is_same_v<U, ConstantTail>)
                  return t.value;
                else
                  return t.values[static_cast<std::size_t>(mod_index(
                      n - len, static_cast<std::int64_t>(t.values.size())))];
              },
              k.tail);
        } else if constexpr (std::is_same_v<T, FiniteSupportCoeffs>) {
          auto it = k.support.find(n);
          return it == k.support.end() ? cdouble{0.0} : it->second;
        } else if constexpr (std::is_same_v<T, SparseCoeffs>) {
          return sparse_supported(k, n) ? k.value : cdouble{0.0};
        } else if constexpr (std::is_same_v<T, LopezCoeffs>) {
          return lopez_value(k, n);
        } else {
          return random_value(k, n);
        }
      },
      desc.kind);
}

CoefficientWindow window(const VerblunskyDescriptor& desc, std::int64_t center,
                         std::int64_t halfwidth) {
  if (halfwidth < 0) throw std::invalid_argument("window: negative halfwidth");
  if (desc.orientation == Orientation::half_line && center - halfwidth < -1)
    throw std::invalid_argument("window: half-line indices below -1");
  CoefficientWindow w{center, halfwidth, {}};
  w.values.reserve(static_cast<std::size_t>(2 * halfwidth + 1));
  for (std::int64_t n = center - halfwidth; n <= center + halfwidth; ++n)
    w.values.push_back(value_at(desc, n));
  return w;
}

VerblunskyDescriptor shift(const VerblunskyDescriptor& desc, std::int64_t m) {
  if (desc.orientation == Orientation::half_line && m < 0)
    throw std::invalid_argument("shift: half-line descriptors shift forward only");
  VerblunskyDescriptor out = desc;
  std::visit(
      [&](auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, PeriodicCoeffs>) {
          auto p = static_cast<std::int64_t>(k.values.size());
          std::vector<cdouble> rotated(k.values.size());
          for (std::int64_t i = 0; i < p; ++i)
            rotated[static_cast<std::size_t>(i)] =
                k.values[static_cast<std::size_t>(mod_index(i + m, p))];
          k.values = std::move(rotated);
        } else if constexpr (std::is_same_v<T, ExplicitCoeffs>) {
          auto len = static_cast<std::int64_t>(k.values.size());
          if (m <= len) {
            k.values.erase(k.values.begin(), k.values.begin() + m);
          } else {
            k.values.clear();
            if (auto* pt = std::get_if<PeriodicTail>(&k.tail)) {
              auto p = static_cast<std::int64_t>(pt->values.size());
              std::vector<cdouble> rotated(pt->values.size());
              for (std::int64_t i = 0; i < p; ++i)
                rotated[static_cast<std::size_t>(i)] =
                    pt->values[static_cast<std::size_t>(mod_index(i + m - len, p))];
              pt->values = std::move(rotated);
            }
          }
        } else if constexpr (std::is_same_v<T, FiniteSupportCoeffs>) {
          std::map<std::int64_t, cdouble> moved;
          for (const auto& [n, v] : k.support)
            if (desc.orientation == Orientation::whole_line || n - m >= 0)
              moved.emplace(n - m, v);
          k.support = std::move(moved);
        } else if constexpr (std::is_same_v<T, SparseCoeffs>) {
          k.offset -= m;
        } else if constexpr (std::is_same_v<T, LopezCoeffs>) {
          k.n0 -= m;
        } else if constexpr (std::is_same_v<T, RandomCoeffs>) {
          k.index_offset += m;
        }
      },
      out.kind);
  return out;
}

namespace {

std::vector<std::int64_t> geometric_witnesses(std::int64_t start,
                                              std::int64_t stride) {
  return {start + 16 * stride, start + 128 * stride, start + 1024 * stride};
}

RightLimit zero_limit(std::int64_t beyond) {
  return {VerblunskyDescriptor::constant(0.0, Orientation::whole_line),
          geometric_witnesses(beyond, 1), false};
}

void push_unique(std::vector<RightLimit>& out, RightLimit lim) {
  for (const auto& have : out)
    if (have.descriptor == lim.descriptor) return;
  out.push_back(std::move(lim));
}

}  // namespace

std::vector<RightLimit> right_limits(const VerblunskyDescriptor& desc) {
  std::vector<RightLimit> out;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantCoeffs>) {
          if (k.value == cdouble{0.0}) {
            out.push_back(zero_limit(0));
          } else {
            out.push_back(
                {VerblunskyDescriptor::constant(k.value, Orientation::whole_line),
                 geometric_witnesses(0, 1), false});
          }
        } else if constexpr (std::is_same_v<T, PeriodicCoeffs>) {
          auto p = static_cast<std::int64_t>(k.values.size());
          auto whole =
              VerblunskyDescriptor::periodic(k.values, Orientation::whole_line);
          for (std::int64_t r = 0; r < p; ++r)
            push_unique(out, {shift(whole, r), geometric_witnesses(r, p), false});
        } else if constexpr (std::is_same_v<T, ExplicitCoeffs>) {
          auto len = static_cast<std::int64_t>(k.values.size());
          std::visit(
              [&](const auto& t) {
                using U = std::decay_t<decltype(t)>;
                if constexpr (std::is_same_v<U, ZeroTail>) {
                  out.push_back(zero_limit(len));
                } else if constexpr (std::is_same_v<U, ConstantTail>) {
                  out.push_back({VerblunskyDescriptor::constant(
                                     t.value, Orientation::whole_line),
                                 geometric_witnesses(len, 1), false});
                } else {
                  auto p = static_cast<std::int64_t>(t.values.size());
                  auto whole = VerblunskyDescriptor::periodic(
                      t.values, Orientation::whole_line);
                  for (std::int64_t r = 0; r < p; ++r)
                    push_unique(out, {shift(whole, r),
                                      geometric_witnesses(len + r, p), false});
                }
              },
              k.tail);
        } else if constexpr (std::is_same_v<T, FiniteSupportCoeffs>) {
          std::int64_t beyond = 0;
          if (!k.support.empty()) beyond = k.support.rbegin()->first + 1;
          out.push_back(zero_limit(beyond));
        } else if constexpr (std::is_same_v<T, SparseCoeffs>) {
          std::int64_t site = 1;
          while (site + k.offset < 64) site *= k.base;
          std::vector<std::int64_t> gaps, hits;
          for (int j = 0; j < 3; ++j) {
            hits.push_back(site + k.offset);
            gaps.push_back(site + (site * (k.base - 1)) / 2 + k.offset);
            site *= k.base;
          }
          out.push_back({VerblunskyDescriptor::constant(0.0,
                                                        Orientation::whole_line),
                         gaps, false});
          out.push_back({VerblunskyDescriptor::finite_support(
                             {{0, k.value}}, Orientation::whole_line),
                         hits, false});
        } else if constexpr (std::is_same_v<T, LopezCoeffs>) {
          // A shift by 2*k*j rotates all phases by -2*j*t.  If some j <= 4096
          // annihilates that rotation (t a rational multiple of pi with small
          // denominator, fp tolerance 1e-9), the limit is reached exactly
          // along multiples of that block; otherwise the limit is determined
          // only up to a constant phase and witnesses minimise the drift.
          std::int64_t block = 0;
          for (std::int64_t j = 1; j <= 4096; ++j) {
            if (std::abs(std::remainder(
                    2.0 * static_cast<double>(j) * k.t, 2.0 * M_PI)) < 1e-9) {
              block = j;
              break;
            }
          }
          std::vector<std::int64_t> shifts;
          if (block > 0) {
            shifts = {k.n0 + 2 * k.k * block, k.n0 + 16 * k.k * block,
                      k.n0 + 128 * k.k * block};
          } else {
            std::vector<std::pair<double, std::int64_t>> best;
            for (std::int64_t j = 1; j <= 4096; ++j)
              best.emplace_back(
                  std::abs(std::remainder(
                      2.0 * static_cast<double>(j) * k.t, 2.0 * M_PI)),
                  j);
            std::sort(best.begin(), best.end());
            std::vector<std::int64_t> js{best[0].second, best[1].second,
                                         best[2].second};
            std::sort(js.begin(), js.end());
            for (auto j : js) shifts.push_back(k.n0 + 2 * k.k * j);
          }
          out.push_back(
              {VerblunskyDescriptor::lopez(0, k.k, k.a, k.b, k.t, k.t0,
                                           Orientation::whole_line),
               shifts, block == 0});
        } else {
          throw std::invalid_argument(
              "right limits: random descriptors are not enumerable");
        }
      },
      desc.kind);
  return out;
}

SparseCheckReport sparse_condition_check(const VerblunskyDescriptor& desc,
                                         int kmax, std::int64_t N, double tol) {
  if (kmax < 1 || N < 10 * static_cast<std::int64_t>(kmax))
    throw std::invalid_argument("sparse check: need kmax >= 1 and N >= 10*kmax");
  SparseCheckReport rep;
  rep.tol = tol;
  std::vector<double> moduli;
  for (std::int64_t n = N / 2; n <= N + kmax; ++n)
    moduli.push_back(std::abs(value_at(desc, n)));
  auto lo = N / 2;
  for (int k = 1; k <= kmax; ++k) {
    double worst = 0.0;
    for (std::int64_t n = lo; n <= N; ++n)
      worst = std::max(worst, moduli[static_cast<std::size_t>(n - lo)] *
                                  moduli[static_cast<std::size_t>(n - lo + k)]);
    rep.pair_decay.push_back(worst);
  }
  for (std::int64_t n = lo; n <= N; ++n)
    rep.limsup_estimate =
        std::max(rep.limsup_estimate, moduli[static_cast<std::size_t>(n - lo)]);
  bool decayed = std::all_of(rep.pair_decay.begin(), rep.pair_decay.end(),
                             [&](double d) { return d < tol; });
  rep.singular_indicated = decayed && rep.limsup_estimate > 10.0 * tol;
  return rep;
}

JacobiDescriptor JacobiDescriptor::constant(JacobiPair value, Orientation o) {
  if (value.a < 0.0) throw std::invalid_argument("jacobi a-coefficient < 0");
  return {o, ConstantJacobi{value}};
}

JacobiDescriptor JacobiDescriptor::periodic(std::vector<JacobiPair> values,
                                            Orientation o) {
  if (values.empty())
    throw std::invalid_argument("periodic jacobi coefficients: empty period");
  for (const auto& v : values)
    if (v.a < 0.0) throw std::invalid_argument("jacobi a-coefficient < 0");
  return {o, PeriodicJacobi{std::move(values)}};
}

JacobiDescriptor JacobiDescriptor::explicit_list(std::vector<JacobiPair> values,
                                                 JacobiPair tail) {
  for (const auto& v : values)
    if (v.a < 0.0) throw std::invalid_argument("jacobi a-coefficient < 0");
  if (tail.a < 0.0) throw std::invalid_argument("jacobi a-coefficient < 0");
  return {Orientation::half_line, ExplicitJacobi{std::move(values), tail}};
}

JacobiDescriptor JacobiDescriptor::deviation(
    JacobiPair background, std::map<std::int64_t, JacobiPair> devs) {
  if (background.a < 0.0)
    throw std::invalid_argument("jacobi a-coefficient < 0");
  for (const auto& [n, v] : devs)
    if (v.a < 0.0) throw std::invalid_argument("jacobi a-coefficient < 0");
  return {Orientation::whole_line, DeviationJacobi{background, std::move(devs)}};
}

JacobiPair jacobi_at(const JacobiDescriptor& desc, std::int64_t n) {
  if (desc.orientation == Orientation::half_line && n < 0)
    throw std::invalid_argument("half-line jacobi index < 0");
  return std::visit(
      [&](const auto& k) -> JacobiPair {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantJacobi>) {
          return k.value;
        } else if constexpr (std::is_same_v<T, PeriodicJacobi>) {
          return k.values[static_cast<std::size_t>(
              mod_index(n, static_cast<std::int64_t>(k.values.size())))];
        } else if constexpr (std::is_same_v<T, ExplicitJacobi>) {
          auto len = static_cast<std::int64_t>(k.values.size());
          return n < len ? k.values[static_cast<std::size_t>(n)] : k.tail;
        } else {
          auto it = k.deviations.find(n);
          return it == k.deviations.end() ? k.background : it->second;
        }
      },
      desc.kind);
}

JacobiWindow jacobi_window(const JacobiDescriptor& desc, std::int64_t center,
                           std::int64_t halfwidth) {
  if (halfwidth < 0) throw std::invalid_argument("window: negative halfwidth");
  if (desc.orientation == Orientation::half_line && center - halfwidth < 0)
    throw std::invalid_argument("window: half-line jacobi indices start at 0");
  JacobiWindow w{center, halfwidth, {}};
  w.values.reserve(static_cast<std::size_t>(2 * halfwidth + 1));
  for (std::int64_t n = center - halfwidth; n <= center + halfwidth; ++n)
    w.values.push_back(jacobi_at(desc, n));
  return w;
}

}  // namespace opuc
