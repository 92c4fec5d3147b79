#include "opuc/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opuc {

namespace {
constexpr double kTau = 2.0 * M_PI;
}

cdouble MoebiusMap::apply(cdouble w) const {
  cdouble den = c * w + d;
  if (std::abs(den) == 0.0)
    throw numeric_error("moebius map: pole hit during evaluation");
  return (a * w + b) / den;
}

void MoebiusMap::renormalize() {
  double m = std::max(std::max(std::abs(a), std::abs(b)),
                      std::max(std::abs(c), std::abs(d)));
  if (m == 0.0) throw numeric_error("moebius map: zero matrix");
  a /= m;
  b /= m;
  c /= m;
  d /= m;
}

MoebiusMap operator*(const MoebiusMap& x, const MoebiusMap& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

MoebiusMap product(const std::vector<MoebiusMap>& factors) {
  MoebiusMap acc;
  int since = 0;
  for (const auto& f : factors) {
    acc = acc * f;
    if (++since == 8) {
      acc.renormalize();
      since = 0;
    }
  }
  return acc;
}

bool projectively_equal(const MoebiusMap& x, const MoebiusMap& y, double tol) {
  const cdouble xe[4] = {x.a, x.b, x.c, x.d};
  const cdouble ye[4] = {y.a, y.b, y.c, y.d};
  int pivot = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(ye[i]) > std::abs(ye[pivot])) pivot = i;
  if (std::abs(ye[pivot]) == 0.0) return std::abs(xe[0]) == 0.0;
  cdouble s = xe[pivot] / ye[pivot];
  for (int i = 0; i < 4; ++i)
    if (std::abs(xe[i] - s * ye[i]) > tol) return false;
  return true;
}

double pseudo_dist(cdouble w1, cdouble w2) {
  double n1 = std::norm(w1), n2 = std::norm(w2);
  if (n1 >= 1.0 || n2 >= 1.0)
    throw std::invalid_argument("pseudo_dist: arguments must lie in the open disc");
  return std::abs(w1 - w2) / (std::sqrt(1.0 - n1) * std::sqrt(1.0 - n2));
}

cdouble attracting_fixed_point(const MoebiusMap& m) {
  cdouble det = m.a * m.d - m.b * m.c;
  if (std::abs(m.c) < 1e-300) {
    cdouble diff = m.a - m.d;
    if (std::abs(diff) < 1e-300)
      throw numeric_error("fixed point: map too close to the identity");
    cdouble w = m.b / diff;
    // The second fixed point sits at infinity; the finite one attracts iff
    // |phi'(w)| = |det| / |d|^2 <= 1.
    if (std::abs(det) <= std::norm(m.d) * (1.0 + 1e-9)) return w;
    throw numeric_error("fixed point: attracting point at infinity");
  }
  cdouble half = (m.a - m.d) / (2.0 * m.c);
  cdouble r = std::sqrt(half * half + m.b / m.c);
  cdouble w1 = half + r, w2 = half - r;
  double a1 = std::abs(w1), a2 = std::abs(w2);
  bool in1 = a1 < 1.0 - 1e-9, in2 = a2 < 1.0 - 1e-9;
  if (in1 != in2) return in1 ? w1 : w2;
  auto deriv = [&](cdouble w) {
    cdouble den = m.c * w + m.d;
    if (std::abs(den) == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(det) / std::norm(den);
  };
  return deriv(w1) <= deriv(w2) ? w1 : w2;
}

namespace {

double wrap_tau(double x) {
  double y = std::fmod(x, kTau);
  if (y < 0.0) y += kTau;
  return y;
}

}  // namespace

ArcSet::ArcSet(const std::vector<std::pair<double, double>>& arcs) {
  std::vector<std::pair<double, double>> pieces;
  for (auto [lo, hi] : arcs) {
    if (!(std::isfinite(lo) && std::isfinite(hi)))
      throw std::invalid_argument("arc set: non-finite endpoint");
    if (hi - lo >= kTau) {
      arcs_ = {{0.0, kTau}};
      return;
    }
    if (hi <= lo && hi - lo > -1e-15) continue;  // empty arc
    double a = wrap_tau(lo);
    double len = hi > lo ? hi - lo : wrap_tau(hi - lo);
    if (len <= 0.0) continue;
    if (a + len <= kTau) {
      pieces.emplace_back(a, a + len);
    } else {
      pieces.emplace_back(a, kTau);
      pieces.emplace_back(0.0, a + len - kTau);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  for (auto [lo, hi] : pieces) {
    if (!arcs_.empty() && lo <= arcs_.back().second + 1e-15)
      arcs_.back().second = std::max(arcs_.back().second, hi);
    else
      arcs_.emplace_back(lo, hi);
  }
  if (arcs_.size() == 1 && arcs_[0].first == 0.0 && arcs_[0].second >= kTau)
    arcs_[0].second = kTau;
}

ArcSet ArcSet::full_circle() { return ArcSet({{0.0, kTau}}); }

double ArcSet::measure() const {
  double m = 0.0;
  for (auto [lo, hi] : arcs_) m += hi - lo;
  return m;
}

bool ArcSet::contains(double theta) const {
  double t = wrap_tau(theta);
  for (auto [lo, hi] : arcs_)
    if (t >= lo && t < hi) return true;
  return false;
}

ArcSet ArcSet::complement() const {
  std::vector<std::pair<double, double>> out;
  double cursor = 0.0;
  for (auto [lo, hi] : arcs_) {
    if (lo > cursor) out.emplace_back(cursor, lo);
    cursor = hi;
  }
  if (cursor < kTau) out.emplace_back(cursor, kTau);
  ArcSet s;
  s.arcs_ = std::move(out);
  return s;
}

ArcSet ArcSet::star() const {
  std::vector<std::pair<double, double>> out;
  for (auto [lo, hi] : arcs_) out.emplace_back(kTau - hi, kTau - lo);
  return ArcSet(out);
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
  std::vector<std::pair<double, double>> out;
  for (auto [lo, hi] : arcs_)
    for (auto [lo2, hi2] : other.arcs_) {
      double a = std::max(lo, lo2), b = std::min(hi, hi2);
      if (b > a) out.emplace_back(a, b);
    }
  return ArcSet(out);
}

double harmonic_measure(cdouble z, const ArcSet& s) {
  if (std::abs(z) >= 1.0)
    throw std::invalid_argument("harmonic measure: base point must satisfy |z| < 1");
  double total = 0.0;
  for (auto [lo, hi] : s.arcs()) {
    if (hi - lo >= kTau) return 1.0;
    if (hi - lo < 1e-14) continue;
    auto image_angle = [&](double theta) {
      cdouble w = std::polar(1.0, theta);
      return std::arg((w - z) / (1.0 - std::conj(z) * w));
    };
    total += wrap_tau(image_angle(hi) - image_angle(lo));
  }
  return total / kTau;
}

}  // namespace opuc
