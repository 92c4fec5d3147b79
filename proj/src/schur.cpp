#include "opuc/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opuc {

namespace {

constexpr std::int64_t kNoTail = std::numeric_limits<std::int64_t>::max();

// First index from which the plus-direction parameters of `desc` are all
// zero, or kNoTail.
std::int64_t plus_zero_from(const VerblunskyDescriptor& d, std::int64_t n) {
  if (const auto* c = std::get_if<ConstantCoeffs>(&d.kind))
    return c->value == cdouble{0.0} ? 0 : kNoTail;
  if (const auto* f = std::get_if<FiniteSupportCoeffs>(&d.kind)) {
    if (f->support.empty()) return 0;
    return std::max<std::int64_t>(f->support.rbegin()->first + 1 - n, 0);
  }
  if (const auto* e = std::get_if<ExplicitCoeffs>(&d.kind)) {
    if (std::holds_alternative<ZeroTail>(e->tail))
      return std::max<std::int64_t>(
          static_cast<std::int64_t>(e->values.size()) - n, 0);
    if (const auto* ct = std::get_if<ConstantTail>(&e->tail))
      if (ct->value == cdouble{0.0})
        return std::max<std::int64_t>(
            static_cast<std::int64_t>(e->values.size()) - n, 0);
  }
  return kNoTail;
}

// First index j from which alpha_{n-1-j} is all zero going left, or kNoTail.
std::int64_t minus_zero_from(const VerblunskyDescriptor& d, std::int64_t n) {
  if (const auto* c = std::get_if<ConstantCoeffs>(&d.kind))
    return c->value == cdouble{0.0} ? 0 : kNoTail;
  if (const auto* f = std::get_if<FiniteSupportCoeffs>(&d.kind)) {
    if (f->support.empty()) return 0;
    return std::max<std::int64_t>(n - f->support.begin()->first, 0);
  }
  if (const auto* s = std::get_if<SparseCoeffs>(&d.kind)) {
    // Smallest support site is 1 + offset.
    return std::max<std::int64_t>(n - (1 + s->offset), 0);
  }
  return kNoTail;
}

}  // namespace

SchurSequence SchurSequence::plus_tail(const VerblunskyDescriptor& desc,
                                       std::int64_t n) {
  if (desc.orientation == Orientation::half_line && n < 0)
    throw std::invalid_argument("plus tail: half-line index must be >= 0");
  SchurSequence s;
  s.source_ = Source::descriptor_plus;
  s.desc_ = desc;
  s.base_ = n;
  auto zero_from = plus_zero_from(desc, n);
  s.tail_ = zero_from == kNoTail ? TailInfo{TailInfo::Kind::none, 0}
                                 : TailInfo{TailInfo::Kind::zero, zero_from};
  return s;
}

SchurSequence SchurSequence::minus_tail(const VerblunskyDescriptor& desc,
                                        std::int64_t n) {
  SchurSequence s;
  s.source_ = Source::descriptor_minus;
  s.desc_ = desc;
  s.base_ = n;
  if (desc.orientation == Orientation::half_line) {
    if (n < 0)
      throw std::invalid_argument("minus tail: half-line index must be >= 0");
    // gamma_n = -conj(alpha_{-1}) = 1.
    s.tail_ = {TailInfo::Kind::blaschke, n};
  } else {
    auto zero_from = minus_zero_from(desc, n);
    s.tail_ = zero_from == kNoTail ? TailInfo{TailInfo::Kind::none, 0}
                                   : TailInfo{TailInfo::Kind::zero, zero_from};
  }
  return s;
}

SchurSequence SchurSequence::from_list(std::vector<cdouble> params,
                                       std::optional<cdouble> terminator) {
  for (const auto& p : params)
    if (std::abs(p) >= 1.0)
      throw std::invalid_argument("schur parameters must have modulus < 1");
  SchurSequence s;
  s.source_ = Source::list;
  auto len = static_cast<std::int64_t>(params.size());
  s.list_ = std::move(params);
  if (terminator) {
    if (std::abs(std::abs(*terminator) - 1.0) > 1e-12)
      throw std::invalid_argument("schur terminator must have modulus 1");
    s.terminator_ = terminator;
    s.tail_ = {TailInfo::Kind::blaschke, len};
  } else {
    s.tail_ = {TailInfo::Kind::zero, len};
  }
  return s;
}

cdouble SchurSequence::param(std::int64_t j) const {
  if (j < 0) throw std::invalid_argument("schur parameter index < 0");
  switch (source_) {
    case Source::descriptor_plus:
      return value_at(desc_, base_ + j);
    case Source::descriptor_minus:
      return -std::conj(value_at(desc_, base_ - 1 - j));
    case Source::list:
      if (j < static_cast<std::int64_t>(list_.size()))
        return list_[static_cast<std::size_t>(j)];
      if (terminator_ && j == static_cast<std::int64_t>(list_.size()))
        return *terminator_;
      return 0.0;
  }
  return 0.0;
}

SchurValue schur_eval(const SchurSequence& seq, cdouble z,
                      const DepthPolicy& policy) {
  double r = std::abs(z);
  if (r > 1.0 + 1e-12)
    throw std::invalid_argument("schur evaluation requires |z| <= 1");
  auto tail = seq.tail();
  std::int64_t exact_depth =
      tail.kind == TailInfo::Kind::none ? kNoTail : tail.index;

  std::int64_t n;
  if (r >= 1.0 - 1e-12) {
    if (exact_depth == kNoTail)
      throw numeric_error(
          "schur evaluation on the boundary requires a terminating tail");
    n = exact_depth;
  } else if (policy.fixed >= 0) {
    n = std::min(policy.fixed, exact_depth);
  } else if (r == 0.0) {
    n = 1;
  } else {
    double need = std::ceil(std::log(policy.tol) / std::log(r));
    auto depth = static_cast<std::int64_t>(std::max(need, 1.0));
    n = std::min(std::min(depth, policy.max_depth), exact_depth);
    n = std::max<std::int64_t>(n, 1);
  }

  SchurValue out;
  out.depth = n;
  out.exact = exact_depth != kNoTail && n >= exact_depth;

  cdouble w = 0.0;
  if (tail.kind == TailInfo::Kind::blaschke && n >= tail.index) {
    n = tail.index;
    out.depth = n;
    w = seq.param(n);
  }
  for (std::int64_t j = n - 1; j >= 0; --j) {
    cdouble g = seq.param(j);
    cdouble zw = z * w;
    cdouble den = 1.0 + std::conj(g) * zw;
    if (std::abs(den) < 1e-300)
      throw numeric_error("schur evaluation hit a pole of a recursion step");
    w = (g + zw) / den;
  }
  out.value = w;
  return out;
}

SchurValue f_plus(const VerblunskyDescriptor& desc, std::int64_t n, cdouble z,
                  const DepthPolicy& policy) {
  return schur_eval(SchurSequence::plus_tail(desc, n), z, policy);
}

SchurValue f_minus(const VerblunskyDescriptor& desc, std::int64_t n, cdouble z,
                   const DepthPolicy& policy) {
  return schur_eval(SchurSequence::minus_tail(desc, n), z, policy);
}

SchurValue diag_schur(const VerblunskyDescriptor& desc, std::int64_t n,
                      cdouble z, const DepthPolicy& policy) {
  auto p = f_plus(desc, n, z, policy);
  auto m = f_minus(desc, n, z, policy);
  return {p.value * m.value, p.exact && m.exact, std::max(p.depth, m.depth)};
}

cdouble caratheodory(cdouble z, cdouble f) {
  cdouble den = 1.0 - z * f;
  if (std::abs(den) == 0.0)
    throw numeric_error("caratheodory transform: pole at z*f = 1");
  return (1.0 + z * f) / den;
}

cdouble constant_alpha_closed_form(cdouble a, cdouble z) {
  double m = std::abs(a);
  if (m == 0.0) return 0.0;
  if (m >= 1.0)
    throw std::invalid_argument("constant coefficient must have modulus < 1");
  cdouble phase = a / m;
  if (std::abs(z) > 1.0 + 1e-12)
    throw std::invalid_argument("closed form requires |z| <= 1");
  if (std::abs(z) < 1e-14) return a;

  // Roots of m z f^2 + (1 - z) f - m = 0; their product is -1/z, so inside
  // the disc the Schur-class value is the smaller root.  On the boundary the
  // roots can both be unimodular (the gap arcs); the radial limit picks the
  // branch, seeded from a point slightly inside.
  auto roots = [&](cdouble zz) {
    cdouble one_minus = 1.0 - zz;
    cdouble s = std::sqrt(one_minus * one_minus + 4.0 * m * m * zz);
    cdouble den = 2.0 * m * zz;
    return std::pair<cdouble, cdouble>{(-one_minus + s) / den,
                                       (-one_minus - s) / den};
  };
  auto [r1, r2] = roots(z);
  double a1 = std::abs(r1), a2 = std::abs(r2);
  cdouble f;
  if (std::abs(a1 - a2) > 1e-9) {
    f = a1 < a2 ? r1 : r2;
  } else {
    auto [s1, s2] = roots(z * (1.0 - 1e-9));
    cdouble inner = std::abs(s1) < std::abs(s2) ? s1 : s2;
    f = std::abs(r1 - inner) < std::abs(r2 - inner) ? r1 : r2;
  }
  return phase * f;
}

std::pair<double, double> constant_alpha_band(cdouble a) {
  double m = std::abs(a);
  if (m <= 0.0 || m >= 1.0)
    throw std::invalid_argument("band requires 0 < |a| < 1");
  double lo = 2.0 * std::asin(m);
  return {lo, 2.0 * M_PI - lo};
}

std::vector<cdouble> schur_params_from_taylor(const std::vector<cdouble>& c) {
  std::vector<cdouble> cur = c;
  std::vector<cdouble> params;
  params.reserve(c.size());
  while (!cur.empty()) {
    cdouble g = cur.front();
    double mg = std::abs(g);
    if (mg > 1.0 + 1e-9)
      throw std::invalid_argument(
          "taylor data is not a Schur function: parameter modulus > 1");
    params.push_back(g);
    if (mg >= 1.0 - 1e-12) break;  // Blaschke termination
    // Next coefficient string: (f - g) / (z (1 - conj(g) f)) as power series.
    std::size_t len = cur.size();
    std::vector<cdouble> num(len), den(len), quot(len);
    for (std::size_t i = 0; i < len; ++i) {
      num[i] = cur[i];
      den[i] = -std::conj(g) * cur[i];
    }
    num[0] -= g;
    den[0] += 1.0;
    for (std::size_t i = 0; i < len; ++i) {
      cdouble acc = num[i];
      for (std::size_t j = 0; j < i; ++j) acc -= quot[j] * den[i - j];
      quot[i] = acc / den[0];
    }
    cur.assign(quot.begin() + 1, quot.end());
  }
  return params;
}

}  // namespace opuc
