#include "opuc/polys.hpp"

#include <cmath>

namespace opuc {

SzegoPair szego_eval(const VerblunskyDescriptor& desc, std::int64_t n,
                     cdouble z) {
  if (desc.orientation != Orientation::half_line)
    throw std::invalid_argument("szego_eval: half-line descriptor required");
  if (n < 0) throw std::invalid_argument("szego_eval: negative degree");
  SzegoPair p;
  p.phi = 1.0;
  p.phi_star = 1.0;
  p.n = n;
  for (std::int64_t k = 0; k < n; ++k) {
    cdouble a = value_at(desc, k);
    cdouble phi_next = z * p.phi - std::conj(a) * p.phi_star;
    p.phi_star = p.phi_star - a * z * p.phi;
    p.phi = phi_next;
    p.rho_product *= std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
  }
  return p;
}

RatioTrace ratio_trace(const VerblunskyDescriptor& desc, cdouble z,
                       std::int64_t N, double tol) {
  if (desc.orientation != Orientation::half_line)
    throw std::invalid_argument("ratio_trace: half-line descriptor required");
  if (N < 4) throw std::invalid_argument("ratio_trace: need N >= 4");
  if (std::abs(z) >= 1.0 - 1e-12)
    throw std::invalid_argument("ratio_trace: |z| < 1 required");
  RatioTrace t;
  t.ratios.reserve(static_cast<std::size_t>(N));
  cdouble r = 1.0;  // Phi_k / Phi*_k, bounded by 1 on the closed disc
  for (std::int64_t k = 0; k < N; ++k) {
    cdouble a = value_at(desc, k);
    cdouble den = 1.0 - a * z * r;
    t.ratios.push_back(den);
    if (std::abs(den) < 1e-300)
      throw numeric_error("ratio_trace: reversed polynomial vanished");
    r = (z * r - std::conj(a)) / den;
  }
  t.limit = t.ratios.back();
  t.deviation = 0.0;
  for (std::size_t k = t.ratios.size() - t.ratios.size() / 4;
       k < t.ratios.size(); ++k)
    t.deviation = std::max(t.deviation, std::abs(t.ratios[k] - t.limit));
  t.converged = t.deviation < tol;
  return t;
}

VerblunskyDescriptor ktilde_descriptor(cdouble c, Orientation orientation) {
  double s = std::sqrt(std::abs(c));
  if (s == 0.0)
    throw std::invalid_argument("ktilde_descriptor: c must be nonzero");
  // beta_n = s e^{-i n t} with t = arg(-c), so conj(beta_{n+1}) beta_n
  //        = s^2 e^{i t} = -c.
  double t = std::arg(-c);
  return VerblunskyDescriptor::lopez(0, 1, s, s, t, 0.0, orientation);
}

TwoPointRecovery ratio_two_point(cdouble z1, cdouble g1, cdouble z2,
                                 cdouble g2) {
  if (std::abs(z1) < 1e-14 || std::abs(z2) < 1e-14)
    throw std::invalid_argument("ratio_two_point: z must be nonzero");
  if (std::abs(g1) < 1e-14 || std::abs(g2) < 1e-14)
    throw numeric_error("ratio_two_point: ratio limit is 1 (g = 0)");
  cdouble den = 1.0 / (z2 * g2) - 1.0 / (z1 * g1);
  if (std::abs(den) < 1e-14)
    throw numeric_error("ratio_two_point: degenerate pair, z1 g1 = z2 g2");
  TwoPointRecovery rec;
  rec.consecutive_product = (1.0 / z1 - g1 - 1.0 / z2 + g2) / den;
  cdouble b2den = g1 * (1.0 - z1 * g1) + rec.consecutive_product;
  if (std::abs(b2den) < 1e-14)
    throw numeric_error("ratio_two_point: modulus system degenerate");
  rec.modulus = std::sqrt(std::abs(z1 * g1 * rec.consecutive_product / b2den));
  rec.moment = -std::conj(rec.consecutive_product);
  return rec;
}

}  // namespace opuc
