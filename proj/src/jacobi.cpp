#include "opuc/jacobi.hpp"

#include <cmath>

namespace opuc {

namespace {

JacobiPair embedded_pair(const JacobiDescriptor& desc, std::int64_t n) {
  if (desc.orientation == Orientation::half_line && n < 0) return {0.0, 0.0};
  return jacobi_at(desc, n);
}

cdouble herglotz_step(cdouble z, double b, double a_sq, cdouble m_prev) {
  cdouble den = z - b + a_sq * m_prev;
  if (std::abs(den) < 1e-300)
    throw numeric_error("m_function: continued fraction pole");
  cdouble m = -1.0 / den;
  if (m.imag() <= 0.0)
    throw numeric_error("m_function: non-Herglotz intermediate");
  return m;
}

}  // namespace

JacobiMatrixWindow build_jacobi(const JacobiDescriptor& desc,
                                std::int64_t center, std::int64_t halfwidth) {
  if (halfwidth < 0)
    throw std::invalid_argument("build_jacobi: negative halfwidth");
  auto w = make_banded<double>(center - halfwidth, center + halfwidth, 1);
  for (std::int64_t i = w.lo; i <= w.hi; ++i) {
    w.ref(i, i) = embedded_pair(desc, i).b;
    w.ref(i, i + 1) = embedded_pair(desc, i).a;
    w.ref(i, i - 1) = embedded_pair(desc, i - 1).a;
  }
  return w;
}

double jacobi_moment(const JacobiDescriptor& desc, std::int64_t n,
                     std::int64_t l) {
  if (l < 1) throw std::invalid_argument("jacobi_moment: l >= 1 required");
  if (desc.orientation == Orientation::half_line && n < 0)
    throw std::invalid_argument("jacobi_moment: n < 0 on the half line");
  JacobiPair here = embedded_pair(desc, n);
  if (l == 1) return here.b;
  if (l == 2) {
    double am = embedded_pair(desc, n - 1).a;
    return am * am + here.b * here.b + here.a * here.a;
  }
  auto base = build_jacobi(desc, n, l + 2);
  auto acc = base;
  for (std::int64_t j = 1; j < l; ++j) acc = banded_product(acc, base);
  if (!acc.row_valid(n))
    throw std::logic_error("jacobi_moment: window too small");
  return acc.at(n, n);
}

cdouble m_function(const JacobiDescriptor& desc, std::int64_t n, Side side,
                   cdouble z, std::int64_t depth) {
  if (!(z.imag() > 0.0))
    throw std::invalid_argument("m_function: Im z > 0 required");
  if (depth < 1) throw std::invalid_argument("m_function: depth >= 1 required");
  bool half = desc.orientation == Orientation::half_line;
  cdouble m = -1.0 / z;
  if (side == Side::minus) {
    if (half && n < 0)
      throw std::invalid_argument("m_function: minus tail needs n >= 0");
    // Sites [start, n] upward; half-line truncations are finite, so exact.
    std::int64_t start = half ? 0 : n - depth + 1;
    for (std::int64_t j = start; j <= n; ++j) {
      double am = embedded_pair(desc, j - 1).a;
      m = herglotz_step(z, embedded_pair(desc, j).b, am * am, m);
    }
  } else {
    if (half && n < -1)
      throw std::invalid_argument("m_function: plus tail needs n >= -1");
    // Sites [n + 1, n + depth] downward.
    for (std::int64_t j = n + depth - 1; j >= n; --j) {
      JacobiPair next = embedded_pair(desc, j + 1);
      m = herglotz_step(z, next.b, next.a * next.a, m);
    }
  }
  return m;
}

cdouble resolvent_diagonal(const JacobiDescriptor& desc, std::int64_t n,
                           cdouble z, std::int64_t depth) {
  if (!(z.imag() > 0.0))
    throw std::invalid_argument("resolvent_diagonal: Im z > 0 required");
  JacobiPair here = embedded_pair(desc, n);
  JacobiPair left = embedded_pair(desc, n - 1);
  cdouble den = z - here.b;
  if (here.a != 0.0)
    den += here.a * here.a * m_function(desc, n, Side::plus, z, depth);
  if (left.a != 0.0)
    den += left.a * left.a * m_function(desc, n - 1, Side::minus, z, depth);
  if (std::abs(den) < 1e-12)
    throw numeric_error("resolvent_diagonal: vanishing Wronskian");
  return -1.0 / den;
}

SimonClassification simon_classify(const JacobiDescriptor& desc,
                                   std::int64_t probe_lo,
                                   std::int64_t probe_hi) {
  if (desc.orientation != Orientation::whole_line)
    throw std::invalid_argument("simon_classify: whole-line descriptor required");
  if (probe_hi < probe_lo + 3)
    throw std::invalid_argument("simon_classify: probe window too small");
  SimonClassification out;
  std::int64_t even0 = probe_lo + (((probe_lo % 2) + 2) % 2);
  out.a = jacobi_at(desc, even0).a;
  out.c = jacobi_at(desc, even0 + 1).a;
  out.b = jacobi_at(desc, probe_lo).b;
  constexpr double kTol = 1e-12;
  for (std::int64_t i = probe_lo; i <= probe_hi; ++i) {
    JacobiPair p = jacobi_at(desc, i);
    if (std::abs(p.b - out.b) > kTol) {
      out.witness = i;
      out.witness_field = "b";
      return out;
    }
    double expected = (((i % 2) + 2) % 2 == 0) ? out.a : out.c;
    if (std::abs(p.a - expected) > kTol) {
      out.witness = i;
      out.witness_field = "a";
      return out;
    }
  }
  out.in_class = true;
  out.A = out.a * out.a + out.c * out.c;
  out.B = out.b;
  out.spectral_tag = (out.a > 0.0 && out.c > 0.0) ? "periodic/reflectionless"
                                                  : "direct-sum/pure-point";
  for (std::int64_t i = probe_lo; i <= probe_hi; ++i) {
    out.max_moment_drift =
        std::max(out.max_moment_drift,
                 std::abs(jacobi_moment(desc, i, 1) - out.B));
    out.max_moment_drift =
        std::max(out.max_moment_drift,
                 std::abs(jacobi_moment(desc, i, 2) -
                          (out.A + out.B * out.B)));
  }
  return out;
}

}  // namespace opuc
