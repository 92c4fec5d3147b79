#pragma once

#include <string>

#include "opuc/cmv.hpp"
#include "opuc/coeffs.hpp"

namespace opuc {

using JacobiMatrixWindow = BandedWindow<double>;

// Symmetric tridiagonal window, rows [center - H, center + H]: diagonal b_n,
// off-diagonal a_n between sites n and n + 1.  Half-line descriptors embed
// with a_n = 0 and b_n = 0 for n < 0, decoupling the negative axis.
JacobiMatrixWindow build_jacobi(const JacobiDescriptor& desc,
                                std::int64_t center, std::int64_t halfwidth);

// l-th spectral moment of (H, delta_n): l = 1 gives b_n, l = 2 gives
// a_{n-1}^2 + b_n^2 + a_n^2, higher l via the windowed power diagonal
// [H^l]_{nn} on halfwidth l + 2.
double jacobi_moment(const JacobiDescriptor& desc, std::int64_t n,
                     std::int64_t l);

// Half-line m-function of the tail cut at site n, Im z > 0:
//   minus: m(n) = <delta_n, (H_{(-inf, n]} - z)^{-1} delta_n>,
//          m(n) = -1 / (z - b_n + a_{n-1}^2 m(n-1)),
//   plus:  m(n) = <delta_{n+1}, (H_{[n+1, inf)} - z)^{-1} delta_{n+1}>,
//          m(n) = -1 / (z - b_{n+1} + a_{n+1}^2 m(n+1)),
// iterated from the zero-operator seed -1/z placed `depth` sites away.  The
// Herglotz property Im m > 0 is checked at every step.
cdouble m_function(const JacobiDescriptor& desc, std::int64_t n, Side side,
                   cdouble z, std::int64_t depth = 256);

// Diagonal Green's function <delta_n, (H - z)^{-1} delta_n>, Im z > 0, via
// the Schur complement on site n:
//   G(n, n; z) = -1 / (z - b_n + a_n^2 m_+(n) + a_{n-1}^2 m_-(n-1)),
// equivalently u(n)v(n)/W for the half-line-decaying solutions u, v with
// u(n+1) = -a_n m_+(n) u(n) and v(n-1) = -a_{n-1} m_-(n-1) v(n).
cdouble resolvent_diagonal(const JacobiDescriptor& desc, std::int64_t n,
                           cdouble z, std::int64_t depth = 256);

struct SimonClassification {
  bool in_class = false;
  double a = 0.0;  // a_{2n}
  double c = 0.0;  // a_{2n+1}
  double b = 0.0;  // b_n
  double A = 0.0;  // a^2 + c^2
  double B = 0.0;  // b
  std::int64_t witness = 0;        // first violating site when !in_class
  std::string witness_field;       // "a" or "b"
  std::string spectral_tag;        // see below
  double max_moment_drift = 0.0;   // first/second moment spread on the probe
};

// Pattern-matches a_{2n} = a, a_{2n+1} = c, b_n = b on the probe window, then
// verifies constancy of the first two moments numerically.  Tags classified
// operators "periodic/reflectionless" (a, c > 0) or "direct-sum/pure-point"
// (a c = 0).
//
// Moments under this structure: <x>_n = b and <x^2>_n = a^2 + c^2 + b^2 at
// every site, so A = a^2 + c^2 and B = b are class invariants but do not fix
// the member.  Summing length-4 closed walks on the tridiagonal matrix gives
//   <x^4>_n = b^4 + 6 b^2 (a^2 + c^2) + (a^2 + c^2)^2 + 2 a^2 c^2,
// again site-independent; given A and B it pins a^2 c^2, hence {a, c} up to
// order, i.e. the member up to a one-site shift.  The third moment,
// b^3 + 3 b (a^2 + c^2), is a function of (A, B) alone and adds nothing.
SimonClassification simon_classify(const JacobiDescriptor& desc,
                                   std::int64_t probe_lo,
                                   std::int64_t probe_hi);

}  // namespace opuc
