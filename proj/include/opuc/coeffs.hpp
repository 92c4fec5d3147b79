#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

namespace opuc {

using cdouble = std::complex<double>;

// Thrown when an evaluation fails numerically (poles, degenerate products,
// non-Herglotz intermediates, rejection-sampling dead ends).  Precondition and
// schema violations throw std::invalid_argument instead.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Orientation { half_line, whole_line };

// Direction of a one-sided tail cut out of a two-sided sequence.
enum class Side { plus, minus };

// --- Verblunsky coefficient descriptors ------------------------------------
//
// A descriptor is a lazily evaluated coefficient sequence alpha_n, n >= 0
// (half line) or n in Z (whole line).  Half-line sequences carry the fixed
// boundary value alpha_{-1} = -1; interior half-line coefficients satisfy
// |alpha_n| < 1, whole-line coefficients |alpha_n| <= 1.

struct ZeroTail {};
struct ConstantTail {
  cdouble value;
};
struct PeriodicTail {
  std::vector<cdouble> values;
};
inline bool operator==(const ZeroTail&, const ZeroTail&) { return true; }
inline bool operator==(const ConstantTail& x, const ConstantTail& y) {
  return x.value == y.value;
}
inline bool operator==(const PeriodicTail& x, const PeriodicTail& y) {
  return x.values == y.values;
}
using TailRule = std::variant<ZeroTail, ConstantTail, PeriodicTail>;

struct ConstantCoeffs {
  cdouble value;
};

// alpha_n = values[n mod p]
struct PeriodicCoeffs {
  std::vector<cdouble> values;
};

// Half line only: an explicit prefix followed by a declared tail rule.
struct ExplicitCoeffs {
  std::vector<cdouble> values;
  TailRule tail;
};

struct FiniteSupportCoeffs {
  std::map<std::int64_t, cdouble> support;
};

// Support {base^j + offset : j >= 0}, all sites carrying the same value.
struct SparseCoeffs {
  std::int64_t base;
  cdouble value;
  std::int64_t offset = 0;
};

// Support sites n0 + j*k carry modulus a (j even) or b (j odd) and phase
// t0 - j*t, so conj(alpha_{n0+(j+1)k}) * alpha_{n0+jk} = a*b*exp(i*t) for all
// j; everything off the support is zero.
struct LopezCoeffs {
  std::int64_t n0;
  std::int64_t k;
  double a;
  double b;
  double t;
  double t0;
};

// s_n = value / (n + 1)^power
struct ScaleSequence {
  double value = 0.0;
  double power = 0.0;
};

enum class Distribution { rademacher, uniform };

struct VerblunskyDescriptor;

// alpha_n = base_n + s_n * X_n with X_n i.i.d. per `dist`, |alpha_n| < 1
// enforced by rejection.  Draws are keyed by (seed, physical index), so
// window queries are reproducible in any order and shifts stay consistent.
struct RandomCoeffs {
  std::shared_ptr<const VerblunskyDescriptor> base;
  ScaleSequence scale;
  Distribution dist = Distribution::rademacher;
  std::uint64_t seed = 0;
  std::int64_t index_offset = 0;
};

using CoeffKind = std::variant<ConstantCoeffs, PeriodicCoeffs, ExplicitCoeffs,
                               FiniteSupportCoeffs, SparseCoeffs, LopezCoeffs,
                               RandomCoeffs>;

struct VerblunskyDescriptor {
  Orientation orientation = Orientation::half_line;
  CoeffKind kind = ConstantCoeffs{0.0};

  static VerblunskyDescriptor constant(cdouble value,
                                       Orientation o = Orientation::half_line);
  static VerblunskyDescriptor periodic(std::vector<cdouble> values,
                                       Orientation o = Orientation::half_line);
  static VerblunskyDescriptor explicit_list(std::vector<cdouble> values,
                                            TailRule tail = ZeroTail{});
  static VerblunskyDescriptor
  finite_support(std::map<std::int64_t, cdouble> support,
                 Orientation o = Orientation::whole_line);
  static VerblunskyDescriptor sparse(std::int64_t base, cdouble value,
                                     Orientation o = Orientation::half_line,
                                     std::int64_t offset = 0);
  static VerblunskyDescriptor lopez(std::int64_t n0, std::int64_t k, double a,
                                    double b, double t, double t0,
                                    Orientation o = Orientation::half_line);
  static VerblunskyDescriptor random(VerblunskyDescriptor base,
                                     ScaleSequence scale, Distribution dist,
                                     std::uint64_t seed);
};

bool operator==(const VerblunskyDescriptor& x, const VerblunskyDescriptor& y);

struct CoefficientWindow {
  std::int64_t center = 0;
  std::int64_t halfwidth = 0;
  std::vector<cdouble> values;  // values[i] = alpha_{center - halfwidth + i}

  cdouble at(std::int64_t n) const {
    auto i = n - (center - halfwidth);
    if (i < 0 || i >= static_cast<std::int64_t>(values.size()))
      throw std::invalid_argument("coefficient window: index out of range");
    return values[static_cast<std::size_t>(i)];
  }
};

cdouble value_at(const VerblunskyDescriptor& desc, std::int64_t n);
CoefficientWindow window(const VerblunskyDescriptor& desc, std::int64_t center,
                         std::int64_t halfwidth);

// Shifted descriptor with value_at(result, n) == value_at(desc, n + m).
// Half-line descriptors require m >= 0.
VerblunskyDescriptor shift(const VerblunskyDescriptor& desc, std::int64_t m);

struct RightLimit {
  VerblunskyDescriptor descriptor;  // whole line
  // Increasing shifts m_j with sup_{|n|<=H} |alpha_{n+m_j} - limit_n| -> 0.
  std::vector<std::int64_t> witness_shifts;
  // True when the limit is determined only up to a constant phase (rotating
  // Lopez phases); the witness shifts then minimise the phase drift instead
  // of annihilating it.
  bool phase_class = false;
};

// Complete set of right limits up to translation, for structured descriptor
// kinds.  Random descriptors are rejected (finite data cannot enumerate their
// limit set).
std::vector<RightLimit> right_limits(const VerblunskyDescriptor& desc);

struct SparseCheckReport {
  std::vector<double> pair_decay;  // max_{N/2<=n<=N} |alpha_n alpha_{n+k}|
  double limsup_estimate = 0.0;    // max_{N/2<=n<=N} |alpha_n|
  double tol = 0.0;
  bool singular_indicated = false;
};

// Decaying pair products with a non-vanishing limsup indicate purely singular
// essential spectrum; both thresholds are checked on the window [N/2, N].
SparseCheckReport sparse_condition_check(const VerblunskyDescriptor& desc,
                                         int kmax, std::int64_t N,
                                         double tol = 1e-3);

// --- Jacobi coefficient descriptors ----------------------------------------

struct JacobiPair {
  double a = 1.0;  // off-diagonal entry to the right of site n
  double b = 0.0;  // diagonal entry at site n
};

inline bool operator==(const JacobiPair& x, const JacobiPair& y) {
  return x.a == y.a && x.b == y.b;
}

struct ConstantJacobi {
  JacobiPair value;
};
struct PeriodicJacobi {
  std::vector<JacobiPair> values;
};
// Half line only: explicit prefix, then the constant tail pair.
struct ExplicitJacobi {
  std::vector<JacobiPair> values;
  JacobiPair tail;
};
// Whole line: background pair plus finitely many deviations.
struct DeviationJacobi {
  JacobiPair background;
  std::map<std::int64_t, JacobiPair> deviations;
};

using JacobiKind =
    std::variant<ConstantJacobi, PeriodicJacobi, ExplicitJacobi, DeviationJacobi>;

struct JacobiDescriptor {
  Orientation orientation = Orientation::whole_line;
  JacobiKind kind = ConstantJacobi{};

  static JacobiDescriptor constant(JacobiPair value,
                                   Orientation o = Orientation::whole_line);
  static JacobiDescriptor periodic(std::vector<JacobiPair> values,
                                   Orientation o = Orientation::whole_line);
  static JacobiDescriptor explicit_list(std::vector<JacobiPair> values,
                                        JacobiPair tail = JacobiPair{});
  static JacobiDescriptor deviation(JacobiPair background,
                                    std::map<std::int64_t, JacobiPair> devs);
};

JacobiPair jacobi_at(const JacobiDescriptor& desc, std::int64_t n);

struct JacobiWindow {
  std::int64_t center = 0;
  std::int64_t halfwidth = 0;
  std::vector<JacobiPair> values;

  JacobiPair at(std::int64_t n) const {
    auto i = n - (center - halfwidth);
    if (i < 0 || i >= static_cast<std::int64_t>(values.size()))
      throw std::invalid_argument("jacobi window: index out of range");
    return values[static_cast<std::size_t>(i)];
  }
};

JacobiWindow jacobi_window(const JacobiDescriptor& desc, std::int64_t center,
                           std::int64_t halfwidth);

}  // namespace opuc
