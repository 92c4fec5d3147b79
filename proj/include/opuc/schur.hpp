#pragma once

#include <optional>

#include "opuc/coeffs.hpp"

namespace opuc {

// Depth selection for truncated Schur-algorithm evaluation.  fixed < 0 means
// tolerance driven: the smallest N with |z|^N <= tol, capped at max_depth
// (truncation error is bounded by 2|z|^N).
struct DepthPolicy {
  std::int64_t fixed = -1;
  double tol = 1e-12;
  std::int64_t max_depth = 100000;
};

struct TailInfo {
  enum class Kind { none, zero, blaschke } kind = Kind::none;
  std::int64_t index = 0;  // params are zero / terminated from this index on
};

// A Schur-parameter sequence gamma_0, gamma_1, ... together with what is
// known about its tail.  Evaluation from a zero or Blaschke tail is exact;
// an unknown tail is truncated to zero.
class SchurSequence {
 public:
  // gamma_j = alpha_{n+j}
  static SchurSequence plus_tail(const VerblunskyDescriptor& desc,
                                 std::int64_t n);
  // gamma_j = -conj(alpha_{n-1-j}); half-line descriptors terminate with the
  // unimodular parameter 1 coming from alpha_{-1} = -1.
  static SchurSequence minus_tail(const VerblunskyDescriptor& desc,
                                  std::int64_t n);
  // Finite list, zero-extended; with a terminator (modulus 1) the sequence
  // is a finite Blaschke parameter string.
  static SchurSequence from_list(std::vector<cdouble> params,
                                 std::optional<cdouble> terminator = {});

  cdouble param(std::int64_t j) const;
  TailInfo tail() const { return tail_; }

 private:
  enum class Source { descriptor_plus, descriptor_minus, list };
  Source source_ = Source::list;
  VerblunskyDescriptor desc_;
  std::int64_t base_ = 0;
  std::vector<cdouble> list_;
  std::optional<cdouble> terminator_;
  TailInfo tail_;
};

struct SchurValue {
  cdouble value;
  bool exact = false;      // finite tail reached, no truncation error
  std::int64_t depth = 0;  // composition steps performed
};

// Bottom-up evaluation of the Schur function with parameters `seq` at z,
// |z| <= 1.  Boundary points require a terminating (rational) tail.
SchurValue schur_eval(const SchurSequence& seq, cdouble z,
                      const DepthPolicy& policy = {});

// f(z; alpha_n, alpha_{n+1}, ...)
SchurValue f_plus(const VerblunskyDescriptor& desc, std::int64_t n, cdouble z,
                  const DepthPolicy& policy = {});
// f(z; -conj(alpha_{n-1}), -conj(alpha_{n-2}), ...)
SchurValue f_minus(const VerblunskyDescriptor& desc, std::int64_t n, cdouble z,
                   const DepthPolicy& policy = {});
// Schur function of the spectral measure of the whole-line operator and
// delta_n: the product f_plus * f_minus.
SchurValue diag_schur(const VerblunskyDescriptor& desc, std::int64_t n,
                      cdouble z, const DepthPolicy& policy = {});

// F(z) = (1 + z f) / (1 - z f); Re F >= 0 on the disc for Schur-class f.
cdouble caratheodory(cdouble z, cdouble f);

// Schur function of the constant coefficient sequence alpha_n = a: the root
// of conj(a) z f^2 + (1 - z) f - a = 0 in the closed disc.  Works on |z| <= 1;
// on the essential-support arc the modulus-< 1 root is taken, on the
// complementary arcs the unimodular root reached as the radial limit.
cdouble constant_alpha_closed_form(cdouble a, cdouble z);

// Arc (2 asin|a|, 2 pi - 2 asin|a|) on which the constant-coefficient
// boundary Schur function has modulus < 1.
std::pair<double, double> constant_alpha_band(cdouble a);

// Runs the Schur algorithm on Taylor coefficients c_0..c_{L-1} of f and
// returns the parameters gamma_0..gamma_{L-1}.  Stops early at a unimodular
// parameter (Blaschke termination); rejects |gamma| > 1.
std::vector<cdouble> schur_params_from_taylor(const std::vector<cdouble>& c);

}  // namespace opuc
