#pragma once

#include <optional>
#include <string>

#include "opuc/coeffs.hpp"

namespace opuc {

// Banded matrix slice over rows [lo, hi], entries within |i - j| <= bandwidth.
// `margin` is the validity bookkeeping: rows within margin of either edge may
// differ from the corresponding rows of the infinite operator; rows further
// inside agree exactly.
template <class Scalar>
struct BandedWindow {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::int64_t bandwidth = 0;
  std::int64_t margin = 0;
  std::vector<Scalar> data;  // row-major, (2*bandwidth + 1) offsets per row

  std::int64_t rows() const { return hi - lo + 1; }

  Scalar at(std::int64_t i, std::int64_t j) const {
    if (i < lo || i > hi || j < i - bandwidth || j > i + bandwidth)
      return Scalar{};
    return data[static_cast<std::size_t>((i - lo) * (2 * bandwidth + 1) +
                                         (j - i + bandwidth))];
  }
  Scalar& ref(std::int64_t i, std::int64_t j) {
    if (i < lo || i > hi || j < i - bandwidth || j > i + bandwidth)
      throw std::invalid_argument("banded window: entry outside band");
    return data[static_cast<std::size_t>((i - lo) * (2 * bandwidth + 1) +
                                         (j - i + bandwidth))];
  }

  bool row_valid(std::int64_t i) const {
    return i - lo >= margin && hi - i >= margin;
  }

  // Dense dump of rows/columns [r0, r1]; out-of-band entries are zero.
  std::vector<Scalar> to_dense(std::int64_t r0, std::int64_t r1) const {
    auto n = static_cast<std::size_t>(r1 - r0 + 1);
    std::vector<Scalar> dense(n * n, Scalar{});
    for (std::int64_t i = std::max(r0, lo); i <= std::min(r1, hi); ++i)
      for (std::int64_t j = std::max(r0, i - bandwidth);
           j <= std::min(r1, i + bandwidth); ++j)
        dense[static_cast<std::size_t>(i - r0) * n +
              static_cast<std::size_t>(j - r0)] = at(i, j);
    return dense;
  }
};

template <class Scalar>
BandedWindow<Scalar> make_banded(std::int64_t lo, std::int64_t hi,
                                 std::int64_t bandwidth,
                                 std::int64_t margin = 0) {
  if (hi < lo) throw std::invalid_argument("banded window: empty row range");
  BandedWindow<Scalar> w;
  w.lo = lo;
  w.hi = hi;
  w.bandwidth = bandwidth;
  w.margin = margin;
  w.data.assign(
      static_cast<std::size_t>((hi - lo + 1) * (2 * bandwidth + 1)), Scalar{});
  return w;
}

// Banded product restricted to rows where every needed row of b exists.  Row i
// of AB reads row i of A and rows i +- bandwidth(A) of B, so it is exact when
// all of those are; the output margin records the distance from the (trimmed)
// output range to that exact interval.
template <class Scalar>
BandedWindow<Scalar> banded_product(const BandedWindow<Scalar>& a,
                                    const BandedWindow<Scalar>& b) {
  std::int64_t lo = std::max(a.lo, b.lo + a.bandwidth);
  std::int64_t hi = std::min(a.hi, b.hi - a.bandwidth);
  if (hi < lo) throw std::invalid_argument("banded product: empty result range");
  std::int64_t valid_lo =
      std::max(a.lo + a.margin, b.lo + b.margin + a.bandwidth);
  std::int64_t valid_hi =
      std::min(a.hi - a.margin, b.hi - b.margin - a.bandwidth);
  std::int64_t margin =
      std::max<std::int64_t>({valid_lo - lo, hi - valid_hi, 0});
  auto out = make_banded<Scalar>(lo, hi, a.bandwidth + b.bandwidth, margin);
  for (std::int64_t i = lo; i <= hi; ++i)
    for (std::int64_t j = i - out.bandwidth; j <= i + out.bandwidth; ++j) {
      Scalar acc{};
      for (std::int64_t k = std::max(i - a.bandwidth, j - b.bandwidth);
           k <= std::min(i + a.bandwidth, j + b.bandwidth); ++k)
        acc += a.at(i, k) * b.at(k, j);
      out.ref(i, j) = acc;
    }
  return out;
}

using CmvWindow = BandedWindow<cdouble>;

// 2x2 unitary factor of the LM factorization:
//   [ conj(alpha)  rho ]
//   [ rho         -alpha ],  rho = sqrt(1 - |alpha|^2).
struct ThetaBlock {
  cdouble alpha;
  double rho;

  static ThetaBlock from_alpha(cdouble alpha);
};

// L carries theta blocks at rows (2k, 2k+1), M at rows (2k-1, 2k); both are
// built over rows [center - halfwidth - 1, center + halfwidth + 1] so their
// product covers the requested window exactly.  Half-line descriptors embed
// via alpha_{-1} = -1 (rho_{-1} = 0 decouples the negative axis).
std::pair<CmvWindow, CmvWindow> lm_factor(const VerblunskyDescriptor& desc,
                                          std::int64_t center,
                                          std::int64_t halfwidth);

// Rows [center - halfwidth, center + halfwidth] of the five-diagonal unitary
// E = L * M; diagonal entries are -conj(alpha_n) alpha_{n-1}.
CmvWindow build_whole_cmv(const VerblunskyDescriptor& desc, std::int64_t center,
                          std::int64_t halfwidth);

// Top-left N x N corner of the half-line matrix.  With a terminator the
// coefficient alpha_{N-1} is replaced by the given unimodular value, making
// the corner exactly unitary.
CmvWindow build_half_cmv(const VerblunskyDescriptor& desc, std::int64_t N,
                         std::optional<cdouble> terminator = {});

// Diagonal resolvent-free moment: integral of e^{i l theta} against the
// spectral measure of E and delta_n, computed as [E^l]_{nn} on a window of
// halfwidth 2l + 4.
cdouble power_diagonal(const VerblunskyDescriptor& desc, std::int64_t n,
                       std::int64_t l);

struct XYSplit {
  CmvWindow x_minus;  // diagonal part of L
  CmvWindow y_minus;  // off-diagonal part of L
  CmvWindow x_plus;   // diagonal part of M
  CmvWindow y_plus;   // off-diagonal part of M
};

XYSplit xy_split(const VerblunskyDescriptor& desc, std::int64_t center,
                 std::int64_t halfwidth);

// Row-major CSV dump ("re+imj" cells) of the dense block [r0, r1]^2.
std::string dense_csv(const CmvWindow& w, std::int64_t r0, std::int64_t r1);

}  // namespace opuc
