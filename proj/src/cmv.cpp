#include "opuc/cmv.hpp"

#include <cmath>
#include <utility>

#include "opuc/format.hpp"

namespace opuc {

namespace {

// Half-line sequences embed into the whole line with alpha_n = -1 for all
// n < 0; every negative rho vanishes, so the nonnegative axis decouples.
cdouble embedded_alpha(const VerblunskyDescriptor& desc, std::int64_t n) {
  if (desc.orientation == Orientation::half_line && n < 0)
    return cdouble(-1.0, 0.0);
  return value_at(desc, n);
}

// Theta blocks occupy rows (r, r + 1) for r of the given parity, carrying
// alpha_r; blocks straddling the window edge are filled partially.
template <class AlphaFn>
void fill_blocks(CmvWindow& w, const AlphaFn& alpha, std::int64_t parity) {
  std::int64_t r = w.lo - 1;
  if (((r % 2) + 2) % 2 != parity) ++r;
  for (; r <= w.hi; r += 2) {
    ThetaBlock tb = ThetaBlock::from_alpha(alpha(r));
    if (r >= w.lo) {
      w.ref(r, r) = std::conj(tb.alpha);
      w.ref(r, r + 1) = tb.rho;
    }
    if (r + 1 <= w.hi) {
      w.ref(r + 1, r) = tb.rho;
      w.ref(r + 1, r + 1) = -tb.alpha;
    }
  }
}

template <class AlphaFn>
std::pair<CmvWindow, CmvWindow> lm_windows(const AlphaFn& alpha,
                                           std::int64_t lo, std::int64_t hi) {
  auto L = make_banded<cdouble>(lo, hi, 1);
  auto M = make_banded<cdouble>(lo, hi, 1);
  fill_blocks(L, alpha, 0);
  fill_blocks(M, alpha, 1);
  return {std::move(L), std::move(M)};
}

}  // namespace

ThetaBlock ThetaBlock::from_alpha(cdouble alpha) {
  double a2 = std::norm(alpha);
  if (a2 > 1.0 + 1e-12)
    throw std::invalid_argument("theta block: |alpha| > 1");
  ThetaBlock tb;
  tb.alpha = alpha;
  tb.rho = std::sqrt(std::max(0.0, 1.0 - a2));
  return tb;
}

std::pair<CmvWindow, CmvWindow> lm_factor(const VerblunskyDescriptor& desc,
                                          std::int64_t center,
                                          std::int64_t halfwidth) {
  if (halfwidth < 0)
    throw std::invalid_argument("lm_factor: negative halfwidth");
  auto alpha = [&desc](std::int64_t n) { return embedded_alpha(desc, n); };
  return lm_windows(alpha, center - halfwidth - 1, center + halfwidth + 1);
}

CmvWindow build_whole_cmv(const VerblunskyDescriptor& desc, std::int64_t center,
                          std::int64_t halfwidth) {
  auto [L, M] = lm_factor(desc, center, halfwidth);
  return banded_product(L, M);
}

CmvWindow build_half_cmv(const VerblunskyDescriptor& desc, std::int64_t N,
                         std::optional<cdouble> terminator) {
  if (desc.orientation != Orientation::half_line)
    throw std::invalid_argument("build_half_cmv: half-line descriptor required");
  if (N < 1) throw std::invalid_argument("build_half_cmv: N must be positive");
  if (terminator && std::abs(std::abs(*terminator) - 1.0) > 1e-12)
    throw std::invalid_argument("build_half_cmv: terminator must be unimodular");
  auto alpha = [&desc, N, &terminator](std::int64_t n) {
    if (terminator && n == N - 1) return *terminator;
    return embedded_alpha(desc, n);
  };
  auto [L, M] = lm_windows(alpha, -2, N + 1);
  CmvWindow full = banded_product(L, M);
  auto corner = make_banded<cdouble>(0, N - 1, 2);
  for (std::int64_t i = 0; i < N; ++i)
    for (std::int64_t j = std::max<std::int64_t>(0, i - 2);
         j <= std::min<std::int64_t>(N - 1, i + 2); ++j)
      corner.ref(i, j) = full.at(i, j);
  return corner;
}

cdouble power_diagonal(const VerblunskyDescriptor& desc, std::int64_t n,
                       std::int64_t l) {
  if (l < 0) throw std::invalid_argument("power_diagonal: negative power");
  if (desc.orientation == Orientation::half_line && n < 0)
    throw std::invalid_argument("power_diagonal: n < 0 on the half line");
  if (l == 0) return cdouble(1.0, 0.0);
  CmvWindow base = build_whole_cmv(desc, n, 2 * l + 4);
  CmvWindow acc = base;
  for (std::int64_t j = 1; j < l; ++j) acc = banded_product(acc, base);
  if (!acc.row_valid(n))
    throw std::logic_error("power_diagonal: window too small");
  return acc.at(n, n);
}

XYSplit xy_split(const VerblunskyDescriptor& desc, std::int64_t center,
                 std::int64_t halfwidth) {
  auto [L, M] = lm_factor(desc, center, halfwidth);
  XYSplit s;
  s.x_minus = make_banded<cdouble>(L.lo, L.hi, 0);
  s.y_minus = make_banded<cdouble>(L.lo, L.hi, 1);
  s.x_plus = make_banded<cdouble>(M.lo, M.hi, 0);
  s.y_plus = make_banded<cdouble>(M.lo, M.hi, 1);
  for (std::int64_t i = L.lo; i <= L.hi; ++i) {
    s.x_minus.ref(i, i) = L.at(i, i);
    s.y_minus.ref(i, i - 1) = L.at(i, i - 1);
    s.y_minus.ref(i, i + 1) = L.at(i, i + 1);
    s.x_plus.ref(i, i) = M.at(i, i);
    s.y_plus.ref(i, i - 1) = M.at(i, i - 1);
    s.y_plus.ref(i, i + 1) = M.at(i, i + 1);
  }
  return s;
}

std::string dense_csv(const CmvWindow& w, std::int64_t r0, std::int64_t r1) {
  if (r1 < r0) throw std::invalid_argument("dense_csv: empty range");
  auto dense = w.to_dense(r0, r1);
  auto n = static_cast<std::size_t>(r1 - r0 + 1);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ',';
      out += format_complex(dense[i * n + j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace opuc
