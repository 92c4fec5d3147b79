#pragma once

#include "opuc/coeffs.hpp"

namespace opuc {

struct SzegoPair {
  cdouble phi;       // monic Phi_n(z)
  cdouble phi_star;  // reversed polynomial Phi*_n(z)
  std::int64_t n = 0;
  double rho_product = 1.0;  // prod_{j<n} rho_j; phi/rho_product is orthonormal
};

// Joint recursion Phi_{k+1} = z Phi_k - conj(alpha_k) Phi*_k,
// Phi*_{k+1} = Phi*_k - alpha_k z Phi_k, seeded Phi_0 = Phi*_0 = 1.
SzegoPair szego_eval(const VerblunskyDescriptor& desc, std::int64_t n,
                     cdouble z);

struct RatioTrace {
  std::vector<cdouble> ratios;  // Phi*_{k+1}/Phi*_k, k = 0..N-1
  cdouble limit;                // tail representative (last ratio)
  double deviation;             // max |ratio - limit| over the last quarter
  bool converged = false;       // deviation < tol
};

// Consecutive reversed-polynomial ratios at fixed |z| < 1.  Computed through
// the bounded quantity r_k = Phi_k/Phi*_k, so the trace stays stable at
// degrees where the raw polynomials overflow.  Convergence is a Cauchy-tail
// surrogate: max deviation from the final ratio over the last quarter.
RatioTrace ratio_trace(const VerblunskyDescriptor& desc, cdouble z,
                       std::int64_t N, double tol = 1e-6);

// Rotating-phase sequence beta_n with |beta_n| = sqrt|c| and
// conj(beta_{n+1}) beta_n = -c for all n: the coefficient realization of the
// constant-modulus subclass with first nonzero moment c at order 1.
VerblunskyDescriptor ktilde_descriptor(cdouble c, Orientation orientation);

struct TwoPointRecovery {
  cdouble consecutive_product;  // q = beta_{n+1} conj(beta_n)
  double modulus;               // |beta_n|
  cdouble moment;               // c = -conj(q)
};

// Recovers the right-limit data from ratio limits g(z) = (1 - G(z))/z at two
// points.  Each point satisfies 1/z - g = beta_{n+1}/beta_n - q/(z g);
// subtracting the two evaluations cancels the beta ratio and leaves
//   q = (1/z1 - g1 - 1/z2 + g2) / (1/(z2 g2) - 1/(z1 g1)),
//   |beta|^2 = z1 g1 q / (g1 (1 - z1 g1) + q).
TwoPointRecovery ratio_two_point(cdouble z1, cdouble g1, cdouble z2,
                                 cdouble g2);

}  // namespace opuc
