#pragma once

#include <vector>

#include "opuc/coeffs.hpp"

namespace opuc {

// Projective linear fractional map w -> (a*w + b) / (c*w + d), composed by
// matrix multiplication.  Entries are defined up to a common scalar.
struct MoebiusMap {
  cdouble a{1.0}, b{0.0}, c{0.0}, d{1.0};

  cdouble apply(cdouble w) const;
  MoebiusMap inverse() const { return {d, -b, -c, a}; }
  // Scales entries to unit max modulus; long products renormalize through
  // this to dodge overflow.
  void renormalize();

  // One-step transfer matrices for the coefficient-stripping recursions:
  // plus maps f(.,n) to f(.,n+1) in the forward direction, minus in the
  // reversed direction.
  static MoebiusMap transfer_plus(cdouble z, cdouble alpha) {
    return {1.0, -alpha, -z * std::conj(alpha), z};
  }
  static MoebiusMap transfer_minus(cdouble z, cdouble alpha) {
    return {z, -std::conj(alpha), -z * alpha, 1.0};
  }
  // Disc automorphism factor S(alpha) and the dilation M(z); the transfer
  // matrices factor as transfer_plus = M(1/z) S(alpha), transfer_minus =
  // S(conj(alpha)) M(z) up to projective scale.
  static MoebiusMap schur_factor(cdouble alpha) {
    return {1.0, -alpha, -std::conj(alpha), 1.0};
  }
  static MoebiusMap dilation(cdouble z) { return {z, 0.0, 0.0, 1.0}; }
};

MoebiusMap operator*(const MoebiusMap& x, const MoebiusMap& y);

// Left-to-right product, renormalized every 8 factors.
MoebiusMap product(const std::vector<MoebiusMap>& factors);

// Entrywise projective comparison: true when x and y agree up to one common
// scalar factor within tol.
bool projectively_equal(const MoebiusMap& x, const MoebiusMap& y, double tol);

// |w1 - w2| / (sqrt(1-|w1|^2) * sqrt(1-|w2|^2)); requires |w1|, |w2| < 1.
double pseudo_dist(cdouble w1, cdouble w2);

// Fixed point of the map with derivative modulus <= 1 (the attracting one);
// prefers a fixed point in the open disc when one exists.
cdouble attracting_fixed_point(const MoebiusMap& m);

// --- Arc sets on the unit circle -------------------------------------------
//
// Finite unions of half-open arcs [lo, hi) in [0, 2*pi), kept sorted,
// disjoint and merged.  Endpoint membership is a measure-zero convention;
// nothing downstream depends on it.
class ArcSet {
 public:
  ArcSet() = default;
  // Accepts arbitrary [lo, hi] pairs; hi < lo wraps through 0, spans of
  // length >= 2*pi collapse to the full circle.
  explicit ArcSet(const std::vector<std::pair<double, double>>& arcs);

  static ArcSet full_circle();

  const std::vector<std::pair<double, double>>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  double measure() const;
  bool contains(double theta) const;
  ArcSet complement() const;
  // Image under theta -> -theta (the set of conjugated boundary points).
  ArcSet star() const;
  ArcSet intersect(const ArcSet& other) const;

 private:
  std::vector<std::pair<double, double>> arcs_;
};

// Harmonic measure omega_z(S) of the arc set seen from |z| < 1, via the disc
// automorphism w -> (w - z)/(1 - conj(z) w): the image arc length over 2*pi.
double harmonic_measure(cdouble z, const ArcSet& s);

}  // namespace opuc
