#pragma once

#include <string>

#include "opuc/coeffs.hpp"
#include "opuc/moebius.hpp"
#include "opuc/schur.hpp"

namespace opuc {

// Uniform boundary sampling theta_i = 2 pi i / size plus the radius schedule
// used when boundary values are only reachable by radial extrapolation.
struct BoundaryGrid {
  std::int64_t size = 4096;
  std::vector<double> radii;

  // Six radii with halving boundary distance, ending at 1 - 1e-6.
  static BoundaryGrid standard(std::int64_t size = 4096);

  double step() const;
  double theta(std::int64_t i) const;
  void validate() const;  // size >= 64, radii increasing, <= 1 - 1e-8
};

// How a boundary Schur value was obtained.  The first four are exact
// (closed-form root, terminating parameter string, periodic fixed point,
// phase-twisted periodic fixed point); the last is approximate.
enum class BoundaryPath {
  closed_form,
  rational,
  periodic,
  phase_twist,
  extrapolated
};

// Boundary values of f_plus(e^{i theta}, n) or f_minus(e^{i theta}, n) for a
// fixed descriptor and site, evaluated pointwise over a theta grid.  The
// structured paths resolve the parameter tail exactly; descriptors without
// usable structure fall back to Richardson extrapolation along grid.radii.
class BoundaryEvaluator {
 public:
  BoundaryEvaluator(const VerblunskyDescriptor& desc, std::int64_t n,
                    Side side, BoundaryGrid grid);

  cdouble operator()(double theta) const;
  BoundaryPath path() const { return path_; }
  bool exact() const { return path_ != BoundaryPath::extrapolated; }

 private:
  enum class Tail { zero, blaschke, constant, periodic, extrapolate };

  VerblunskyDescriptor desc_;
  std::int64_t n_ = 0;
  Side side_ = Side::plus;
  BoundaryGrid grid_;
  BoundaryPath path_ = BoundaryPath::extrapolated;
  Tail tail_ = Tail::extrapolate;
  std::vector<cdouble> prefix_;  // parameters composed ahead of the tail
  cdouble tail_param_;           // blaschke terminator or constant tail value
  std::vector<cdouble> period_;  // periodic tail parameters
  double twist_phase_ = 0.0;     // value = e^{i s} h(e^{i psi} z)
  double twist_rotation_ = 0.0;  // psi

  void plan();
  cdouble eval_structured(double theta) const;
  cdouble eval_extrapolated(double theta) const;
};

struct SigmaAcEstimate {
  ArcSet arcs;
  BoundaryPath path;
  bool approximate = false;
  std::int64_t grid_size = 0;
  double threshold = 0.0;  // arcs collect cells with |f| < 1 - threshold
};

// Essential-support estimate for the absolutely continuous part: grid cells
// where the boundary Schur function of the measure has modulus < 1.
SigmaAcEstimate sigma_ac_estimate(
    const VerblunskyDescriptor& desc,
    const BoundaryGrid& grid = BoundaryGrid::standard());

struct DefectReport {
  std::vector<double> theta;   // grid points inside the probed arc set
  std::vector<double> defect;  // pointwise defect values
  double median = 0.0;
  double q90 = 0.0;
  double max_defect = 0.0;
  ArcSet below_tol;  // grid cells where the defect stays under tol
  double tol = 0.0;
  bool approximate = false;
};

// Two-sided defect |e^{i theta} f_+ - conj(f_-)| on A: zero exactly where the
// whole-line operator is reflectionless.
DefectReport reflectionless_defect_operator(
    const VerblunskyDescriptor& desc, std::int64_t n, const ArcSet& A,
    const BoundaryGrid& grid = BoundaryGrid::standard());

// Measure-side defect |Im(e^{i theta} f)| for the diagonal Schur function
// f = f_+ f_-: zero exactly where the diagonal measure is reflectionless.
DefectReport reflectionless_defect_measure(
    const VerblunskyDescriptor& desc, std::int64_t n, const ArcSet& A,
    const BoundaryGrid& grid = BoundaryGrid::standard());

struct KhrushchevLabel {
  enum class Kind { finite_order, all_vanish, rejected } kind = Kind::rejected;
  cdouble c;             // first nonzero diagonal moment (finite_order)
  std::int64_t k = 0;    // its order
  std::string spectral_tag;  // "reflectionless", "pure-point", "example-class"
  std::int64_t witness = 0;  // first structure-breaking site when rejected
  std::string note;
  double moment_residual = 0.0;  // worst deviation in the numeric check
};

// Classifies whole-line descriptors whose diagonal spectral measures all
// coincide: equally spaced coefficients of alternating moduli give a finite
// first-moment order, at most one nonzero coefficient gives vanishing
// moments.  Structure is matched on the descriptor kind first; the moment
// pattern is then verified numerically through power_diagonal on the probe
// sites.  Unstructured kinds are rejected, never classified numerically.
KhrushchevLabel khrushchev_classify(const VerblunskyDescriptor& desc,
                                    std::int64_t probe_lo,
                                    std::int64_t probe_hi,
                                    std::int64_t lmax = 6);

// Quadrature gap between the entering and exiting harmonic-measure averages
// over A: integral of omega_{f_+(e^{i theta}, n)}(S) minus integral of
// omega_{e^{i theta} f_-(e^{i theta}, n)}(S*), both over A against
// d theta / 2 pi.  Unimodular arguments reduce the harmonic measure to an
// arc indicator.
double pearson_defect(const VerblunskyDescriptor& desc, std::int64_t n,
                      const ArcSet& A, const ArcSet& S,
                      const BoundaryGrid& grid = BoundaryGrid::standard());

struct DeterminacyReport {
  bool hypothesis_met = false;
  std::string note;
  double defect_a_q90 = 0.0;
  double defect_b_q90 = 0.0;
  double max_alpha_diff = 0.0;  // over sites [0, probe]
  std::int64_t probe = 0;
};

// Falsification harness for two-sided determination: two descriptors both
// reflectionless on A and agreeing at negative sites must agree everywhere.
// Reports the maximal coefficient difference on [0, probe]; when either
// defect check fails the hypothesis flag is lowered and no claim is made.
DeterminacyReport two_sided_determinacy_check(
    const VerblunskyDescriptor& desc_a, const VerblunskyDescriptor& desc_b,
    const ArcSet& A, const BoundaryGrid& grid = BoundaryGrid::standard(),
    std::int64_t probe = 64);

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::vector<double> measures;  // per radius: measure of {|f| < 1 - eps}
  ArcSet final_arcs;             // sub-threshold cells at the deepest radius
};

struct RandomExperimentReport {
  bool hypothesis_met = true;
  std::string note;
  std::vector<double> radii;
  double eps = 0.0;
  std::vector<SeedOutcome> outcomes;
  std::vector<double> ensemble_max;  // per radius, max over seeds
  bool trend_decreasing = false;
};

// Ensemble surrogate for almost-sure absence of absolutely continuous
// spectrum under non-decaying random perturbations: tracks the measure of
// {theta : |f(r e^{i theta})| < 1 - eps} along the radius schedule, per seed.
// Decaying scale sequences void the hypothesis and are only reported.
RandomExperimentReport random_experiment(
    const VerblunskyDescriptor& base, const ScaleSequence& scale,
    Distribution dist, const std::vector<std::uint64_t>& seeds,
    const BoundaryGrid& grid, double eps = 0.1);

}  // namespace opuc
