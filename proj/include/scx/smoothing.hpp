#pragma once

// The smoothing parameter eps(rho || sigma, r): the least generalized trace
// distance from rho to a sub-normalized state below 2^r sigma. Exact for
// commuting pairs, via the Neyman-Pearson witness otherwise.

#include <span>
#include <vector>

#include "scx/divergences.hpp"
#include "scx/hypothesis.hpp"
#include "scx/numkit.hpp"

namespace scx {

struct SmoothingValue {
  double eps = 0.0;
  double log2_one_minus_eps = 0.0;
};

struct ClassicalSmoothing {
  SmoothingValue value;
  std::vector<double> witness;  // min(p_i, 2^r q_i)
};

ClassicalSmoothing eps_opt_classical(const ClassicalDistribution& p, const ClassicalMeasure& q, double r);

/// eps(p^{(x)n} || q^{(x)n}, n r) over type classes; 1 - eps is summed as
/// sum min(p_atom, 2^{nr} q_atom) rather than formed by subtraction.
SmoothingValue eps_opt_classical_iid(const ClassicalDistribution& p, const ClassicalMeasure& q, double r, int n,
                                     const NumericConfig& cfg = {});

class SmoothingWitness {
 public:
  /// Checks lambda_min(2^r sigma - state) >= -tol_psd on construction.
  SmoothingWitness(ComplexMatrix state, double achieved_distance, const ComplexMatrix& sigma, double r,
                   const NumericConfig& cfg = {});

  const ComplexMatrix& state() const { return state_; }
  double achieved_distance() const { return distance_; }
  bool feasible() const { return feasible_; }
  double min_slack_eigenvalue() const { return min_slack_; }

 private:
  ComplexMatrix state_;
  double distance_;
  bool feasible_;
  double min_slack_;
};

/// T_n rho^{(x)n} T_n with T_n the Neyman-Pearson test of rho^{(x)n} against
/// sigma^{(x)n} at threshold 2^{nr}; dense, so n is limited by max_dim.
SmoothingWitness np_smoothing_witness(const DensityOperator& rho, const PositiveOperator& sigma, double r, int n,
                                      const NumericConfig& cfg = {});

/// Distance achieved by the same witness for p^{(x)n}, over type classes.
SmoothingValue np_witness_iid_classical(const ClassicalDistribution& p, const ClassicalMeasure& q, double r, int n,
                                        const NumericConfig& cfg = {});

/// D_max^eps(p || q) by bisection on r to 1e-8. eps >= sum p gives -inf
/// (the empty state is within reach).
DivergenceValue smoothed_dmax_classical(const ClassicalDistribution& p, const ClassicalMeasure& q, double eps);

/// Bracket eps^D <= eps^P <= sqrt(2 eps^D) for the purified-distance smoothing.
struct PurifiedBracket {
  double lower;
  double upper;
};
PurifiedBracket purified_smoothing_bracket(const ClassicalDistribution& p, const ClassicalMeasure& q, double r);

/// sup over alpha in [0,1] of (alpha-1)(r - D_alpha).
ScalarOptimum sc_exponent_optimum(const PetzProfile& prof, double r);
double sc_exponent_lower_bound(const PetzProfile& prof, double r);
double sc_exponent_lower_bound(const DensityOperator& rho, const PositiveOperator& sigma, double r,
                               const NumericConfig& cfg = {});
double sc_exponent_lower_bound(const ClassicalDistribution& p, const ClassicalMeasure& q, double r);

inline constexpr double kLiYaoAlphaMax = 1024.0;

/// sup over alpha in (1, 1024] of ((alpha-1)/2)(r - sandwiched D_alpha),
/// clamped at 0; +inf when the maximizer runs into alpha = 1024.
ScalarOptimum liyao_optimum(const SandwichedProfile& prof, double r);
double dilution_exponent_liyao(const DensityOperator& rho, const PositiveOperator& sigma, double r,
                               const NumericConfig& cfg = {});
double dilution_exponent_liyao(const ClassicalDistribution& p, const ClassicalMeasure& q, double r);

struct EpsPoint {
  int n;
  double eps;
  double log2_one_minus_eps;
};

/// Slope of -log2(1 - eps_n) against n.
ExponentReport exponent_fit(std::span<const EpsPoint> series, FitWindow window);
ExponentReport exponent_fit(std::span<const SeriesPoint> eps_series, FitWindow window);

}  // namespace scx
