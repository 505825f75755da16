#pragma once

// Binary hypothesis testing: Neyman-Pearson tests, their errors, the Hoeffding
// bound and the critical rate, plus the shared 1-D maximizer and slope fit.

#include <functional>
#include <span>
#include <vector>

#include "scx/divergences.hpp"
#include "scx/numkit.hpp"

namespace scx {

/// Errors of the test T: type1 = Tr((1-T) rho), type2 = Tr(T sigma). The
/// complement masses Tr(T rho) and Tr((1-T) sigma) are summed separately so
/// they keep full relative precision when the errors approach 1.
struct ErrorPair {
  double type1 = 0.0;
  double type2 = 0.0;
  double log2_type1 = 0.0;
  double log2_type2 = 0.0;
  double log2_one_minus_type1 = 0.0;  // log2 Tr(T rho)
  double log2_one_minus_type2 = 0.0;  // log2 Tr((1-T) sigma)
};

struct SeriesPoint {
  int n;
  double value;
};

struct FitWindow {
  int n_min;
  int n_max;
};

struct ExponentReport {
  std::vector<SeriesPoint> series;
  double fitted_slope = 0.0;
  double intercept = 0.0;
  FitWindow window{0, 0};
  double residual = 0.0;  // RMS deviation from the fitted line
};

/// Least-squares slope of value against n over the points inside the window.
ExponentReport fit_slope(std::vector<SeriesPoint> series, FitWindow window);

struct ScalarOptimum {
  double value;
  double alpha;
};

/// Golden-section search for the maximum of f on [lo, hi].
ScalarOptimum golden_section_max(const std::function<double(double)>& f, double lo, double hi, int iterations = 200);

/// Maximum of f over [0, 1]: a 65-point scan of [1e-6, 1 - 1e-6] brackets the
/// peak, golden-section refines it, and the exact endpoint values f0, f1 are
/// compared last.
ScalarOptimum maximize_unit_interval(const std::function<double(double)>& f, double f0, double f1);

Projector neyman_pearson_projector(const DensityOperator& rho, const PositiveOperator& sigma, double r,
                                   const NumericConfig& cfg = {});
/// Indicator of {i : p_i <= 2^r q_i}.
std::vector<bool> neyman_pearson_mask(const ClassicalMeasure& p, const ClassicalMeasure& q, double r);

ErrorPair np_errors(const DensityOperator& rho, const PositiveOperator& sigma, double r, const NumericConfig& cfg = {});
ErrorPair np_errors(const ClassicalMeasure& p, const ClassicalMeasure& q, double r);
/// Errors of the test for p^{(x)n} against q^{(x)n} at threshold 2^{nr}.
ErrorPair np_errors_iid_classical(const ClassicalMeasure& p, const ClassicalMeasure& q, double r, int n,
                                  const NumericConfig& cfg = {});

/// sup over alpha in [0,1] of ((alpha-1)/alpha)(s - D_alpha); +inf when D_0 > s.
ScalarOptimum hoeffding_optimum(const PetzProfile& prof, double s);
double hoeffding_bound(const PetzProfile& prof, double s);
double hoeffding_bound(const DensityOperator& rho, const PositiveOperator& sigma, double s, const NumericConfig& cfg = {});
double hoeffding_bound(const ClassicalDistribution& p, const ClassicalMeasure& q, double s);

/// s_r = sup over alpha in [0,1] of (alpha r - (alpha-1) D_alpha). Verifies
/// B(s_r) = s_r - r when the maximizer is away from alpha = 0.
ScalarOptimum critical_rate_optimum(const PetzProfile& prof, double r);
double critical_rate(const PetzProfile& prof, double r);
double critical_rate(const DensityOperator& rho, const PositiveOperator& sigma, double r, const NumericConfig& cfg = {});
double critical_rate(const ClassicalDistribution& p, const ClassicalMeasure& q, double r);

}  // namespace scx
