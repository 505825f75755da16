#pragma once

// Distances and Renyi relative entropies in bits. Quantum inputs are dense
// operators; the classical overloads work directly on weight vectors.

#include <cmath>
#include <span>
#include <vector>

#include "scx/cq_state.hpp"
#include "scx/numkit.hpp"

namespace scx {

struct DivergenceValue {
  double value = 0.0;
  bool finite = true;

  static DivergenceValue of(double v) { return {v, std::isfinite(v)}; }
};

enum class RenyiKind { petz, sandwiched, umegaki };

/// Spectral overlap data of a pair (rho, sigma): the function
/// phi(alpha) = log2 Tr(rho^alpha sigma^{1-alpha}) on the joint support as a
/// sum of exponentials, phi(alpha) = log2 sum_k 2^{alpha s_k + t_k}.
/// phi(0) = log2 Tr(Pi_rho sigma) and phi(1) = log2 Tr(rho Pi_sigma).
class PetzProfile {
 public:
  static PetzProfile quantum(const ComplexMatrix& rho, const ComplexMatrix& sigma, const NumericConfig& cfg = {});
  static PetzProfile classical(std::span<const double> p, std::span<const double> q);
  /// Profile of a direct sum: phi adds in the linear domain.
  static PetzProfile block_sum(std::span<const PetzProfile> blocks);

  double log2_quasi(double alpha) const;
  /// Tr(rho (1 - Pi_sigma)).
  double mass_outside() const { return outside_; }
  double rho_trace() const { return rho_trace_; }
  bool support_contained() const;
  /// Tr rho (log2 rho - log2 sigma), +inf if the support condition fails.
  double relative_entropy() const;
  /// -phi(0); +inf when rho and sigma are orthogonal.
  double d0() const { return -log2_quasi(0.0); }
  std::size_t size() const { return slope_.size(); }

 private:
  std::vector<double> slope_;
  std::vector<double> offset_;
  double outside_ = 0.0;
  double rho_trace_ = 0.0;
};

/// Cached decomposition for log2 Tr((sigma^{(1-a)/2a} rho sigma^{(1-a)/2a})^a)
/// at many alpha.
class SandwichedProfile {
 public:
  static SandwichedProfile quantum(const ComplexMatrix& rho, const ComplexMatrix& sigma, const NumericConfig& cfg = {});
  static SandwichedProfile classical(std::span<const double> p, std::span<const double> q);

  /// +inf for alpha > 1 when supp(rho) is not inside supp(sigma).
  double log2_quasi(double alpha) const;
  bool support_contained() const { return contained_; }

 private:
  bool commuting_ = false;
  PetzProfile petz_;
  ComplexMatrix rho_factor_;  // C with C C^dag = V^dag rho V restricted to supp(sigma)
  RealVector log2_mu_;
  bool contained_ = true;
  double zero_tol_ = 0.0;
};

double gen_trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
double gen_trace_distance(const ClassicalDistribution& p, const ClassicalDistribution& q);

/// Generalized fidelity ||sqrt(rho) sqrt(sigma)||_1 + sqrt((1 - Tr rho)(1 - Tr sigma)).
double fidelity(const DensityOperator& rho, const DensityOperator& sigma, const NumericConfig& cfg = {});
double fidelity(const ClassicalDistribution& p, const ClassicalDistribution& q);
double purified_distance(const DensityOperator& rho, const DensityOperator& sigma, const NumericConfig& cfg = {});
double purified_distance(const ClassicalDistribution& p, const ClassicalDistribution& q);

DivergenceValue relative_entropy(const DensityOperator& rho, const PositiveOperator& sigma, const NumericConfig& cfg = {});
DivergenceValue relative_entropy(const ClassicalDistribution& p, const ClassicalMeasure& q);

/// Petz or sandwiched order-alpha divergence; alpha = 1 is a DomainError.
DivergenceValue renyi_divergence(const DensityOperator& rho, const PositiveOperator& sigma, double alpha, RenyiKind kind,
                                 const NumericConfig& cfg = {});
DivergenceValue renyi_divergence(const ClassicalDistribution& p, const ClassicalMeasure& q, double alpha, RenyiKind kind);

DivergenceValue max_relative_entropy(const DensityOperator& rho, const PositiveOperator& sigma, const NumericConfig& cfg = {});
DivergenceValue max_relative_entropy(const ClassicalDistribution& p, const ClassicalMeasure& q);

/// Per-label profiles of (p_x rho_E^x, rho_E); their block sum is the profile
/// of (rho_XE, 1_X (x) rho_E).
std::vector<PetzProfile> conditional_profiles(const CQState& cq, const NumericConfig& cfg = {});
PetzProfile conditional_profile(const CQState& cq, const NumericConfig& cfg = {});

/// H_alpha(X|E) = -D_alpha(rho_XE || 1_X (x) rho_E); alpha = 1 with umegaki
/// gives H(X|E).
double conditional_entropy(const CQState& cq, double alpha, RenyiKind kind, const NumericConfig& cfg = {});

}  // namespace scx
