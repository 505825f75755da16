#pragma once

// Dense Hermitian spectral calculus and the operator/distribution value types
// shared by every other module.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace scx {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerances and resource budgets. The defaults are the double-precision
/// spectral error scale; every field may be overridden per call.
struct NumericConfig {
  double tol_herm = 1e-9;
  double tol_psd = 1e-9;
  double tol_orth = 1e-9;
  double tol_tr = 1e-8;
  double tol_sum = 1e-8;
  /// Eigenvalues with |lambda| <= tol_zero_rel * max_ij |H_ij| count as zero.
  double tol_zero_rel = 1e-9;
  std::size_t max_dim = 4096;
  double max_classes = 3e7;

  /// Defaults, with max_classes taken from SCX_MAX_CLASSES when set.
  static NumericConfig from_environment();
};

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);
double zero_threshold(const ComplexMatrix& h, const NumericConfig& cfg);
ComplexMatrix diagonal_matrix(std::span<const double> weights);

/// Positive semi-definite operator (sigma in D(rho||sigma)); no trace bound.
class PositiveOperator {
 public:
  explicit PositiveOperator(const ComplexMatrix& m, const NumericConfig& cfg = {});
  static PositiveOperator diagonal(std::span<const double> weights, const NumericConfig& cfg = {});

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  double trace() const { return m_.trace().real(); }

 protected:
  struct Unchecked {};
  PositiveOperator(Unchecked, ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

/// Sub-normalized state: PSD with trace in (0, 1 + tol_tr].
class DensityOperator : public PositiveOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& m, const NumericConfig& cfg = {});
  static DensityOperator diagonal(std::span<const double> weights, const NumericConfig& cfg = {});
  static DensityOperator pure(const ComplexVector& psi, const NumericConfig& cfg = {});

  bool normalized() const { return normalized_; }

 private:
  bool normalized_ = false;
};

/// Non-negative weights on a finite alphabet; the commuting counterpart of
/// PositiveOperator.
class ClassicalMeasure {
 public:
  explicit ClassicalMeasure(std::vector<double> weights);

  const std::vector<double>& weights() const { return w_; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  double total() const;
  ComplexMatrix as_matrix() const { return diagonal_matrix(w_); }

 protected:
  std::vector<double> w_;
};

/// Sub-normalized probability vector; the commuting counterpart of
/// DensityOperator.
class ClassicalDistribution : public ClassicalMeasure {
 public:
  explicit ClassicalDistribution(std::vector<double> weights, const NumericConfig& cfg = {});
  static ClassicalDistribution uniform(std::size_t d);

  bool normalized() const { return normalized_; }
  DensityOperator as_density() const;

 private:
  bool normalized_ = false;
};

/// Column-orthonormal basis of a subspace; also the representation of an
/// orthogonal projector (the projector onto the span of the basis).
class Subspace {
 public:
  Subspace(std::size_t ambient_dim, ComplexMatrix basis);
  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return static_cast<std::size_t>(basis_.cols()); }
  const ComplexMatrix& basis() const { return basis_; }
  ComplexMatrix projector() const;
  /// Tr(P M) for the projector P of this subspace.
  Complex trace_with(const ComplexMatrix& m) const;

 private:
  std::size_t ambient_;
  ComplexMatrix basis_;
};

using Projector = Subspace;

struct SpectralDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, orthonormal
};

SpectralDecomposition spectral_decompose(const ComplexMatrix& h, const NumericConfig& cfg = {});

/// Projector onto eigenvectors with eigenvalue >= -tol_zero (ties at zero are
/// included).
Projector nonneg_part_projector(const ComplexMatrix& h, const NumericConfig& cfg = {});

/// Projector onto eigenvectors with eigenvalue > tol_zero (ties excluded).
Projector positive_part_projector(const ComplexMatrix& h, const NumericConfig& cfg = {});

/// Projector onto eigenvectors with eigenvalue > tol_zero of a PSD matrix.
Projector support_projector(const ComplexMatrix& psd, const NumericConfig& cfg = {});

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const NumericConfig& cfg = {});
ComplexMatrix kron_power(const ComplexMatrix& a, int n, const NumericConfig& cfg = {});

/// Partial trace over every tensor factor not listed in `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Orthonormal basis of {v : P v = v, S v = 0}: the near-zero eigenspace of
/// (I - P) + P_supp(S).
Subspace subspace_meet_kernel(const Projector& p, const ComplexMatrix& s, const NumericConfig& cfg = {});

/// A^t for PSD A, evaluated on supp(A) after clipping eigenvalues at
/// tol_zero. Negative t gives the pseudo-inverse power.
ComplexMatrix psd_power(const ComplexMatrix& a, double t, const NumericConfig& cfg = {});

/// ||H||_1 for Hermitian H.
double trace_norm(const ComplexMatrix& h);

}  // namespace scx
