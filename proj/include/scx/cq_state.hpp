#pragma once

// Classical-quantum states sum_x p_x |x><x| (x) rho_E^x.

#include <cstddef>
#include <vector>

#include "scx/numkit.hpp"

namespace scx {

enum class CQMode { classical, quantum };

class CQState {
 public:
  /// Conditionals are distributions over a common side alphabet E.
  static CQState classical(std::vector<double> probs, std::vector<ClassicalDistribution> conditionals,
                           const NumericConfig& cfg = {});
  /// Falls back to classical mode when every conditional is diagonal.
  static CQState quantum(std::vector<double> probs, std::vector<DensityOperator> conditionals,
                         const NumericConfig& cfg = {});
  /// Joint weights indexed x * |E| + e.
  static CQState from_joint(std::size_t x_size, std::size_t e_size, const std::vector<double>& joint,
                            const NumericConfig& cfg = {});

  CQMode mode() const { return mode_; }
  std::size_t x_size() const { return probs_.size(); }
  std::size_t e_dim() const { return e_dim_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<ClassicalDistribution>& classical_conditionals() const { return cls_; }
  const std::vector<DensityOperator>& quantum_conditionals() const { return qu_; }

  /// Sub-normalized block p_x rho_E^x.
  ComplexMatrix block(std::size_t x) const;
  std::vector<double> joint_weights() const;
  std::vector<double> side_marginal_weights() const;
  ComplexMatrix side_marginal() const;
  /// rho_XE as a (|X| |E|)-dimensional matrix, X the outer factor.
  ComplexMatrix joint_matrix(const NumericConfig& cfg = {}) const;

  /// rho_XE^{(x)n}, X^n and E^n in lexicographic order with copy 1 outermost.
  CQState tensor_power(int n, const NumericConfig& cfg = {}) const;

 private:
  CQState() = default;

  CQMode mode_ = CQMode::classical;
  std::size_t e_dim_ = 0;
  std::vector<double> probs_;
  std::vector<ClassicalDistribution> cls_;
  std::vector<DensityOperator> qu_;
};

}  // namespace scx
