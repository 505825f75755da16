#include "scx/cq_state.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "scx/errors.hpp"

namespace scx {

namespace {

void check_probs(const std::vector<double>& probs, std::size_t n_cond, const NumericConfig& cfg) {
  if (probs.empty()) throw ValidationError("cq state: empty alphabet");
  if (probs.size() != n_cond) throw ValidationError("cq state: probs and conditionals differ in length");
  double s = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("cq state: probabilities must be finite and non-negative");
    s += p;
  }
  if (std::abs(s - 1.0) > cfg.tol_tr) throw ValidationError("cq state: probabilities sum to " + std::to_string(s));
}

bool is_diagonal(const ComplexMatrix& m, double tol) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (r != c && std::abs(m(r, c)) > tol) return false;
    }
  }
  return true;
}

}  // namespace

CQState CQState::classical(std::vector<double> probs, std::vector<ClassicalDistribution> conditionals,
                           const NumericConfig& cfg) {
  check_probs(probs, conditionals.size(), cfg);
  const std::size_t e = conditionals.front().size();
  for (const auto& c : conditionals) {
    if (c.size() != e) throw ValidationError("cq state: conditionals differ in size");
    if (!c.normalized()) throw ValidationError("cq state: conditionals must be normalized");
  }
  CQState s;
  s.mode_ = CQMode::classical;
  s.e_dim_ = e;
  s.probs_ = std::move(probs);
  s.cls_ = std::move(conditionals);
  return s;
}

CQState CQState::quantum(std::vector<double> probs, std::vector<DensityOperator> conditionals,
                         const NumericConfig& cfg) {
  check_probs(probs, conditionals.size(), cfg);
  const std::size_t e = conditionals.front().dim();
  bool diagonal = true;
  for (const auto& c : conditionals) {
    if (c.dim() != e) throw ValidationError("cq state: conditionals differ in dimension");
    if (!c.normalized()) throw ValidationError("cq state: conditionals must be normalized");
    diagonal = diagonal && is_diagonal(c.matrix(), cfg.tol_herm);
  }
  if (diagonal) {
    std::vector<ClassicalDistribution> cls;
    for (const auto& c : conditionals) {
      std::vector<double> w(e);
      for (std::size_t i = 0; i < e; ++i) w[i] = std::max(0.0, c.matrix()(i, i).real());
      cls.emplace_back(std::move(w), cfg);
    }
    return classical(std::move(probs), std::move(cls), cfg);
  }
  CQState s;
  s.mode_ = CQMode::quantum;
  s.e_dim_ = e;
  s.probs_ = std::move(probs);
  s.qu_ = std::move(conditionals);
  return s;
}

CQState CQState::from_joint(std::size_t x_size, std::size_t e_size, const std::vector<double>& joint,
                            const NumericConfig& cfg) {
  if (x_size == 0 || e_size == 0 || joint.size() != x_size * e_size) throw ValidationError("cq state: joint has wrong size");
  std::vector<double> probs(x_size, 0.0);
  std::vector<ClassicalDistribution> conds;
  for (std::size_t x = 0; x < x_size; ++x) {
    for (std::size_t e = 0; e < e_size; ++e) {
      const double v = joint[x * e_size + e];
      if (!(v >= 0.0)) throw ValidationError("cq state: negative joint weight");
      probs[x] += v;
    }
  }
  for (std::size_t x = 0; x < x_size; ++x) {
    std::vector<double> w(e_size);
    for (std::size_t e = 0; e < e_size; ++e) {
      // Zero-probability labels get an arbitrary conditional; it never carries weight.
      w[e] = probs[x] > 0.0 ? joint[x * e_size + e] / probs[x] : (e == 0 ? 1.0 : 0.0);
    }
    conds.emplace_back(std::move(w), cfg);
  }
  return classical(std::move(probs), std::move(conds), cfg);
}

ComplexMatrix CQState::block(std::size_t x) const {
  if (mode_ == CQMode::classical) return probs_.at(x) * cls_.at(x).as_matrix();
  return probs_.at(x) * qu_.at(x).matrix();
}

std::vector<double> CQState::joint_weights() const {
  if (mode_ != CQMode::classical) throw ValidationError("cq state: joint weights need classical mode");
  std::vector<double> j(probs_.size() * e_dim_);
  for (std::size_t x = 0; x < probs_.size(); ++x) {
    for (std::size_t e = 0; e < e_dim_; ++e) j[x * e_dim_ + e] = probs_[x] * cls_[x][e];
  }
  return j;
}

std::vector<double> CQState::side_marginal_weights() const {
  if (mode_ != CQMode::classical) throw ValidationError("cq state: side marginal weights need classical mode");
  std::vector<double> m(e_dim_, 0.0);
  for (std::size_t x = 0; x < probs_.size(); ++x) {
    for (std::size_t e = 0; e < e_dim_; ++e) m[e] += probs_[x] * cls_[x][e];
  }
  return m;
}

ComplexMatrix CQState::side_marginal() const {
  if (mode_ == CQMode::classical) return diagonal_matrix(side_marginal_weights());
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(e_dim_), static_cast<Eigen::Index>(e_dim_));
  for (std::size_t x = 0; x < probs_.size(); ++x) m += probs_[x] * qu_[x].matrix();
  return m;
}

ComplexMatrix CQState::joint_matrix(const NumericConfig& cfg) const {
  const std::size_t d = probs_.size() * e_dim_;
  if (d > cfg.max_dim) throw ResourceError("cq state: joint dimension " + std::to_string(d) + " exceeds max_dim");
  const auto e = static_cast<Eigen::Index>(e_dim_);
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t x = 0; x < probs_.size(); ++x) {
    m.block(static_cast<Eigen::Index>(x) * e, static_cast<Eigen::Index>(x) * e, e, e) = block(x);
  }
  return m;
}

CQState CQState::tensor_power(int n, const NumericConfig& cfg) const {
  if (n < 1) throw ValidationError("cq state: tensor power needs n >= 1");
  if (mode_ == CQMode::classical) {
    const std::vector<double> j1 = joint_weights();
    const std::size_t xs = probs_.size(), es = e_dim_;
    std::vector<double> joint = j1;
    std::size_t cx = xs, ce = es;
    for (int k = 1; k < n; ++k) {
      const double atoms = static_cast<double>(cx) * xs * ce * es;
      if (atoms > static_cast<double>(cfg.max_dim) * cfg.max_dim) {
        throw ResourceError("cq state: tensor power has too many atoms");
      }
      std::vector<double> next(cx * xs * ce * es);
      for (std::size_t x = 0; x < cx; ++x) {
        for (std::size_t x2 = 0; x2 < xs; ++x2) {
          for (std::size_t e = 0; e < ce; ++e) {
            for (std::size_t e2 = 0; e2 < es; ++e2) {
              next[(x * xs + x2) * (ce * es) + e * es + e2] = joint[x * ce + e] * j1[x2 * es + e2];
            }
          }
        }
      }
      joint = std::move(next);
      cx *= xs;
      ce *= es;
    }
    return from_joint(cx, ce, joint, cfg);
  }
  std::vector<double> probs = probs_;
  std::vector<ComplexMatrix> conds;
  for (const auto& c : qu_) conds.push_back(c.matrix());
  for (int k = 1; k < n; ++k) {
    std::vector<double> np;
    std::vector<ComplexMatrix> nc;
    for (std::size_t x = 0; x < probs.size(); ++x) {
      for (std::size_t x2 = 0; x2 < probs_.size(); ++x2) {
        np.push_back(probs[x] * probs_[x2]);
        nc.push_back(kron(conds[x], qu_[x2].matrix(), cfg));
      }
    }
    probs = std::move(np);
    conds = std::move(nc);
  }
  std::vector<DensityOperator> dens;
  for (const auto& c : conds) dens.emplace_back(c, cfg);
  return quantum(std::move(probs), std::move(dens), cfg);
}

}  // namespace scx
