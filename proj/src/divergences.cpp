#include "scx/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scx/errors.hpp"
#include "scx/type_classes.hpp"

namespace scx {

namespace {

// Relative size below which Tr(rho (1 - Pi_sigma)) counts as numerical noise.
constexpr double kSupportTol = 1e-9;
// Eigenvalues of the sandwiched operator below this fraction of the largest
// are rounding noise.

struct Support {
  std::vector<Eigen::Index> idx;
  std::vector<double> log2_values;
};

Support support_of(const SpectralDecomposition& sd, double tz) {
  Support s;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    if (sd.eigenvalues(i) > tz) {
      s.idx.push_back(i);
      s.log2_values.push_back(std::log2(sd.eigenvalues(i)));
    }
  }
  return s;
}

void check_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) throw DomainError("Renyi order must be positive and finite");
  if (alpha == 1.0) throw DomainError("Renyi order 1: use relative_entropy");
}

DivergenceValue from_quasi(double log2_q, double alpha) {
  if (log2_q == kPosInf) return {kPosInf, false};
  if (log2_q == kNegInf) return alpha < 1.0 ? DivergenceValue{kPosInf, false} : DivergenceValue{kNegInf, false};
  return DivergenceValue::of(log2_q / (alpha - 1.0));
}

}  // namespace

PetzProfile PetzProfile::quantum(const ComplexMatrix& rho, const ComplexMatrix& sigma, const NumericConfig& cfg) {
  if (rho.rows() != sigma.rows()) throw ValidationError("divergence: dimension mismatch");
  const SpectralDecomposition sr = spectral_decompose(rho, cfg);
  const SpectralDecomposition ss = spectral_decompose(sigma, cfg);
  const Support rs = support_of(sr, zero_threshold(rho, cfg));
  const double tzs = zero_threshold(sigma, cfg);
  const ComplexMatrix ov = sr.eigenvectors.adjoint() * ss.eigenvectors;
  PetzProfile p;
  for (std::size_t a = 0; a < rs.idx.size(); ++a) {
    const Eigen::Index i = rs.idx[a];
    const double lam = sr.eigenvalues(i);
    p.rho_trace_ += lam;
    for (Eigen::Index j = 0; j < ss.eigenvalues.size(); ++j) {
      const double w = std::norm(ov(i, j));
      if (ss.eigenvalues(j) > tzs) {
        if (w > 0.0) {
          const double lmu = std::log2(ss.eigenvalues(j));
          p.slope_.push_back(rs.log2_values[a] - lmu);
          p.offset_.push_back(lmu + std::log2(w));
        }
      } else {
        p.outside_ += lam * w;
      }
    }
  }
  return p;
}

PetzProfile PetzProfile::classical(std::span<const double> pw, std::span<const double> qw) {
  if (pw.size() != qw.size()) throw ValidationError("divergence: alphabet sizes differ");
  PetzProfile p;
  for (std::size_t i = 0; i < pw.size(); ++i) {
    if (pw[i] <= 0.0) continue;
    p.rho_trace_ += pw[i];
    if (qw[i] > 0.0) {
      const double lq = std::log2(qw[i]);
      p.slope_.push_back(std::log2(pw[i]) - lq);
      p.offset_.push_back(lq);
    } else {
      p.outside_ += pw[i];
    }
  }
  return p;
}

PetzProfile PetzProfile::block_sum(std::span<const PetzProfile> blocks) {
  PetzProfile p;
  for (const auto& b : blocks) {
    p.slope_.insert(p.slope_.end(), b.slope_.begin(), b.slope_.end());
    p.offset_.insert(p.offset_.end(), b.offset_.begin(), b.offset_.end());
    p.outside_ += b.outside_;
    p.rho_trace_ += b.rho_trace_;
  }
  return p;
}

double PetzProfile::log2_quasi(double alpha) const {
  Log2Sum s;
  for (std::size_t k = 0; k < slope_.size(); ++k) s.add(alpha * slope_[k] + offset_[k]);
  return s.value();
}

bool PetzProfile::support_contained() const { return outside_ <= kSupportTol * rho_trace_; }

double PetzProfile::relative_entropy() const {
  if (!support_contained()) return kPosInf;
  double d = 0.0;
  for (std::size_t k = 0; k < slope_.size(); ++k) d += std::exp2(slope_[k] + offset_[k]) * slope_[k];
  return d;
}

SandwichedProfile SandwichedProfile::quantum(const ComplexMatrix& rho, const ComplexMatrix& sigma, const NumericConfig& cfg) {
  if (rho.rows() != sigma.rows()) throw ValidationError("divergence: dimension mismatch");
  SandwichedProfile sp;
  const SpectralDecomposition ss = spectral_decompose(sigma, cfg);
  const Support s = support_of(ss, zero_threshold(sigma, cfg));
  const ComplexMatrix r = ss.eigenvectors.adjoint() * rho * ss.eigenvectors;
  const auto k = static_cast<Eigen::Index>(s.idx.size());
  ComplexMatrix block(k, k);
  sp.log2_mu_.resize(k);
  for (Eigen::Index a = 0; a < k; ++a) {
    sp.log2_mu_(a) = s.log2_values[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < k; ++b) block(a, b) = r(s.idx[a], s.idx[b]);
  }
  block = 0.5 * (block + block.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> rs(block);
  const double floor = zero_threshold(block, cfg);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index a = 0; a < k; ++a) {
    if (rs.eigenvalues()(a) > floor) keep.push_back(a);
  }
  sp.rho_factor_.resize(k, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    sp.rho_factor_.col(static_cast<Eigen::Index>(c)) =
        rs.eigenvectors().col(keep[c]) * std::sqrt(rs.eigenvalues()(keep[c]));
  }
  double outside = r.trace().real() - block.trace().real();
  sp.contained_ = outside <= kSupportTol * r.trace().real();
  return sp;
}

SandwichedProfile SandwichedProfile::classical(std::span<const double> p, std::span<const double> q) {
  SandwichedProfile sp;
  sp.commuting_ = true;
  sp.petz_ = PetzProfile::classical(p, q);
  sp.contained_ = sp.petz_.support_contained();
  return sp;
}

double SandwichedProfile::log2_quasi(double alpha) const {
  if (alpha > 1.0 && !contained_) return kPosInf;
  if (commuting_) return petz_.log2_quasi(alpha);
  const Eigen::Index k = log2_mu_.size();
  if (k == 0) return kNegInf;
  // sigma^t rho sigma^t with sigma^t scaled by 2^{-t ref} so no entry overflows.
  const double t = (1.0 - alpha) / (2.0 * alpha);
  const double ref = t > 0.0 ? log2_mu_.maxCoeff() : log2_mu_.minCoeff();
  RealVector scale(k);
  for (Eigen::Index a = 0; a < k; ++a) scale(a) = std::exp2(t * (log2_mu_(a) - ref));
  // Singular values of the row-graded factor keep their relative accuracy.
  const ComplexMatrix b = scale.asDiagonal() * rho_factor_;
  if (b.cols() == 0) return kNegInf;
  Eigen::JacobiSVD<ComplexMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(b);
  const RealVector sv = svd.singularValues();
  Log2Sum sum;
  for (Eigen::Index a = 0; a < sv.size(); ++a) {
    if (sv(a) > 0.0) sum.add(2.0 * alpha * std::log2(sv(a)));
  }
  if (sum.empty()) return kNegInf;
  return sum.value() + 2.0 * alpha * t * ref;
}

double gen_trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("distance: dimension mismatch");
  const ComplexMatrix d = rho.matrix() - sigma.matrix();
  return 0.5 * trace_norm(d) + 0.5 * std::abs(d.trace().real());
}

double gen_trace_distance(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  if (p.size() != q.size()) throw ValidationError("distance: alphabet sizes differ");
  double l1 = 0.0, tr = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    l1 += std::abs(p[i] - q[i]);
    tr += p[i] - q[i];
  }
  return 0.5 * l1 + 0.5 * std::abs(tr);
}

namespace {
// 1 - Tr, with deficits at the rounding level of a d-term sum read as 0.
double trace_deficit(double tr, std::size_t d) {
  const double x = 1.0 - tr;
  return x > 4.0 * static_cast<double>(d) * std::numeric_limits<double>::epsilon() ? x : 0.0;
}
}  // namespace

double fidelity(const DensityOperator& rho, const DensityOperator& sigma, const NumericConfig& cfg) {
  if (rho.dim() != sigma.dim()) throw ValidationError("fidelity: dimension mismatch");
  const ComplexMatrix prod = psd_power(rho.matrix(), 0.5, cfg) * psd_power(sigma.matrix(), 0.5, cfg);
  const double f = Eigen::JacobiSVD<ComplexMatrix>(prod).singularValues().sum();
  return f + std::sqrt(trace_deficit(rho.trace(), rho.dim()) * trace_deficit(sigma.trace(), sigma.dim()));
}

double fidelity(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  if (p.size() != q.size()) throw ValidationError("fidelity: alphabet sizes differ");
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) f += std::sqrt(p[i] * q[i]);
  return f + std::sqrt(trace_deficit(p.total(), p.size()) * trace_deficit(q.total(), q.size()));
}

namespace {
double purified_from_fidelity(double f) {
  f = std::min(1.0, f);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}
}  // namespace

double purified_distance(const DensityOperator& rho, const DensityOperator& sigma, const NumericConfig& cfg) {
  return purified_from_fidelity(fidelity(rho, sigma, cfg));
}

double purified_distance(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  return purified_from_fidelity(fidelity(p, q));
}

DivergenceValue relative_entropy(const DensityOperator& rho, const PositiveOperator& sigma, const NumericConfig& cfg) {
  return DivergenceValue::of(PetzProfile::quantum(rho.matrix(), sigma.matrix(), cfg).relative_entropy());
}

DivergenceValue relative_entropy(const ClassicalDistribution& p, const ClassicalMeasure& q) {
  return DivergenceValue::of(PetzProfile::classical(p.weights(), q.weights()).relative_entropy());
}

DivergenceValue renyi_divergence(const DensityOperator& rho, const PositiveOperator& sigma, double alpha, RenyiKind kind,
                                 const NumericConfig& cfg) {
  check_alpha(alpha);
  if (kind == RenyiKind::umegaki) throw DomainError("umegaki kind has no order: use relative_entropy");
  if (kind == RenyiKind::sandwiched) {
    return from_quasi(SandwichedProfile::quantum(rho.matrix(), sigma.matrix(), cfg).log2_quasi(alpha), alpha);
  }
  const PetzProfile p = PetzProfile::quantum(rho.matrix(), sigma.matrix(), cfg);
  if (alpha > 1.0 && !p.support_contained()) return {kPosInf, false};
  return from_quasi(p.log2_quasi(alpha), alpha);
}

DivergenceValue renyi_divergence(const ClassicalDistribution& p, const ClassicalMeasure& q, double alpha, RenyiKind kind) {
  check_alpha(alpha);
  if (kind == RenyiKind::umegaki) throw DomainError("umegaki kind has no order: use relative_entropy");
  const PetzProfile prof = PetzProfile::classical(p.weights(), q.weights());
  if (alpha > 1.0 && !prof.support_contained()) return {kPosInf, false};
  return from_quasi(prof.log2_quasi(alpha), alpha);
}

DivergenceValue max_relative_entropy(const DensityOperator& rho, const PositiveOperator& sigma, const NumericConfig& cfg) {
  if (rho.dim() != sigma.dim()) throw ValidationError("divergence: dimension mismatch");
  const SpectralDecomposition ss = spectral_decompose(sigma.matrix(), cfg);
  const Support s = support_of(ss, zero_threshold(sigma.matrix(), cfg));
  const ComplexMatrix r = ss.eigenvectors.adjoint() * rho.matrix() * ss.eigenvectors;
  const auto k = static_cast<Eigen::Index>(s.idx.size());
  ComplexMatrix m(k, k);
  double inside = 0.0;
  for (Eigen::Index a = 0; a < k; ++a) {
    inside += r(s.idx[a], s.idx[a]).real();
    for (Eigen::Index b = 0; b < k; ++b) {
      m(a, b) = r(s.idx[a], s.idx[b]) * std::exp2(-0.5 * (s.log2_values[a] + s.log2_values[b]));
    }
  }
  if (rho.trace() - inside > kSupportTol * rho.trace()) return {kPosInf, false};
  m = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return DivergenceValue::of(std::log2(solver.eigenvalues().maxCoeff()));
}

DivergenceValue max_relative_entropy(const ClassicalDistribution& p, const ClassicalMeasure& q) {
  if (p.size() != q.size()) throw ValidationError("divergence: alphabet sizes differ");
  double best = kNegInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return {kPosInf, false};
    best = std::max(best, std::log2(p[i]) - std::log2(q[i]));
  }
  return DivergenceValue::of(best);
}

std::vector<PetzProfile> conditional_profiles(const CQState& cq, const NumericConfig& cfg) {
  std::vector<PetzProfile> out;
  if (cq.mode() == CQMode::classical) {
    const std::vector<double> side = cq.side_marginal_weights();
    for (std::size_t x = 0; x < cq.x_size(); ++x) {
      std::vector<double> blk(cq.e_dim());
      for (std::size_t e = 0; e < cq.e_dim(); ++e) blk[e] = cq.probs()[x] * cq.classical_conditionals()[x][e];
      out.push_back(PetzProfile::classical(blk, side));
    }
  } else {
    const ComplexMatrix side = cq.side_marginal();
    for (std::size_t x = 0; x < cq.x_size(); ++x) {
      if (cq.probs()[x] > 0.0) out.push_back(PetzProfile::quantum(cq.block(x), side, cfg));
    }
  }
  return out;
}

PetzProfile conditional_profile(const CQState& cq, const NumericConfig& cfg) {
  const std::vector<PetzProfile> blocks = conditional_profiles(cq, cfg);
  return PetzProfile::block_sum(blocks);
}

double conditional_entropy(const CQState& cq, double alpha, RenyiKind kind, const NumericConfig& cfg) {
  if (kind == RenyiKind::umegaki) {
    if (alpha != 1.0) throw DomainError("conditional entropy: umegaki kind requires alpha = 1");
    return -conditional_profile(cq, cfg).relative_entropy();
  }
  check_alpha(alpha);
  double log2_q = 0.0;
  if (kind == RenyiKind::petz || cq.mode() == CQMode::classical) {
    log2_q = conditional_profile(cq, cfg).log2_quasi(alpha);
  } else {
    const ComplexMatrix side = cq.side_marginal();
    Log2Sum sum;
    for (std::size_t x = 0; x < cq.x_size(); ++x) {
      if (cq.probs()[x] > 0.0) sum.add(SandwichedProfile::quantum(cq.block(x), side, cfg).log2_quasi(alpha));
    }
    log2_q = sum.value();
  }
  return -from_quasi(log2_q, alpha).value;
}

}  // namespace scx
