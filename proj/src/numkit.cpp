#include "scx/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "scx/errors.hpp"
#include "scx/type_classes.hpp"

namespace scx {

NumericConfig NumericConfig::from_environment() {
  NumericConfig cfg;
  if (const char* env = std::getenv("SCX_MAX_CLASSES")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || !(v > 0)) throw ValidationError(std::string("SCX_MAX_CLASSES is not a positive number: ") + env);
    cfg.max_classes = v;
  }
  return cfg;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return m.size() == 0 || (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double zero_threshold(const ComplexMatrix& h, const NumericConfig& cfg) {
  return cfg.tol_zero_rel * max_abs(h);
}

ComplexMatrix diagonal_matrix(std::span<const double> weights) {
  const auto d = static_cast<Eigen::Index>(weights.size());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = weights[static_cast<std::size_t>(i)];
  return m;
}

namespace {

void require_square_hermitian(const ComplexMatrix& m, const NumericConfig& cfg, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
  if (!m.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
  if (!is_hermitian(m, cfg.tol_herm)) throw ValidationError(std::string(what) + ": matrix is not Hermitian");
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

Projector eigen_projector(const SpectralDecomposition& sd, auto keep) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    if (keep(sd.eigenvalues(i))) cols.push_back(i);
  }
  const auto dim = sd.eigenvectors.rows();
  ComplexMatrix basis(dim, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) basis.col(static_cast<Eigen::Index>(c)) = sd.eigenvectors.col(cols[c]);
  return Subspace(static_cast<std::size_t>(dim), std::move(basis));
}

}  // namespace

PositiveOperator::PositiveOperator(const ComplexMatrix& m, const NumericConfig& cfg) {
  require_square_hermitian(m, cfg, "PositiveOperator");
  m_ = hermitize(m);
  const SpectralDecomposition sd = spectral_decompose(m_, cfg);
  const double lmin = sd.eigenvalues.minCoeff();
  if (lmin < -cfg.tol_psd * std::max(1.0, max_abs(m_))) {
    throw ValidationError("PositiveOperator: negative eigenvalue " + std::to_string(lmin));
  }
}

PositiveOperator PositiveOperator::diagonal(std::span<const double> weights, const NumericConfig& cfg) {
  ClassicalMeasure check{std::vector<double>(weights.begin(), weights.end())};
  return PositiveOperator(diagonal_matrix(weights), cfg);
}

DensityOperator::DensityOperator(const ComplexMatrix& m, const NumericConfig& cfg) : PositiveOperator(m, cfg) {
  const double tr = trace();
  if (!(tr > 0.0) || tr > 1.0 + cfg.tol_tr) {
    throw ValidationError("DensityOperator: trace " + std::to_string(tr) + " outside (0, 1]");
  }
  normalized_ = std::abs(tr - 1.0) <= cfg.tol_tr;
}

DensityOperator DensityOperator::diagonal(std::span<const double> weights, const NumericConfig& cfg) {
  ClassicalMeasure check{std::vector<double>(weights.begin(), weights.end())};
  return DensityOperator(diagonal_matrix(weights), cfg);
}

DensityOperator DensityOperator::pure(const ComplexVector& psi, const NumericConfig& cfg) {
  const double nrm = psi.norm();
  if (!(nrm > 0.0)) throw ValidationError("DensityOperator::pure: zero vector");
  const ComplexVector u = psi / nrm;
  return DensityOperator(u * u.adjoint(), cfg);
}

ClassicalMeasure::ClassicalMeasure(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw ValidationError("ClassicalMeasure: empty alphabet");
  for (double x : w_) {
    if (!std::isfinite(x) || x < 0.0) throw ValidationError("ClassicalMeasure: weights must be finite and non-negative");
  }
}

double ClassicalMeasure::total() const { return std::accumulate(w_.begin(), w_.end(), 0.0); }

ClassicalDistribution::ClassicalDistribution(std::vector<double> weights, const NumericConfig& cfg)
    : ClassicalMeasure(std::move(weights)) {
  const double s = total();
  if (!(s > 0.0) || s > 1.0 + cfg.tol_tr) {
    throw ValidationError("ClassicalDistribution: total mass " + std::to_string(s) + " outside (0, 1]");
  }
  normalized_ = std::abs(s - 1.0) <= cfg.tol_tr;
}

ClassicalDistribution ClassicalDistribution::uniform(std::size_t d) {
  return ClassicalDistribution(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

DensityOperator ClassicalDistribution::as_density() const { return DensityOperator::diagonal(w_); }

Subspace::Subspace(std::size_t ambient_dim, ComplexMatrix basis) : ambient_(ambient_dim), basis_(std::move(basis)) {
  if (static_cast<std::size_t>(basis_.rows()) != ambient_) throw ValidationError("Subspace: basis rows differ from ambient dimension");
}

Subspace Subspace::zero(std::size_t ambient_dim) {
  return Subspace(ambient_dim, ComplexMatrix(static_cast<Eigen::Index>(ambient_dim), 0));
}

Subspace Subspace::full(std::size_t ambient_dim) {
  const auto d = static_cast<Eigen::Index>(ambient_dim);
  return Subspace(ambient_dim, ComplexMatrix::Identity(d, d));
}

ComplexMatrix Subspace::projector() const {
  if (basis_.cols() == 0) {
    const auto d = static_cast<Eigen::Index>(ambient_);
    return ComplexMatrix::Zero(d, d);
  }
  return basis_ * basis_.adjoint();
}

Complex Subspace::trace_with(const ComplexMatrix& m) const {
  if (basis_.cols() == 0) return Complex(0.0, 0.0);
  return (basis_.adjoint() * m * basis_).trace();
}

SpectralDecomposition spectral_decompose(const ComplexMatrix& h, const NumericConfig& cfg) {
  require_square_hermitian(h, cfg, "spectral_decompose");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(h));
  if (solver.info() != Eigen::Success) throw NumericalError("spectral_decompose: eigen solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Projector nonneg_part_projector(const ComplexMatrix& h, const NumericConfig& cfg) {
  const double tz = zero_threshold(h, cfg);
  return eigen_projector(spectral_decompose(h, cfg), [tz](double l) { return l >= -tz; });
}

Projector positive_part_projector(const ComplexMatrix& h, const NumericConfig& cfg) {
  const double tz = zero_threshold(h, cfg);
  return eigen_projector(spectral_decompose(h, cfg), [tz](double l) { return l > tz; });
}

Projector support_projector(const ComplexMatrix& psd, const NumericConfig& cfg) {
  return positive_part_projector(psd, cfg);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const NumericConfig& cfg) {
  const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  const double rows = static_cast<double>(ra) * static_cast<double>(rb);
  const double cols = static_cast<double>(ca) * static_cast<double>(cb);
  if (std::max(rows, cols) > static_cast<double>(cfg.max_dim)) {
    throw ResourceError("kron: dimension " + std::to_string(static_cast<long long>(std::max(rows, cols))) +
                        " exceeds max_dim " + std::to_string(cfg.max_dim));
  }
  ComplexMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  }
  return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, int n, const NumericConfig& cfg) {
  if (n < 1) throw ValidationError("kron_power: n must be >= 1");
  ComplexMatrix out = a;
  for (int k = 1; k < n; ++k) out = kron(out, a, cfg);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
  if (m.rows() != m.cols()) throw ValidationError("partial_trace: matrix must be square");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw ValidationError("partial_trace: zero factor dimension");
    total *= d;
  }
  if (total != static_cast<std::size_t>(m.rows())) throw ValidationError("partial_trace: factor dimensions do not match matrix");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw ValidationError("partial_trace: keep index out of range");
    kept[k] = true;
  }
  // Row-major multi-index: factor 0 is the most significant digit.
  std::size_t out_dim = 1;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (kept[f]) out_dim *= dims[f];
  }
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
  const std::size_t nf = dims.size();
  std::vector<std::size_t> di(nf), dj(nf);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    for (std::size_t f = nf; f-- > 0;) {
      di[f] = rem % dims[f];
      rem /= dims[f];
    }
    for (std::size_t j = 0; j < total; ++j) {
      rem = j;
      bool traced_equal = true;
      for (std::size_t f = nf; f-- > 0;) {
        dj[f] = rem % dims[f];
        rem /= dims[f];
        if (!kept[f] && dj[f] != di[f]) traced_equal = false;
      }
      if (!traced_equal) continue;
      std::size_t oi = 0, oj = 0;
      for (std::size_t f = 0; f < nf; ++f) {
        if (!kept[f]) continue;
        oi = oi * dims[f] + di[f];
        oj = oj * dims[f] + dj[f];
      }
      out(static_cast<Eigen::Index>(oi), static_cast<Eigen::Index>(oj)) +=
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

Subspace subspace_meet_kernel(const Projector& p, const ComplexMatrix& s, const NumericConfig& cfg) {
  const auto d = static_cast<Eigen::Index>(p.ambient_dim());
  if (s.rows() != d || s.cols() != d) throw ValidationError("subspace_meet_kernel: dimension mismatch");
  if (p.rank() == 0) return Subspace::zero(p.ambient_dim());
  const ComplexMatrix ps = support_projector(s, cfg).projector();
  const ComplexMatrix m = ComplexMatrix::Identity(d, d) - p.projector() + ps;
  const SpectralDecomposition sd = spectral_decompose(m, cfg);
  // m has eigenvalues in [0, 2]; the threshold is absolute.
  const double tz = cfg.tol_zero_rel * 2.0;
  return eigen_projector(sd, [tz](double l) { return l < tz; });
}

ComplexMatrix psd_power(const ComplexMatrix& a, double t, const NumericConfig& cfg) {
  const SpectralDecomposition sd = spectral_decompose(a, cfg);
  const double tz = zero_threshold(a, cfg);
  RealVector f(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double l = sd.eigenvalues(i);
    f(i) = l > tz ? std::pow(l, t) : 0.0;
  }
  return sd.eigenvectors * f.asDiagonal() * sd.eigenvectors.adjoint();
}

double trace_norm(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

// ---------------------------------------------------------------------------
// type classes

double type_class_count(std::size_t d, int n) {
  if (d == 0) return 0.0;
  // C(n + d - 1, d - 1) via a running product that stays integral.
  double c = 1.0;
  const std::size_t k = d - 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n + static_cast<int>(i)) / static_cast<double>(i);
  return std::round(c);
}

double TypeClassEnsemble::log2_total_mass() const {
  Log2Sum s;
  for (const TypeClass& c : classes) s.add(c.log2_multiplicity + c.log2_weight);
  return s.value();
}

TypeClassEnsemble iid_type_classes(const ClassicalDistribution& p, int n, const NumericConfig& cfg) {
  if (n < 1) throw ValidationError("iid_type_classes: n must be >= 1");
  const std::size_t d = p.size();
  detail::check_class_budget(d, n, cfg);
  std::vector<double> lp(d);
  for (std::size_t i = 0; i < d; ++i) lp[i] = log2_or_neg_inf(p[i]);
  const Log2Factorials lf(n);
  TypeClassEnsemble out;
  out.alphabet_size = d;
  out.power = n;
  out.classes.reserve(static_cast<std::size_t>(type_class_count(d, n)));
  for_each_composition(d, n, [&](std::span<const int> k) {
    double lw = 0.0;
    double lm = lf(n);
    for (std::size_t i = 0; i < d; ++i) {
      if (k[i] == 0) continue;
      lw += k[i] * lp[i];
      lm -= lf(k[i]);
    }
    out.classes.push_back(TypeClass{std::vector<int>(k.begin(), k.end()), lw, lm});
  });
  return out;
}

namespace detail {

LumpedPair lump_pair(const ClassicalMeasure& p, const ClassicalMeasure& q) {
  std::map<std::pair<double, double>, int> groups;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0 && q[i] == 0.0) continue;
    ++groups[{p[i], q[i]}];
  }
  LumpedPair out;
  for (const auto& [key, count] : groups) {
    out.log2_p.push_back(log2_or_neg_inf(key.first));
    out.log2_q.push_back(log2_or_neg_inf(key.second));
    out.log2_mult.push_back(std::log2(static_cast<double>(count)));
  }
  return out;
}

void check_class_budget(std::size_t d, int n, const NumericConfig& cfg) {
  const double classes = type_class_count(d, n);
  if (classes > cfg.max_classes) {
    throw ResourceError("type classes: " + std::to_string(static_cast<long long>(classes)) +
                        " classes exceed the budget of " + std::to_string(static_cast<long long>(cfg.max_classes)) +
                        " (raise SCX_MAX_CLASSES or lower n)");
  }
}

}  // namespace detail

}  // namespace scx
