#include "scx/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "scx/errors.hpp"
#include "scx/type_classes.hpp"

namespace scx {

ExponentReport fit_slope(std::vector<SeriesPoint> series, FitWindow window) {
  ExponentReport rep;
  rep.window = window;
  double sn = 0.0, sv = 0.0;
  std::vector<SeriesPoint> used;
  for (const auto& pt : series) {
    if (pt.n < window.n_min || pt.n > window.n_max) continue;
    if (!std::isfinite(pt.value)) throw ValidationError("exponent fit: non-finite value at n = " + std::to_string(pt.n));
    used.push_back(pt);
    sn += pt.n;
    sv += pt.value;
  }
  rep.series = std::move(series);
  if (used.size() < 2) throw ValidationError("exponent fit: window holds fewer than two points");
  const double k = static_cast<double>(used.size());
  const double mn = sn / k, mv = sv / k;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& pt : used) {
    sxx += (pt.n - mn) * (pt.n - mn);
    sxy += (pt.n - mn) * (pt.value - mv);
  }
  if (sxx == 0.0) throw ValidationError("exponent fit: all points share the same n");
  rep.fitted_slope = sxy / sxx;
  rep.intercept = mv - rep.fitted_slope * mn;
  double ss = 0.0;
  for (const auto& pt : used) {
    const double e = pt.value - (rep.intercept + rep.fitted_slope * pt.n);
    ss += e * e;
  }
  rep.residual = std::sqrt(ss / k);
  return rep;
}

namespace {

double nan_to_neg_inf(double v) { return std::isnan(v) ? kNegInf : v; }

}  // namespace

ScalarOptimum golden_section_max(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = nan_to_neg_inf(f(c)), fd = nan_to_neg_inf(f(d));
  for (int it = 0; it < iterations; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = nan_to_neg_inf(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = nan_to_neg_inf(f(d));
    }
  }
  return fc >= fd ? ScalarOptimum{fc, c} : ScalarOptimum{fd, d};
}

ScalarOptimum maximize_unit_interval(const std::function<double(double)>& f, double f0, double f1) {
  constexpr double lo = 1e-6, hi = 1.0 - 1e-6;
  constexpr int grid = 64;
  int best = 0;
  double best_v = kNegInf;
  for (int k = 0; k <= grid; ++k) {
    const double v = nan_to_neg_inf(f(lo + (hi - lo) * k / grid));
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  const double a = lo + (hi - lo) * std::max(0, best - 1) / grid;
  const double b = lo + (hi - lo) * std::min(grid, best + 1) / grid;
  ScalarOptimum opt = golden_section_max(f, a, b);
  if (best_v > opt.value) opt = {best_v, lo + (hi - lo) * best / grid};
  if (nan_to_neg_inf(f1) >= opt.value) opt = {f1, 1.0};
  if (nan_to_neg_inf(f0) > opt.value) opt = {f0, 0.0};
  return opt;
}

namespace {

bool in_test(double log2_p, double log2_q, double log2_threshold) {
  const double rhs = log2_q + log2_threshold;
  if (log2_p == kNegInf) return true;
  if (rhs == kNegInf) return false;
  const double tol = 1e-12 * std::max({1.0, std::abs(log2_p), std::abs(rhs)});
  return log2_p <= rhs + tol;
}

ErrorPair assemble(double t1, double t2, double c1, double c2) {
  ErrorPair e;
  e.type1 = std::clamp(t1, 0.0, 1.0);
  e.type2 = std::clamp(t2, 0.0, 1.0);
  e.log2_type1 = log2_or_neg_inf(std::max(0.0, t1));
  e.log2_type2 = log2_or_neg_inf(std::max(0.0, t2));
  e.log2_one_minus_type1 = log2_or_neg_inf(std::max(0.0, c1));
  e.log2_one_minus_type2 = log2_or_neg_inf(std::max(0.0, c2));
  return e;
}

void require_finite_r(double r) {
  if (!std::isfinite(r)) throw ValidationError("Neyman-Pearson threshold r must be finite");
}

}  // namespace

Projector neyman_pearson_projector(const DensityOperator& rho, const PositiveOperator& sigma, double r,
                                   const NumericConfig& cfg) {
  require_finite_r(r);
  if (rho.dim() != sigma.dim()) throw ValidationError("Neyman-Pearson: dimension mismatch");
  return nonneg_part_projector(std::exp2(r) * sigma.matrix() - rho.matrix(), cfg);
}

std::vector<bool> neyman_pearson_mask(const ClassicalMeasure& p, const ClassicalMeasure& q, double r) {
  require_finite_r(r);
  if (p.size() != q.size()) throw ValidationError("Neyman-Pearson: alphabet sizes differ");
  std::vector<bool> t(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) t[i] = in_test(log2_or_neg_inf(p[i]), log2_or_neg_inf(q[i]), r);
  return t;
}

ErrorPair np_errors(const DensityOperator& rho, const PositiveOperator& sigma, double r, const NumericConfig& cfg) {
  require_finite_r(r);
  if (rho.dim() != sigma.dim()) throw ValidationError("Neyman-Pearson: dimension mismatch");
  const ComplexMatrix h = std::exp2(r) * sigma.matrix() - rho.matrix();
  const SpectralDecomposition sd = spectral_decompose(h, cfg);
  const double tz = zero_threshold(h, cfg);
  double t1 = 0.0, t2 = 0.0, c1 = 0.0, c2 = 0.0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const auto v = sd.eigenvectors.col(i);
    const double pr = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    const double ps = (v.adjoint() * sigma.matrix() * v)(0, 0).real();
    if (sd.eigenvalues(i) >= -tz) {
      c1 += pr;
      t2 += ps;
    } else {
      t1 += pr;
      c2 += ps;
    }
  }
  return assemble(t1, t2, c1, c2);
}

ErrorPair np_errors(const ClassicalMeasure& p, const ClassicalMeasure& q, double r) {
  require_finite_r(r);
  if (p.size() != q.size()) throw ValidationError("Neyman-Pearson: alphabet sizes differ");
  double t1 = 0.0, t2 = 0.0, c1 = 0.0, c2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (in_test(log2_or_neg_inf(p[i]), log2_or_neg_inf(q[i]), r)) {
      c1 += p[i];
      t2 += q[i];
    } else {
      t1 += p[i];
      c2 += q[i];
    }
  }
  return assemble(t1, t2, c1, c2);
}

ErrorPair np_errors_iid_classical(const ClassicalMeasure& p, const ClassicalMeasure& q, double r, int n,
                                  const NumericConfig& cfg) {
  require_finite_r(r);
  Log2Sum t1, t2, c1, c2;
  const double thr = n * r;
  for_each_pair_class(p, q, n, cfg, [&](const PairAtomClass& c) {
    if (in_test(c.log2_p, c.log2_q, thr)) {
      c1.add(c.log2_count + c.log2_p);
      t2.add(c.log2_count + c.log2_q);
    } else {
      t1.add(c.log2_count + c.log2_p);
      c2.add(c.log2_count + c.log2_q);
    }
  });
  ErrorPair e;
  e.log2_type1 = t1.value();
  e.log2_type2 = t2.value();
  e.log2_one_minus_type1 = c1.value();
  e.log2_one_minus_type2 = c2.value();
  e.type1 = std::clamp(t1.linear(), 0.0, 1.0);
  e.type2 = std::clamp(t2.linear(), 0.0, 1.0);
  return e;
}

ScalarOptimum hoeffding_optimum(const PetzProfile& prof, double s) {
  if (!(s >= 0.0)) throw DomainError("Hoeffding bound: s must be non-negative");
  const double phi0 = prof.log2_quasi(0.0);
  if (-s - phi0 > 0.0) return {kPosInf, 0.0};
  const auto f = [&](double a) { return ((a - 1.0) * s - prof.log2_quasi(a)) / a; };
  return maximize_unit_interval(f, kNegInf, -prof.log2_quasi(1.0));
}

double hoeffding_bound(const PetzProfile& prof, double s) { return hoeffding_optimum(prof, s).value; }

double hoeffding_bound(const DensityOperator& rho, const PositiveOperator& sigma, double s, const NumericConfig& cfg) {
  return hoeffding_bound(PetzProfile::quantum(rho.matrix(), sigma.matrix(), cfg), s);
}

double hoeffding_bound(const ClassicalDistribution& p, const ClassicalMeasure& q, double s) {
  return hoeffding_bound(PetzProfile::classical(p.weights(), q.weights()), s);
}

ScalarOptimum critical_rate_optimum(const PetzProfile& prof, double r) {
  if (!std::isfinite(r)) throw DomainError("critical rate: r must be finite");
  const auto f = [&](double a) { return a * r - prof.log2_quasi(a); };
  const ScalarOptimum opt = maximize_unit_interval(f, -prof.log2_quasi(0.0), r - prof.log2_quasi(1.0));
  if (opt.alpha > 0.0 && std::isfinite(opt.value) && opt.value >= 0.0) {
    const double b = hoeffding_bound(prof, opt.value);
    if (!(std::abs(b - (opt.value - r)) <= 1e-6)) {
      std::ostringstream os;
      os.precision(17);
      os << "critical rate check failed: s_r = " << opt.value << " (alpha = " << opt.alpha << "), B(s_r) = " << b
         << ", s_r - r = " << opt.value - r;
      throw NumericalError(os.str());
    }
  }
  return opt;
}

double critical_rate(const PetzProfile& prof, double r) { return critical_rate_optimum(prof, r).value; }

double critical_rate(const DensityOperator& rho, const PositiveOperator& sigma, double r, const NumericConfig& cfg) {
  return critical_rate(PetzProfile::quantum(rho.matrix(), sigma.matrix(), cfg), r);
}

double critical_rate(const ClassicalDistribution& p, const ClassicalMeasure& q, double r) {
  return critical_rate(PetzProfile::classical(p.weights(), q.weights()), r);
}

}  // namespace scx
