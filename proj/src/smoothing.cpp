#include "scx/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include "scx/errors.hpp"
#include "scx/type_classes.hpp"

namespace scx {

namespace {

// Mass missing from a sub-normalized p^{(x)n}; it counts fully towards 1 - eps.
double deficit(const ClassicalDistribution& p, int n) {
  if (p.normalized()) return 0.0;
  return std::max(0.0, 1.0 - std::pow(p.total(), n));
}

double log2_with_deficit(double log2_mass, double def) {
  if (def == 0.0) return log2_mass;
  Log2Sum s;
  s.add(log2_mass);
  s.add(std::log2(def));
  return s.value();
}

}  // namespace

ClassicalSmoothing eps_opt_classical(const ClassicalDistribution& p, const ClassicalMeasure& q, double r) {
  if (p.size() != q.size()) throw ValidationError("smoothing: alphabet sizes differ");
  if (std::isnan(r)) throw ValidationError("smoothing: r is NaN");
  ClassicalSmoothing out;
  out.witness.resize(p.size());
  const double scale = std::exp2(r);
  double eps = 0.0;
  Log2Sum kept;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double cap = scale * q[i];
    out.witness[i] = std::min(p[i], cap);
    eps += std::max(0.0, p[i] - cap);
    kept.add(log2_or_neg_inf(out.witness[i]));
  }
  out.value.eps = std::clamp(eps, 0.0, 1.0);
  out.value.log2_one_minus_eps = log2_with_deficit(kept.value(), deficit(p, 1));
  return out;
}

SmoothingValue eps_opt_classical_iid(const ClassicalDistribution& p, const ClassicalMeasure& q, double r, int n,
                                     const NumericConfig& cfg) {
  if (!std::isfinite(r)) throw ValidationError("smoothing: r must be finite");
  Log2Sum eps, kept;
  const double thr = n * r;
  for_each_pair_class(p, q, n, cfg, [&](const PairAtomClass& c) {
    const double cap = c.log2_q + thr;
    if (c.log2_p > cap) {
      // log2(2^lp - 2^cap) = lp + log2(1 - 2^{cap - lp})
      eps.add(c.log2_count + c.log2_p + std::log2(-std::expm1((cap - c.log2_p) * std::log(2.0))));
      kept.add(c.log2_count + cap);
    } else {
      kept.add(c.log2_count + c.log2_p);
    }
  });
  SmoothingValue v;
  v.eps = std::clamp(eps.linear(), 0.0, 1.0);
  v.log2_one_minus_eps = log2_with_deficit(kept.value(), deficit(p, n));
  return v;
}

SmoothingWitness::SmoothingWitness(ComplexMatrix state, double achieved_distance, const ComplexMatrix& sigma, double r,
                                   const NumericConfig& cfg)
    : state_(std::move(state)), distance_(achieved_distance) {
  if (state_.rows() != sigma.rows()) throw ValidationError("smoothing witness: dimension mismatch");
  const ComplexMatrix slack = std::exp2(r) * sigma - state_;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (slack + slack.adjoint()), Eigen::EigenvaluesOnly);
  min_slack_ = solver.eigenvalues().minCoeff();
  feasible_ = min_slack_ >= -cfg.tol_psd;
}

SmoothingWitness np_smoothing_witness(const DensityOperator& rho, const PositiveOperator& sigma, double r, int n,
                                      const NumericConfig& cfg) {
  if (n < 1) throw ValidationError("smoothing witness: n must be >= 1");
  if (!std::isfinite(r)) throw ValidationError("smoothing witness: r must be finite");
  const ComplexMatrix rn = kron_power(rho.matrix(), n, cfg);
  const ComplexMatrix sn = kron_power(sigma.matrix(), n, cfg);
  const ComplexMatrix t = nonneg_part_projector(std::exp2(n * r) * sn - rn, cfg).projector();
  ComplexMatrix w = t * rn * t;
  w = 0.5 * (w + w.adjoint());
  const ComplexMatrix d = rn - w;
  const double dist = 0.5 * trace_norm(d) + 0.5 * std::abs(d.trace().real());
  return SmoothingWitness(std::move(w), dist, sn, n * r, cfg);
}

SmoothingValue np_witness_iid_classical(const ClassicalDistribution& p, const ClassicalMeasure& q, double r, int n,
                                        const NumericConfig& cfg) {
  const ErrorPair e = np_errors_iid_classical(p, q, r, n, cfg);
  return {e.type1, log2_with_deficit(e.log2_one_minus_type1, deficit(p, n))};
}

DivergenceValue smoothed_dmax_classical(const ClassicalDistribution& p, const ClassicalMeasure& q, double eps) {
  if (!(eps >= 0.0)) throw DomainError("smoothed D_max: eps must be >= 0");
  if (eps >= 1.0) throw DomainError("smoothed D_max: eps must be < 1");
  if (eps == 0.0) return max_relative_entropy(p, q);
  if (eps >= p.total()) return {kNegInf, false};
  const auto f = [&](double r) { return eps_opt_classical(p, q, r).value.eps; };
  double hi = 0.0;
  const DivergenceValue dm = max_relative_entropy(p, q);
  if (dm.finite) {
    hi = dm.value;
  } else {
    // Mass outside supp(q) is never removed by raising r.
    double outside = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (q[i] <= 0.0) outside += p[i];
    }
    if (outside > eps) return {kPosInf, false};
    hi = 1.0;
    while (f(hi) > eps) hi = 2.0 * hi + 1.0;
  }
  double lo = hi - 1.0;
  while (f(lo) <= eps) lo = hi - 2.0 * (hi - lo);
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return DivergenceValue::of(hi);
}

PurifiedBracket purified_smoothing_bracket(const ClassicalDistribution& p, const ClassicalMeasure& q, double r) {
  const double e = eps_opt_classical(p, q, r).value.eps;
  return {e, std::min(1.0, std::sqrt(2.0 * e))};
}

ScalarOptimum sc_exponent_optimum(const PetzProfile& prof, double r) {
  if (!std::isfinite(r)) throw DomainError("strong converse exponent: r must be finite");
  if (r >= prof.relative_entropy()) return {0.0, 1.0};
  const auto f = [&](double a) { return (a - 1.0) * r - prof.log2_quasi(a); };
  return maximize_unit_interval(f, -r - prof.log2_quasi(0.0), -prof.log2_quasi(1.0));
}

double sc_exponent_lower_bound(const PetzProfile& prof, double r) {
  return std::max(0.0, sc_exponent_optimum(prof, r).value);
}

double sc_exponent_lower_bound(const DensityOperator& rho, const PositiveOperator& sigma, double r,
                               const NumericConfig& cfg) {
  return sc_exponent_lower_bound(PetzProfile::quantum(rho.matrix(), sigma.matrix(), cfg), r);
}

double sc_exponent_lower_bound(const ClassicalDistribution& p, const ClassicalMeasure& q, double r) {
  return sc_exponent_lower_bound(PetzProfile::classical(p.weights(), q.weights()), r);
}

ScalarOptimum liyao_optimum(const SandwichedProfile& prof, double r) {
  if (!std::isfinite(r)) throw DomainError("dilution exponent: r must be finite");
  if (!prof.support_contained()) return {0.0, 1.0};
  // Searched in u = log(alpha - 1), which keeps the peak near alpha = 1 resolvable.
  const auto f = [&](double u) {
    const double a = 1.0 + std::exp(u);
    return 0.5 * ((a - 1.0) * r - prof.log2_quasi(a));
  };
  const double ulo = std::log(1e-6), uhi = std::log(kLiYaoAlphaMax - 1.0);
  constexpr int grid = 200;
  int best = 0;
  double best_v = kNegInf;
  for (int k = 0; k <= grid; ++k) {
    const double v = f(ulo + (uhi - ulo) * k / grid);
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  if (best == grid) return {kPosInf, kLiYaoAlphaMax};
  const ScalarOptimum g = golden_section_max(f, ulo + (uhi - ulo) * std::max(0, best - 1) / grid,
                                             ulo + (uhi - ulo) * (best + 1) / grid);
  ScalarOptimum opt{std::max(g.value, best_v), 1.0 + std::exp(g.value >= best_v ? g.alpha : ulo + (uhi - ulo) * best / grid)};
  if (!(opt.value > 0.0)) return {0.0, opt.alpha};
  return opt;
}

double dilution_exponent_liyao(const DensityOperator& rho, const PositiveOperator& sigma, double r,
                               const NumericConfig& cfg) {
  return liyao_optimum(SandwichedProfile::quantum(rho.matrix(), sigma.matrix(), cfg), r).value;
}

double dilution_exponent_liyao(const ClassicalDistribution& p, const ClassicalMeasure& q, double r) {
  return liyao_optimum(SandwichedProfile::classical(p.weights(), q.weights()), r).value;
}

ExponentReport exponent_fit(std::span<const EpsPoint> series, FitWindow window) {
  std::vector<SeriesPoint> pts;
  for (const auto& e : series) pts.push_back({e.n, -e.log2_one_minus_eps});
  return fit_slope(std::move(pts), window);
}

ExponentReport exponent_fit(std::span<const SeriesPoint> eps_series, FitWindow window) {
  std::vector<SeriesPoint> pts;
  for (const auto& e : eps_series) {
    if (!(e.value >= 0.0 && e.value < 1.0)) throw ValidationError("exponent fit: eps must lie in [0, 1)");
    pts.push_back({e.n, -std::log1p(-e.value) / std::log(2.0)});
  }
  return fit_slope(std::move(pts), window);
}

}  // namespace scx
