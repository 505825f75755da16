#include "scx/privamp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scx/divergences.hpp"
#include "scx/errors.hpp"
#include "scx/rng.hpp"

namespace scx {

HashFunction::HashFunction(std::vector<std::size_t> table, std::size_t codomain)
    : table_(std::move(table)), codomain_(codomain) {
  if (codomain_ == 0) throw ValidationError("hash: codomain must be non-empty");
  if (table_.empty()) throw ValidationError("hash: domain must be non-empty");
  for (std::size_t z : table_) {
    if (z >= codomain_) throw ValidationError("hash: value out of codomain range");
  }
}

HashFunction HashFunction::identity(std::size_t n) {
  std::vector<std::size_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = i;
  return HashFunction(std::move(t), n);
}

std::uint64_t smallest_prime_at_least(std::uint64_t n) {
  const auto is_prime = [](std::uint64_t k) {
    if (k < 2) return false;
    for (std::uint64_t d = 2; d * d <= k; ++d) {
      if (k % d == 0) return false;
    }
    return true;
  };
  std::uint64_t k = std::max<std::uint64_t>(n, 2);
  while (!is_prime(k)) ++k;
  return k;
}

HashFunction HashFunction::affine_modular(std::size_t x_size, std::size_t z_size, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t p = smallest_prime_at_least(x_size);
  if (a < 1 || a >= p || b >= p) throw ValidationError("hash: affine parameters out of range");
  if (p > (std::uint64_t{1} << 31)) throw ResourceError("hash: alphabet too large for affine-modular hashing");
  std::vector<std::size_t> t(x_size);
  for (std::size_t x = 0; x < x_size; ++x) t[x] = static_cast<std::size_t>(((a * x + b) % p) % z_size);
  return HashFunction(std::move(t), z_size);
}

const char* metric_name(Metric m) { return m == Metric::trace ? "trace" : "purified"; }

namespace {

void check_domain(const CQState& cq, const HashFunction& f) {
  if (f.domain() != cq.x_size()) throw ValidationError("hash: domain size differs from the classical alphabet");
}

// Hashed blocks sum_{x in f^-1(z)} p_x rho_E^x, classical mode.
std::vector<std::vector<double>> classical_blocks(const CQState& cq, const HashFunction& f) {
  std::vector<std::vector<double>> blocks(f.codomain(), std::vector<double>(cq.e_dim(), 0.0));
  for (std::size_t x = 0; x < cq.x_size(); ++x) {
    const double px = cq.probs()[x];
    if (px == 0.0) continue;
    const auto& c = cq.classical_conditionals()[x];
    auto& b = blocks[f(x)];
    for (std::size_t e = 0; e < cq.e_dim(); ++e) b[e] += px * c[e];
  }
  return blocks;
}

std::vector<ComplexMatrix> quantum_blocks(const CQState& cq, const HashFunction& f) {
  const auto e = static_cast<Eigen::Index>(cq.e_dim());
  std::vector<ComplexMatrix> blocks(f.codomain(), ComplexMatrix::Zero(e, e));
  for (std::size_t x = 0; x < cq.x_size(); ++x) {
    if (cq.probs()[x] == 0.0) continue;
    blocks[f(x)] += cq.block(x);
  }
  return blocks;
}

double purified_from_fidelity(double f) {
  f = std::min(1.0, f);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

// Classical conversion error from precomputed side marginal / |Z|.
double classical_error(const CQState& cq, const HashFunction& f, const std::vector<double>& target, Metric metric) {
  const auto blocks = classical_blocks(cq, f);
  double acc = 0.0;
  for (const auto& b : blocks) {
    for (std::size_t e = 0; e < b.size(); ++e) {
      acc += metric == Metric::trace ? std::abs(b[e] - target[e]) : std::sqrt(b[e] * target[e]);
    }
  }
  return metric == Metric::trace ? 0.5 * acc : purified_from_fidelity(acc);
}

struct ErrorEvaluator {
  const CQState& cq;
  std::size_t z_size;
  Metric metric;
  const NumericConfig& cfg;
  std::vector<double> target;  // classical: P_E / |Z|
  ComplexMatrix target_q;
  ComplexMatrix sqrt_target_q;

  ErrorEvaluator(const CQState& c, std::size_t z, Metric m, const NumericConfig& conf)
      : cq(c), z_size(z), metric(m), cfg(conf) {
    if (z_size == 0) throw ValidationError("conversion error: |Z| must be >= 1");
    if (cq.mode() == CQMode::classical) {
      target = cq.side_marginal_weights();
      for (double& t : target) t /= static_cast<double>(z_size);
    } else {
      target_q = cq.side_marginal() / static_cast<double>(z_size);
      sqrt_target_q = psd_power(target_q, 0.5, cfg);
    }
  }

  double operator()(const HashFunction& f) const {
    check_domain(cq, f);
    if (f.codomain() != z_size) throw ValidationError("conversion error: hash codomain differs from |Z|");
    if (cq.mode() == CQMode::classical) return classical_error(cq, f, target, metric);
    const auto blocks = quantum_blocks(cq, f);
    double acc = 0.0;
    for (const auto& b : blocks) {
      if (metric == Metric::trace) {
        acc += trace_norm(b - target_q);
      } else {
        ComplexMatrix m = sqrt_target_q * b * sqrt_target_q;
        m = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) acc += std::sqrt(std::max(0.0, solver.eigenvalues()(i)));
      }
    }
    return metric == Metric::trace ? 0.5 * acc : purified_from_fidelity(acc);
  }
};

}  // namespace

CQState apply_hash(const CQState& cq, const HashFunction& f, const NumericConfig& cfg) {
  check_domain(cq, f);
  std::vector<double> probs(f.codomain(), 0.0);
  for (std::size_t x = 0; x < cq.x_size(); ++x) probs[f(x)] += cq.probs()[x];
  if (cq.mode() == CQMode::classical) {
    const auto blocks = classical_blocks(cq, f);
    const std::vector<double> side = cq.side_marginal_weights();
    std::vector<ClassicalDistribution> conds;
    for (std::size_t z = 0; z < f.codomain(); ++z) {
      std::vector<double> w = probs[z] > 0.0 ? blocks[z] : side;
      if (probs[z] > 0.0) {
        for (double& v : w) v /= probs[z];
      }
      conds.emplace_back(std::move(w), cfg);
    }
    return CQState::classical(std::move(probs), std::move(conds), cfg);
  }
  const auto blocks = quantum_blocks(cq, f);
  const ComplexMatrix side = cq.side_marginal();
  std::vector<DensityOperator> conds;
  for (std::size_t z = 0; z < f.codomain(); ++z) {
    conds.emplace_back(probs[z] > 0.0 ? ComplexMatrix(blocks[z] / probs[z]) : side, cfg);
  }
  return CQState::quantum(std::move(probs), std::move(conds), cfg);
}

double conversion_error(const CQState& cq, const HashFunction& f, Metric metric, const NumericConfig& cfg) {
  return ErrorEvaluator(cq, f.codomain(), metric, cfg)(f);
}

ConversionReport min_conversion_exhaustive(const CQState& cq, std::size_t z_size, Metric metric,
                                           const NumericConfig& cfg) {
  const double count = std::pow(static_cast<double>(z_size), static_cast<double>(cq.x_size()));
  if (count > kMaxEnumeratedFunctions) {
    throw ResourceError("exhaustive minimum needs " + std::to_string(count) +
                        " functions (limit 1e7); use the sampled minimum instead");
  }
  const ErrorEvaluator eval(cq, z_size, metric, cfg);
  std::vector<std::size_t> table(cq.x_size(), 0);
  ConversionReport rep;
  rep.metric = metric;
  rep.aggregate = Aggregate::min;
  rep.exhaustive = true;
  rep.error = std::numeric_limits<double>::infinity();
  for (;;) {
    const HashFunction f(table, z_size);
    const double e = eval(f);
    ++rep.samples;
    if (e < rep.error) {
      rep.error = e;
      rep.hash = f;
    }
    std::size_t k = 0;
    while (k < table.size() && ++table[k] == z_size) table[k++] = 0;
    if (k == table.size()) break;
  }
  return rep;
}

ConversionReport min_or_avg_conversion_sampled(const CQState& cq, std::size_t z_size, std::uint64_t trials,
                                               std::uint64_t seed, Aggregate aggregate, Metric metric,
                                               const NumericConfig& cfg) {
  if (trials < 1) throw ValidationError("sampled conversion error: trials must be >= 1");
  const ErrorEvaluator eval(cq, z_size, metric, cfg);
  const std::uint64_t p = smallest_prime_at_least(cq.x_size());
  ConversionReport rep;
  rep.metric = metric;
  rep.aggregate = aggregate;
  rep.samples = trials;
  rep.seed = seed;
  double best = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto g = substream(seed, t);
    const std::uint64_t a = 1 + uniform_below(g, p - 1);
    const std::uint64_t b = uniform_below(g, p);
    const HashFunction f = HashFunction::affine_modular(cq.x_size(), z_size, a, b);
    const double e = eval(f);
    sum += e;
    if (e < best) {
      best = e;
      rep.hash = f;
    }
  }
  rep.error = aggregate == Aggregate::min ? best : sum / static_cast<double>(trials);
  return rep;
}

KeyLength key_length_bruteforce(const CQState& cq, double eps, Metric metric, const NumericConfig& cfg) {
  if (!(eps >= 0.0)) throw DomainError("key length: eps must be >= 0");
  for (std::size_t z = cq.x_size(); z >= 2; --z) {
    if (min_conversion_exhaustive(cq, z, metric, cfg).error <= eps) return {z, std::log2(static_cast<double>(z))};
  }
  return {1, 0.0};
}

Theorem2Bounds theorem2_bounds(const CQState& cq, double rate, const NumericConfig& cfg) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("conversion bounds: R must be finite and >= 0");
  const PetzProfile prof = conditional_profile(cq, cfg);
  const auto f = [&](double a) { return (1.0 - a) * rate - prof.log2_quasi(a); };
  const ScalarOptimum opt = maximize_unit_interval(f, rate - prof.log2_quasi(0.0), -prof.log2_quasi(1.0));
  const double v = std::max(0.0, opt.value);
  return {0.5 * v, v, opt.alpha};
}

double log2_key_size(int n, double rate) {
  const double e = n * rate;
  if (e >= 1000.0) return e;
  return std::log2(std::floor(std::exp2(e)));
}

std::uint64_t key_size(int n, double rate) {
  const double e = n * rate;
  if (!(e >= 0.0) || e >= 62.0) throw ResourceError("key size floor(2^{nR}) out of range");
  return static_cast<std::uint64_t>(std::floor(std::exp2(e)));
}

SmoothingValue pa_epsilon_floor(const CQState& cq, int n, double rate, bool exact_floor, const NumericConfig& cfg) {
  if (cq.mode() != CQMode::classical) throw ValidationError("epsilon floor: classical c-q state required");
  if (n < 1) throw ValidationError("epsilon floor: n must be >= 1");
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("epsilon floor: R must be finite and >= 0");
  const ClassicalDistribution joint(cq.joint_weights(), cfg);
  const std::vector<double> side = cq.side_marginal_weights();
  std::vector<double> q;
  q.reserve(joint.size());
  for (std::size_t x = 0; x < cq.x_size(); ++x) q.insert(q.end(), side.begin(), side.end());
  const double r_total = exact_floor ? -log2_key_size(n, rate) : -n * rate;
  return eps_opt_classical_iid(joint, ClassicalMeasure(std::move(q)), r_total / n, n, cfg);
}

}  // namespace scx
