#include "scx/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scx/errors.hpp"
#include "scx/privamp.hpp"
#include "scx/rng.hpp"

namespace scx {

namespace {

constexpr std::size_t kExhaustiveBijectionCheck = std::size_t{1} << 12;
constexpr double kMaxMessagesPerTuple = 1e6;

}  // namespace

EncryptionScheme::EncryptionScheme(SchemeKind kind, std::size_t z_size) : kind_(kind), n_(z_size) {
  if (n_ == 0) throw ValidationError("encryption scheme: |Z| must be >= 1");
  if (kind_ == SchemeKind::xor_ && (n_ & (n_ - 1)) != 0) throw ValidationError("encryption scheme: xor needs |Z| a power of two");
  if (n_ <= kExhaustiveBijectionCheck) {
    std::vector<char> seen(n_);
    for (std::size_t fixed = 0; fixed < n_; ++fixed) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t v = 0; v < n_; ++v) seen[encrypt(fixed, v)] = 1;
      if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(n_)) throw NumericalError("encryption scheme: not a bijection in m");
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t v = 0; v < n_; ++v) seen[encrypt(v, fixed)] = 1;
      if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(n_)) throw NumericalError("encryption scheme: not a bijection in z");
    }
  }
}

ComplexMatrix EncryptionScheme::permutation_unitary(std::size_t m) const {
  const auto n = static_cast<Eigen::Index>(n_);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (std::size_t z = 0; z < n_; ++z) u(static_cast<Eigen::Index>(encrypt(z, m)), static_cast<Eigen::Index>(z)) = 1.0;
  return u;
}

SchemeKind parse_scheme(const std::string& name) {
  if (name == "modular_add") return SchemeKind::modular_add;
  if (name == "xor") return SchemeKind::xor_;
  throw ValidationError("unknown encryption scheme \"" + name + "\" (expected modular_add or xor)");
}

const char* scheme_name(SchemeKind k) { return k == SchemeKind::modular_add ? "modular_add" : "xor"; }

CQState encode_ensemble(const CQState& cq, const EncryptionScheme& scheme, std::size_t m, const NumericConfig& cfg) {
  if (cq.x_size() != scheme.z_size()) throw ValidationError("encode: key alphabet differs from the scheme's |Z|");
  if (m >= scheme.z_size()) throw ValidationError("encode: message label out of range");
  const std::size_t n = cq.x_size();
  std::vector<double> probs(n);
  if (cq.mode() == CQMode::classical) {
    std::vector<ClassicalDistribution> conds(cq.classical_conditionals());
    for (std::size_t z = 0; z < n; ++z) {
      const std::size_t c = scheme.encrypt(z, m);
      probs[c] = cq.probs()[z];
      conds[c] = cq.classical_conditionals()[z];
    }
    return CQState::classical(std::move(probs), std::move(conds), cfg);
  }
  std::vector<DensityOperator> conds(cq.quantum_conditionals());
  for (std::size_t z = 0; z < n; ++z) {
    const std::size_t c = scheme.encrypt(z, m);
    probs[c] = cq.probs()[z];
    conds[c] = cq.quantum_conditionals()[z];
  }
  return CQState::quantum(std::move(probs), std::move(conds), cfg);
}

namespace {

void check_ensembles(const std::vector<std::vector<double>>& ens, const std::vector<double>& prior) {
  if (ens.empty()) throw ValidationError("guessing: empty ensemble");
  if (ens.size() != prior.size()) throw ValidationError("guessing: prior and ensemble sizes differ");
  for (const auto& e : ens) {
    if (e.size() != ens.front().size()) throw ValidationError("guessing: ensemble members differ in size");
  }
  for (double q : prior) {
    if (!(q >= 0.0)) throw ValidationError("guessing: prior weights must be non-negative");
  }
}

}  // namespace

GuessReport ml_guess_classical(const std::vector<std::vector<double>>& ensembles, const std::vector<double>& prior) {
  check_ensembles(ensembles, prior);
  GuessReport rep;
  rep.strategy = "ml";
  rep.per_message.assign(ensembles.size(), 0.0);
  for (std::size_t a = 0; a < ensembles.front().size(); ++a) {
    std::size_t best = 0;
    double best_v = prior[0] * ensembles[0][a];
    for (std::size_t m = 1; m < ensembles.size(); ++m) {
      const double v = prior[m] * ensembles[m][a];
      if (v > best_v) {
        best_v = v;
        best = m;
      }
    }
    rep.per_message[best] += ensembles[best][a];
  }
  for (std::size_t m = 0; m < ensembles.size(); ++m) rep.average += prior[m] * rep.per_message[m];
  return rep;
}

double helstrom_binary(const DensityOperator& rho1, const DensityOperator& rho2, double q1) {
  if (!(q1 >= 0.0 && q1 <= 1.0)) throw ValidationError("helstrom: prior must lie in [0, 1]");
  if (rho1.dim() != rho2.dim()) throw ValidationError("helstrom: dimension mismatch");
  return 0.5 * (1.0 + trace_norm(q1 * rho1.matrix() - (1.0 - q1) * rho2.matrix()));
}

Povm Povm::quantum(std::vector<ComplexMatrix> elements, const NumericConfig& cfg) {
  if (elements.empty()) throw ValidationError("POVM: no elements");
  const auto d = elements.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (auto& e : elements) {
    if (e.rows() != d || e.cols() != d) throw ValidationError("POVM: elements differ in dimension");
    e = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> s(e, Eigen::EigenvaluesOnly);
    if (s.eigenvalues().minCoeff() < -cfg.tol_psd) throw ValidationError("POVM: element is not positive semi-definite");
    sum += e;
  }
  const ComplexMatrix rest = ComplexMatrix::Identity(d, d) - sum;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> s(0.5 * (rest + rest.adjoint()), Eigen::EigenvaluesOnly);
  if (s.eigenvalues().minCoeff() < -cfg.tol_psd) throw ValidationError("POVM: elements sum above the identity");
  Povm p;
  p.outcomes_ = elements.size();
  p.mats_ = std::move(elements);
  if (max_abs(rest) > cfg.tol_psd) p.mats_.push_back(rest);
  return p;
}

Povm Povm::classical(std::vector<std::vector<double>> elements, const NumericConfig& cfg) {
  if (elements.empty()) throw ValidationError("POVM: no elements");
  const std::size_t d = elements.front().size();
  std::vector<double> rest(d, 1.0);
  bool nonzero = false;
  for (const auto& e : elements) {
    if (e.size() != d) throw ValidationError("POVM: elements differ in dimension");
    for (std::size_t a = 0; a < d; ++a) {
      if (e[a] < -cfg.tol_psd) throw ValidationError("POVM: negative element weight");
      rest[a] -= e[a];
    }
  }
  for (double& r : rest) {
    if (r < -cfg.tol_psd) throw ValidationError("POVM: elements sum above the identity");
    if (std::abs(r) > cfg.tol_psd) nonzero = true;
    r = std::max(0.0, r);
  }
  Povm p;
  p.classical_ = true;
  p.outcomes_ = elements.size();
  p.diag_ = std::move(elements);
  if (nonzero) p.diag_.push_back(std::move(rest));
  return p;
}

double Povm::success(std::size_t k, const ComplexMatrix& rho) const {
  if (classical_) {
    double s = 0.0;
    for (std::size_t a = 0; a < diag_[k].size(); ++a) s += diag_[k][a] * rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)).real();
    return s;
  }
  return (mats_.at(k) * rho).trace().real();
}

double Povm::success(std::size_t k, const std::vector<double>& weights) const {
  if (!classical_) return success(k, diagonal_matrix(weights));
  double s = 0.0;
  for (std::size_t a = 0; a < weights.size(); ++a) s += diag_.at(k)[a] * weights[a];
  return s;
}

std::pair<Povm, GuessReport> pgm(const std::vector<ComplexMatrix>& ensembles, const std::vector<double>& prior,
                                 const NumericConfig& cfg) {
  if (ensembles.empty() || ensembles.size() != prior.size()) throw ValidationError("pgm: prior and ensemble sizes differ");
  const auto d = ensembles.front().rows();
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (std::size_t m = 0; m < ensembles.size(); ++m) s += prior[m] * ensembles[m];
  const ComplexMatrix root = psd_power(s, -0.5, cfg);
  std::vector<ComplexMatrix> elements;
  for (std::size_t m = 0; m < ensembles.size(); ++m) elements.push_back(root * (prior[m] * ensembles[m]) * root);
  Povm povm = Povm::quantum(std::move(elements), cfg);
  GuessReport rep;
  rep.strategy = "pgm";
  for (std::size_t m = 0; m < ensembles.size(); ++m) {
    rep.per_message.push_back(povm.success(m, ensembles[m]));
    rep.average += prior[m] * rep.per_message.back();
  }
  return {std::move(povm), std::move(rep)};
}

std::pair<Povm, GuessReport> pgm_classical(const std::vector<std::vector<double>>& ensembles,
                                           const std::vector<double>& prior) {
  check_ensembles(ensembles, prior);
  const std::size_t d = ensembles.front().size();
  std::vector<double> s(d, 0.0);
  for (std::size_t m = 0; m < ensembles.size(); ++m) {
    for (std::size_t a = 0; a < d; ++a) s[a] += prior[m] * ensembles[m][a];
  }
  std::vector<std::vector<double>> elements(ensembles.size(), std::vector<double>(d, 0.0));
  for (std::size_t m = 0; m < ensembles.size(); ++m) {
    for (std::size_t a = 0; a < d; ++a) {
      if (s[a] > 0.0) elements[m][a] = prior[m] * ensembles[m][a] / s[a];
    }
  }
  Povm povm = Povm::classical(std::move(elements));
  GuessReport rep;
  rep.strategy = "pgm";
  for (std::size_t m = 0; m < ensembles.size(); ++m) {
    rep.per_message.push_back(povm.success(m, ensembles[m]));
    rep.average += prior[m] * rep.per_message.back();
  }
  return {std::move(povm), std::move(rep)};
}

Projector distinguishing_projector(const ComplexMatrix& rho, const ComplexMatrix& sigma, const NumericConfig& cfg) {
  if (rho.rows() != sigma.rows()) throw ValidationError("distinguishing projector: dimension mismatch");
  return positive_part_projector(rho - sigma, cfg);
}

std::vector<bool> distinguishing_mask(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw ValidationError("distinguishing mask: sizes differ");
  std::vector<bool> m(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) m[a] = p[a] > q[a];
  return m;
}

Povm prop2_povm(const std::vector<Projector>& projectors, const NumericConfig& cfg) {
  if (projectors.empty()) throw ValidationError("prop2 POVM: no projectors");
  const std::size_t dim = projectors.front().ambient_dim();
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<ComplexMatrix> proj;
  for (const auto& p : projectors) {
    if (p.ambient_dim() != dim) throw ValidationError("prop2 POVM: projectors differ in dimension");
    proj.push_back(p.projector());
  }
  std::vector<ComplexMatrix> lambda(proj.size());
  ComplexMatrix others_sum = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < proj.size(); ++k) {
    ComplexMatrix others = ComplexMatrix::Zero(d, d);
    for (std::size_t l = 0; l < proj.size(); ++l) {
      if (l != k) others += proj[l];
    }
    lambda[k] = subspace_meet_kernel(projectors[k], others, cfg).projector();
    if (k > 0) others_sum += lambda[k];
  }
  lambda[0] = ComplexMatrix::Identity(d, d) - others_sum;
  return Povm::quantum(std::move(lambda), cfg);
}

Povm prop2_povm(const std::vector<std::vector<bool>>& masks) {
  if (masks.empty()) throw ValidationError("prop2 POVM: no masks");
  const std::size_t d = masks.front().size();
  std::vector<int> cover(d, 0);
  for (const auto& m : masks) {
    if (m.size() != d) throw ValidationError("prop2 POVM: masks differ in size");
    for (std::size_t a = 0; a < d; ++a) cover[a] += m[a] ? 1 : 0;
  }
  std::vector<std::vector<double>> lambda(masks.size(), std::vector<double>(d, 0.0));
  std::vector<double> rest(d, 1.0);
  for (std::size_t k = 1; k < masks.size(); ++k) {
    for (std::size_t a = 0; a < d; ++a) {
      if (masks[k][a] && cover[a] == 1) {
        lambda[k][a] = 1.0;
        rest[a] = 0.0;
      }
    }
  }
  lambda[0] = std::move(rest);
  return Povm::classical(std::move(lambda));
}

CQState delta_mixture_state(std::size_t z_size, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("delta mixture: delta must lie in [0, 1]");
  const double n = static_cast<double>(z_size);
  std::vector<double> joint(z_size * z_size, (1.0 - delta) / (n * n));
  for (std::size_t z = 0; z < z_size; ++z) joint[z * z_size + z] += delta / n;
  return CQState::from_joint(z_size, z_size, joint);
}

namespace {

std::vector<double> encoded_joint(const CQState& cq, const EncryptionScheme& scheme, std::size_t m) {
  const std::size_t e = cq.e_dim();
  std::vector<double> j(cq.x_size() * e);
  for (std::size_t z = 0; z < cq.x_size(); ++z) {
    const std::size_t c = scheme.encrypt(z, m);
    for (std::size_t k = 0; k < e; ++k) j[c * e + k] = cq.probs()[z] * cq.classical_conditionals()[z][k];
  }
  return j;
}

}  // namespace

std::vector<Prop1Record> prop1_audit(const std::vector<Prop1Case>& cases, SchemeKind scheme_kind,
                                     const std::vector<std::size_t>& message_counts, std::size_t sets_per_case,
                                     std::uint64_t seed, const NumericConfig& cfg) {
  if (sets_per_case < 1) throw ValidationError("prop1 audit: sets_per_case must be >= 1");
  std::vector<Prop1Record> out;
  std::uint64_t stream = 0;
  for (const auto& c : cases) {
    if (c.state.mode() != CQMode::classical) throw ValidationError("prop1 audit: classical c-q states required");
    const std::size_t nz = c.state.x_size();
    const EncryptionScheme scheme(scheme_kind, nz);
    const double td = conversion_error(c.state, HashFunction::identity(nz), Metric::trace, cfg);
    for (std::size_t mc : message_counts) {
      if (mc < 1) throw ValidationError("prop1 audit: message counts must be >= 1");
      for (std::size_t s = 0; s < sets_per_case; ++s, ++stream) {
        Prop1Record rec{c.n, c.delta, mc, s, {}, td, 0.0, td + 1.0 / static_cast<double>(mc), true, false};
        if (mc > nz) {
          rec.skipped = true;
          out.push_back(std::move(rec));
          continue;
        }
        auto g = substream(seed, stream);
        std::vector<std::size_t> pool(nz);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < mc; ++i) std::swap(pool[i], pool[i + uniform_below(g, nz - i)]);
        rec.messages.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(mc));
        std::vector<std::vector<double>> ens;
        for (std::size_t m : rec.messages) ens.push_back(encoded_joint(c.state, scheme, m));
        const GuessReport g_rep = ml_guess_classical(ens, std::vector<double>(mc, 1.0 / static_cast<double>(mc)));
        rec.p_guess = g_rep.average;
        rec.holds = rec.p_guess <= rec.bound + 1e-9;
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

namespace {

struct TrialTally {
  std::uint64_t above = 0;
  std::uint64_t joint = 0;
  double success_sum = 0.0;
};

double binomial_sigma(double theta, std::uint64_t trials) {
  theta = std::clamp(theta, 0.0, 1.0);
  return std::sqrt(theta * (1.0 - theta) / static_cast<double>(trials));
}

std::uint64_t message_count(double c, double eps) {
  if (!(c < 1.0)) return 0;
  const double k = std::floor(std::pow(c, eps - 1.0));
  if (k > kMaxMessagesPerTuple) throw ResourceError("prop2: K = floor(c^(eps-1)) exceeds 1e6 messages per tuple");
  return static_cast<std::uint64_t>(k);
}

// Classical fast path: projectors are atom masks over (c, e).
TrialTally run_classical(const CQState& cq, const EncryptionScheme& scheme, std::uint64_t k_count, double threshold,
                         std::uint64_t trials, std::uint64_t seed, std::uint64_t stream_base, double& c_out,
                         double& pi_rho, double& pi_target) {
  const std::size_t nz = cq.x_size(), ne = cq.e_dim();
  const std::vector<double> joint = cq.joint_weights();
  const std::vector<double> side = cq.side_marginal_weights();
  struct Atom {
    std::size_t z, e;
    double p;
  };
  std::vector<Atom> pi_atoms, support;
  double c = 0.0;
  pi_rho = pi_target = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    for (std::size_t e = 0; e < ne; ++e) {
      const double p = joint[z * ne + e];
      const double t = side[e] / static_cast<double>(nz);
      c += std::min(p, t);
      if (p > 0.0) support.push_back({z, e, p});
      if (p > t) {
        pi_atoms.push_back({z, e, p});
        pi_rho += p;
        pi_target += t;
      }
    }
  }
  c_out = c;
  TrialTally tally;
  if (k_count == 0) return tally;
  std::vector<std::uint32_t> cover(nz * ne, 0), owner(nz * ne, 0);
  std::vector<std::size_t> msgs(k_count);
  std::vector<double> success(k_count);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto g = substream(seed, stream_base + t);
    for (auto& m : msgs) m = static_cast<std::size_t>(uniform_below(g, nz));
    for (std::uint64_t k = 0; k < k_count; ++k) {
      for (const auto& a : pi_atoms) {
        const std::size_t idx = scheme.encrypt(a.z, msgs[k]) * ne + a.e;
        ++cover[idx];
        owner[idx] = static_cast<std::uint32_t>(k);
      }
    }
    for (std::uint64_t k = 1; k < k_count; ++k) {
      double s = 0.0;
      for (const auto& a : pi_atoms) {
        const std::size_t idx = scheme.encrypt(a.z, msgs[k]) * ne + a.e;
        if (cover[idx] == 1 && owner[idx] == k) s += a.p;
      }
      success[k] = s;
    }
    double s0 = 0.0;
    for (const auto& a : support) {
      const std::size_t idx = scheme.encrypt(a.z, msgs[0]) * ne + a.e;
      if (!(cover[idx] == 1 && owner[idx] != 0)) s0 += a.p;
    }
    success[0] = s0;
    for (std::uint64_t k = 0; k < k_count; ++k) {
      for (const auto& a : pi_atoms) cover[scheme.encrypt(a.z, msgs[k]) * ne + a.e] = 0;
    }
    bool all = true;
    for (double s : success) {
      tally.success_sum += s;
      if (s > threshold) {
        ++tally.above;
      } else {
        all = false;
      }
    }
    if (all) ++tally.joint;
  }
  return tally;
}

TrialTally run_quantum(const CQState& cq, const EncryptionScheme& scheme, std::uint64_t k_count, double threshold,
                       std::uint64_t trials, std::uint64_t seed, std::uint64_t stream_base, const NumericConfig& cfg,
                       double& c_out, double& pi_rho, double& pi_target) {
  const std::size_t nz = cq.x_size(), ne = cq.e_dim();
  const ComplexMatrix rho = cq.joint_matrix(cfg);
  const auto ez = static_cast<Eigen::Index>(ne);
  const ComplexMatrix target = kron(ComplexMatrix::Identity(static_cast<Eigen::Index>(nz), static_cast<Eigen::Index>(nz)) /
                                        static_cast<double>(nz),
                                    cq.side_marginal(), cfg);
  const Projector pi = distinguishing_projector(rho, target, cfg);
  pi_rho = pi.trace_with(rho).real();
  pi_target = pi.trace_with(target).real();
  c_out = 1.0 - 0.5 * trace_norm(rho - target);
  TrialTally tally;
  if (k_count == 0) return tally;
  const ComplexMatrix id_e = ComplexMatrix::Identity(ez, ez);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto g = substream(seed, stream_base + t);
    std::vector<ComplexMatrix> us;
    std::vector<Projector> pis;
    for (std::uint64_t k = 0; k < k_count; ++k) {
      us.push_back(kron(scheme.permutation_unitary(static_cast<std::size_t>(uniform_below(g, nz))), id_e, cfg));
      pis.emplace_back(pi.ambient_dim(), us.back() * pi.basis());
    }
    const Povm povm = prop2_povm(pis, cfg);
    bool all = true;
    for (std::uint64_t k = 0; k < k_count; ++k) {
      const double s = povm.success(k, us[k] * rho * us[k].adjoint());
      tally.success_sum += s;
      if (s > threshold) {
        ++tally.above;
      } else {
        all = false;
      }
    }
    if (all) ++tally.joint;
  }
  return tally;
}

}  // namespace

Prop2Report prop2_experiment(const std::vector<std::pair<int, CQState>>& states, SchemeKind scheme_kind, double eps,
                             std::uint64_t trials, std::uint64_t seed, const NumericConfig& cfg) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("prop2: eps must lie in (0, 1)");
  if (trials < 1) throw ValidationError("prop2: trials must be >= 1");
  Prop2Report rep{eps, trials, seed, scheme_name(scheme_kind), {}};
  for (const auto& [n, cq] : states) {
    const EncryptionScheme scheme(scheme_kind, cq.x_size());
    const std::uint64_t stream_base = static_cast<std::uint64_t>(n) << 32;
    Prop2Record rec{};
    rec.n = n;
    // c_n first decides K; the tally pass recomputes it alongside the masks.
    double c = 0.0, pr = 0.0, pt = 0.0;
    if (cq.mode() == CQMode::classical) {
      run_classical(cq, scheme, 0, 0.0, trials, seed, stream_base, c, pr, pt);
    } else {
      run_quantum(cq, scheme, 0, 0.0, trials, seed, stream_base, cfg, c, pr, pt);
    }
    rec.c_n = std::clamp(c, 0.0, 1.0);
    rec.trace_pi_rho = pr;
    rec.trace_pi_target = pt;
    rec.threshold = 1.0 - std::pow(rec.c_n, eps / 2.0);
    rec.bound = 1.0 - 2.0 * std::pow(rec.c_n, eps / 2.0);
    rec.mean_bound = 1.0 - 2.0 * std::pow(rec.c_n, eps);
    rec.sigma = binomial_sigma(rec.bound, trials);
    rec.mean_sigma = binomial_sigma(rec.mean_bound, trials);
    rec.k = message_count(rec.c_n, eps);
    if (rec.k == 0) {
      rec.verdict = "k_guard";
      rep.records.push_back(std::move(rec));
      continue;
    }
    const TrialTally tally = cq.mode() == CQMode::classical
                                 ? run_classical(cq, scheme, rec.k, rec.threshold, trials, seed, stream_base, c, pr, pt)
                                 : run_quantum(cq, scheme, rec.k, rec.threshold, trials, seed, stream_base, cfg, c, pr, pt);
    const double pairs = static_cast<double>(trials) * static_cast<double>(rec.k);
    rec.empirical_fraction = static_cast<double>(tally.above) / pairs;
    rec.mean_success = tally.success_sum / pairs;
    rec.joint_fraction = static_cast<double>(tally.joint) / static_cast<double>(trials);
    const bool ok = rec.empirical_fraction >= rec.bound - 3.0 * rec.sigma &&
                    rec.mean_success >= rec.mean_bound - 3.0 * rec.mean_sigma;
    rec.verdict = ok ? "pass" : "fail";
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace scx
