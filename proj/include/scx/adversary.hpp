#pragma once

// Eavesdropper experiments on one-time-pad style encryption with a key taken
// from a c-q state rho_{ZE}: encoded ensembles, guessing strategies and the
// two message-guessing experiments.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scx/cq_state.hpp"
#include "scx/numkit.hpp"

namespace scx {

enum class SchemeKind { modular_add, xor_ };

/// c = E_z(m) over Z = {0, ..., N-1}; bijective in z and in m.
class EncryptionScheme {
 public:
  EncryptionScheme(SchemeKind kind, std::size_t z_size);

  SchemeKind kind() const { return kind_; }
  std::size_t z_size() const { return n_; }
  std::size_t encrypt(std::size_t z, std::size_t m) const { return kind_ == SchemeKind::modular_add ? (z + m) % n_ : z ^ m; }
  /// The key z with E_z(m) = c.
  std::size_t key_for(std::size_t c, std::size_t m) const {
    return kind_ == SchemeKind::modular_add ? (c + n_ - m % n_) % n_ : c ^ m;
  }
  /// U_m |z> = |E_z(m)>.
  ComplexMatrix permutation_unitary(std::size_t m) const;

 private:
  SchemeKind kind_;
  std::size_t n_;
};

SchemeKind parse_scheme(const std::string& name);
const char* scheme_name(SchemeKind k);

/// rho^m = (U_m (x) 1) rho_{ZE} (U_m^* (x) 1), returned as a c-q state.
CQState encode_ensemble(const CQState& cq, const EncryptionScheme& scheme, std::size_t m, const NumericConfig& cfg = {});

struct GuessReport {
  std::vector<double> per_message;
  double average = 0.0;
  std::string strategy;
  std::uint64_t seed = 0;
};

/// Optimal guessing for commuting ensembles; each ensemble is a weight vector
/// over the same atoms. Ties go to the smallest message index.
GuessReport ml_guess_classical(const std::vector<std::vector<double>>& ensembles, const std::vector<double>& prior);

/// 1/2 (1 + ||q1 rho1 - (1-q1) rho2||_1).
double helstrom_binary(const DensityOperator& rho1, const DensityOperator& rho2, double q1);

/// Measurement; classical POVMs store the diagonals only.
class Povm {
 public:
  static Povm quantum(std::vector<ComplexMatrix> elements, const NumericConfig& cfg = {});
  static Povm classical(std::vector<std::vector<double>> elements, const NumericConfig& cfg = {});

  bool is_classical() const { return classical_; }
  std::size_t size() const { return classical_ ? diag_.size() : mats_.size(); }
  const std::vector<ComplexMatrix>& elements() const { return mats_; }
  const std::vector<std::vector<double>>& diagonal_elements() const { return diag_; }
  /// Number of elements before the completion (if one was appended).
  std::size_t outcomes() const { return outcomes_; }
  double success(std::size_t k, const ComplexMatrix& rho) const;
  double success(std::size_t k, const std::vector<double>& weights) const;

 private:
  bool classical_ = false;
  std::size_t outcomes_ = 0;
  std::vector<ComplexMatrix> mats_;
  std::vector<std::vector<double>> diag_;
};

/// Pretty-good measurement S^{-1/2} q_m rho_m S^{-1/2}, S = sum q_m rho_m.
std::pair<Povm, GuessReport> pgm(const std::vector<ComplexMatrix>& ensembles, const std::vector<double>& prior,
                                 const NumericConfig& cfg = {});
std::pair<Povm, GuessReport> pgm_classical(const std::vector<std::vector<double>>& ensembles,
                                           const std::vector<double>& prior);

/// Projector onto the strictly positive part of rho - sigma.
Projector distinguishing_projector(const ComplexMatrix& rho, const ComplexMatrix& sigma, const NumericConfig& cfg = {});
std::vector<bool> distinguishing_mask(const std::vector<double>& p, const std::vector<double>& q);

/// Lambda_m projects onto supp(pi_m) minus the supports of the others; the
/// residual 1 - sum goes to message 0.
Povm prop2_povm(const std::vector<Projector>& projectors, const NumericConfig& cfg = {});
Povm prop2_povm(const std::vector<std::vector<bool>>& masks);

/// (1 - delta) (1_Z/|Z|) (x) (1_E/|E|) + delta (perfectly correlated), E = copy of Z.
CQState delta_mixture_state(std::size_t z_size, double delta);

struct Prop1Record {
  int n;
  double delta;
  std::size_t message_count;
  std::size_t set_index;
  std::vector<std::size_t> messages;
  double trace_distance;
  double p_guess;
  double bound;
  bool holds;
  bool skipped;  // fewer keys than messages
};

struct Prop1Case {
  int n;
  double delta;
  CQState state;
};

std::vector<Prop1Record> prop1_audit(const std::vector<Prop1Case>& cases, SchemeKind scheme,
                                     const std::vector<std::size_t>& message_counts, std::size_t sets_per_case,
                                     std::uint64_t seed, const NumericConfig& cfg = {});

struct Prop2Record {
  int n;
  double c_n;
  std::uint64_t k;
  double trace_pi_rho;     // Tr(pi rho)
  double trace_pi_target;  // Tr(pi (1/|Z| (x) rho_E))
  double empirical_fraction;
  double threshold;  // 1 - c^{eps/2}
  double bound;      // 1 - 2 c^{eps/2}
  double sigma;
  double mean_success;
  double mean_bound;  // 1 - 2 c^{eps}
  double mean_sigma;
  double joint_fraction;  // tuples where every message clears the threshold
  std::string verdict;    // pass, fail, k_guard
};

struct Prop2Report {
  double eps;
  std::uint64_t trials;
  std::uint64_t seed;
  std::string scheme;
  std::vector<Prop2Record> records;
};

/// Monte-Carlo over `trials` message tuples of K = floor(c_n^{eps-1}) i.i.d.
/// uniform keys per state in the sequence.
Prop2Report prop2_experiment(const std::vector<std::pair<int, CQState>>& states, SchemeKind scheme, double eps,
                             std::uint64_t trials, std::uint64_t seed, const NumericConfig& cfg = {});

}  // namespace scx
