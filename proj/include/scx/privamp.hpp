#pragma once

// Privacy amplification: hashing the classical register of a c-q state and
// measuring how far the result is from a uniform key decoupled from E.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scx/cq_state.hpp"
#include "scx/hypothesis.hpp"
#include "scx/smoothing.hpp"

namespace scx {

class HashFunction {
 public:
  HashFunction(std::vector<std::size_t> table, std::size_t codomain);
  static HashFunction identity(std::size_t n);
  /// x -> ((a x + b) mod P) mod |Z|, P the smallest prime >= |X|.
  static HashFunction affine_modular(std::size_t x_size, std::size_t z_size, std::uint64_t a, std::uint64_t b);

  const std::vector<std::size_t>& table() const { return table_; }
  std::size_t domain() const { return table_.size(); }
  std::size_t codomain() const { return codomain_; }
  std::size_t operator()(std::size_t x) const { return table_[x]; }

 private:
  std::vector<std::size_t> table_;
  std::size_t codomain_;
};

std::uint64_t smallest_prime_at_least(std::uint64_t n);

enum class Metric { trace, purified };
enum class Aggregate { min, mean };

const char* metric_name(Metric m);

CQState apply_hash(const CQState& cq, const HashFunction& f, const NumericConfig& cfg = {});

/// Distance between the hashed state and (1_Z/|Z|) (x) rho_E.
double conversion_error(const CQState& cq, const HashFunction& f, Metric metric, const NumericConfig& cfg = {});

struct ConversionReport {
  Metric metric = Metric::trace;
  Aggregate aggregate = Aggregate::min;
  double error = 0.0;
  std::optional<HashFunction> hash;  // the minimizing hash
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr double kMaxEnumeratedFunctions = 1e7;

/// Minimum over all |Z|^|X| functions; ResourceError above 1e7 functions.
ConversionReport min_conversion_exhaustive(const CQState& cq, std::size_t z_size, Metric metric,
                                           const NumericConfig& cfg = {});

/// Min or mean over `trials` affine-modular hashes; trial k draws (a, b) from
/// substream(seed, k).
ConversionReport min_or_avg_conversion_sampled(const CQState& cq, std::size_t z_size, std::uint64_t trials,
                                               std::uint64_t seed, Aggregate aggregate, Metric metric,
                                               const NumericConfig& cfg = {});

struct KeyLength {
  std::size_t z_size;
  double bits;
};

/// Largest log2|Z| over |Z| = 1..|X| whose minimal conversion error is <= eps.
KeyLength key_length_bruteforce(const CQState& cq, double eps, Metric metric, const NumericConfig& cfg = {});

struct Theorem2Bounds {
  double trace_bound;
  double purified_bound;
  double alpha;
};

/// purified = sup over alpha in [0,1] of (1-alpha)(R - H_alpha(X|E)), trace = purified / 2.
Theorem2Bounds theorem2_bounds(const CQState& cq, double rate, const NumericConfig& cfg = {});

/// eps(rho_{X^n E^n} || 1 (x) rho_{E^n}, r_n) for a classical c-q state with
/// r_n = -nR, or r_n = -log2 floor(2^{nR}) when exact_floor is set.
SmoothingValue pa_epsilon_floor(const CQState& cq, int n, double rate, bool exact_floor = false,
                                const NumericConfig& cfg = {});

/// log2 floor(2^{nR}); the key size of the n-copy protocol at rate R.
double log2_key_size(int n, double rate);
/// floor(2^{nR}) itself; ResourceError once it no longer fits in 62 bits.
std::uint64_t key_size(int n, double rate);

}  // namespace scx
