#pragma once

// Method-of-types engine for i.i.d. classical distributions. Everything is
// kept in the log2 domain so that p^{(x)n} survives n in the thousands.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "scx/errors.hpp"
#include "scx/numkit.hpp"

namespace scx {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// Streaming log2(sum_i 2^{x_i}).
class Log2Sum {
 public:
  void add(double log2_term) {
    if (log2_term == kNegInf) return;
    if (log2_term > max_) {
      acc_ = acc_ * std::exp2(max_ - log2_term) + 1.0;
      max_ = log2_term;
    } else {
      acc_ += std::exp2(log2_term - max_);
    }
  }
  void merge(const Log2Sum& other) {
    if (other.max_ == kNegInf) return;
    add_scaled(other.max_, other.acc_);
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log2(acc_); }
  double linear() const { return max_ == kNegInf ? 0.0 : std::exp2(value()); }
  bool empty() const { return max_ == kNegInf; }

 private:
  void add_scaled(double log2_base, double mult) {
    if (log2_base > max_) {
      acc_ = acc_ * std::exp2(max_ - log2_base) + mult;
      max_ = log2_base;
    } else {
      acc_ += mult * std::exp2(log2_base - max_);
    }
  }

  double max_ = kNegInf;
  double acc_ = 0.0;
};

inline double log2_or_neg_inf(double x) { return x > 0.0 ? std::log2(x) : kNegInf; }

/// log2(k!) for k = 0..n, accumulated term by term.
class Log2Factorials {
 public:
  explicit Log2Factorials(int n) : table_(static_cast<std::size_t>(n) + 1, 0.0) {
    for (int k = 2; k <= n; ++k) table_[k] = table_[k - 1] + std::log2(static_cast<double>(k));
  }
  double operator()(int k) const { return table_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<double> table_;
};

/// Number of count vectors of length d summing to n, C(n+d-1, d-1), as a
/// double (exact while below 2^53).
double type_class_count(std::size_t d, int n);

namespace detail {

template <class Visitor>
void compositions_from(std::vector<int>& k, std::size_t pos, int remaining, Visitor& visit) {
  if (pos + 1 == k.size()) {
    k[pos] = remaining;
    visit(std::span<const int>(k));
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    k[pos] = v;
    compositions_from(k, pos + 1, remaining - v, visit);
  }
}

}  // namespace detail

/// Visits every count vector of length d summing to n.
template <class Visitor>
void for_each_composition(std::size_t d, int n, Visitor&& visit) {
  if (d == 0) return;
  std::vector<int> k(d, 0);
  detail::compositions_from(k, 0, n, visit);
}

struct TypeClass {
  std::vector<int> counts;
  double log2_weight;        // log2 of the probability of one string in the class
  double log2_multiplicity;  // log2 of the multinomial coefficient
};

/// Compressed representation of p^{(x)n} by multinomial type classes.
struct TypeClassEnsemble {
  std::size_t alphabet_size = 0;
  int power = 0;
  std::vector<TypeClass> classes;

  /// log2 of the total mass, sum over classes of 2^{mult + weight}.
  double log2_total_mass() const;
};

TypeClassEnsemble iid_type_classes(const ClassicalDistribution& p, int n, const NumericConfig& cfg = {});

/// One group of atoms of (p^{(x)n}, q^{(x)n}) that share both atom values.
struct PairAtomClass {
  double log2_count;
  double log2_p;
  double log2_q;
};

namespace detail {

struct LumpedPair {
  std::vector<double> log2_p;
  std::vector<double> log2_q;
  std::vector<double> log2_mult;  // log2 of the number of merged symbols
};

/// Merges symbols with bit-identical (p_i, q_i); drops symbols where both
/// vanish. Exact: the merged multiplicity enters each class as k_s log2 m_s.
LumpedPair lump_pair(const ClassicalMeasure& p, const ClassicalMeasure& q);

void check_class_budget(std::size_t d, int n, const NumericConfig& cfg);

}  // namespace detail

/// Visits the type classes of the pair (p^{(x)n}, q^{(x)n}) over a shared
/// string index. Each call reports how many strings share the atom values.
template <class Visitor>
void for_each_pair_class(const ClassicalMeasure& p, const ClassicalMeasure& q, int n,
                         const NumericConfig& cfg, Visitor&& visit) {
  if (p.size() != q.size()) throw ValidationError("pair classes: alphabet sizes differ");
  if (n < 1) throw ValidationError("pair classes: n must be >= 1");
  const detail::LumpedPair lp = detail::lump_pair(p, q);
  const std::size_t d = lp.log2_p.size();
  if (d == 0) return;
  detail::check_class_budget(d, n, cfg);
  const Log2Factorials lf(n);
  for_each_composition(d, n, [&](std::span<const int> k) {
    double log2_count = lf(n);
    double lpv = 0.0;
    double lqv = 0.0;
    for (std::size_t s = 0; s < d; ++s) {
      if (k[s] == 0) continue;
      log2_count += k[s] * lp.log2_mult[s] - lf(k[s]);
      lpv += k[s] * lp.log2_p[s];
      lqv += k[s] * lp.log2_q[s];
    }
    visit(PairAtomClass{log2_count, lpv, lqv});
  });
}

}  // namespace scx
