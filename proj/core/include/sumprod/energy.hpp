#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sumprod/config.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

namespace sumprod {

/// A set with nonnegative weights aligned to its sorted elements.
struct WeightedSet {
  RationalSet base;
  std::vector<double> weights;

  /// w_a = |A|^{-1/2} for every a, so that the squares sum to 1.
  static WeightedSet uniform(const RationalSet& A);
  /// Throws InvalidArgument on a size mismatch or a negative weight.
  static WeightedSet make(const RationalSet& A, std::vector<double> weights);

  double weight_of(const Rational& a) const;
  /// Sum of squared weights equals 1 within 1e-12.
  bool normalized() const;
  /// Restriction to a subset of the base set.
  WeightedSet restrict_to(const RationalSet& subset) const;
};

/// Exact nonnegative integer in unweighted mode, a real otherwise.
struct EnergyValue {
  bool weighted = false;
  Integer exact;
  double real = 0.0;

  double as_double() const { return weighted ? real : exact.get_d(); }
};

struct RepEntry {
  Rational x;  // a_1 ... a_k
  Rational y;  // (a_1 + u) ... (a_k + u)
  std::uint64_t count = 0;
  double weight_mass = 0.0;  // sum over the tuples of prod w_{a_i}; weighted tables only
};

/// The representation function r_k(x, y) on its support, sorted by (x, y).
struct RepTable {
  int k = 0;
  Rational u;
  bool weighted = false;
  std::vector<RepEntry> entries;

  std::uint64_t total_count() const;
  /// Second moment: sum of count^2 (unweighted) or weight_mass^2.
  EnergyValue second_moment() const;
};

/// Enumerates A^k lexicographically with exact Rational products.
RepTable rep_table(const RationalSet& A, const Rational& u, int k, const RunConfig& config = {});
RepTable weighted_rep_table(const WeightedSet& A, const Rational& u, int k,
                            const RunConfig& config = {});

/// Number of 2k-tuples with equal products and equal shifted products.
EnergyValue mixed_energy(const RationalSet& A, const Rational& u, int k, const RunConfig& config = {});
EnergyValue weighted_mixed_energy(const WeightedSet& A, const Rational& u, int k,
                                  const RunConfig& config = {});

/// Solutions of a_1 + ... + a_k = a_{k+1} + ... + a_{2k}.
EnergyValue additive_energy_kfold(const RationalSet& A, int k, const RunConfig& config = {});
/// Solutions of (a_1+u)...(a_k+u) = (a_{k+1}+u)...(a_{2k}+u).
EnergyValue multiplicative_energy_shifted(const RationalSet& A, const Rational& u, int k,
                                          const RunConfig& config = {});
/// Solutions of a_1...a_k = a_{k+1}...a_{2k}.
EnergyValue multiplicative_energy(const RationalSet& A, int k, const RunConfig& config = {});

/// The degree-2k form w -> E~_{k,w}(A;u) with every k-tuple's (x, y) key
/// resolved once, for repeated evaluation under changing weights.
class MixedEnergyForm {
 public:
  MixedEnergyForm(const RationalSet& A, const Rational& u, int k, const RunConfig& config = {});

  std::size_t dimension() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::size_t key_count() const noexcept { return key_count_; }

  double value(std::span<const double> w) const;
  /// Value and gradient in one pass; grad must have dimension() entries.
  double value_and_gradient(std::span<const double> w, std::span<double> grad) const;
  /// Value at w = 1 (the unweighted energy), exact.
  Integer unweighted() const;

 private:
  std::size_t n_;
  int k_;
  std::size_t key_count_ = 0;
  std::vector<std::uint32_t> tuple_key_;  // lexicographic tuple order
};

/// Cells A_d = {a : v_p(a) = d}. Throws InvalidArgument when 0 is in A.
std::map<long, RationalSet> padic_split(const RationalSet& A, const Integer& p);
/// Cells keyed by the joint valuation vector over `primes`.
std::map<std::vector<long>, RationalSet> multiprime_split(const RationalSet& A,
                                                         const std::vector<Integer>& primes);

struct CauchySchwarzReport {
  int k = 0;
  Integer lhs;  // |A|^{2k}
  std::uint64_t product_size = 0;
  std::uint64_t shifted_size = 0;
  Integer energy;
  Integer rhs;    // |A^(k)| |(A+u)^(k)| E~_k
  Rational slack;  // rhs / lhs
  bool holds = false;
};

/// |A|^{2k} <= |A^(k)| |(A+u)^(k)| E~_k(A;u), all exact.
CauchySchwarzReport verify_cs_chain(const RationalSet& A, const Rational& u, int k,
                                    const RunConfig& config = {});

struct SplitCell {
  std::vector<long> valuation;
  std::size_t size = 0;
  double energy = 0.0;  // E~_{k,w}(A_d; u)
  double root = 0.0;    // its k-th root
};

struct SplitReport {
  int k = 0;
  std::vector<Integer> primes;
  double lhs = 0.0;          // E~_{k,w}(A;u)^{1/k}
  double rhs_sum = 0.0;      // sum over cells of E~_{k,w}(A_d;u)^{1/k}
  double coefficient = 0.0;  // (2 binom(2k,2))^{|primes|}
  double rhs = 0.0;          // coefficient * rhs_sum
  std::vector<SplitCell> cells;
  bool holds = false;
};

/// Relative tolerance applied to the k-th root comparisons.
inline constexpr double kRootTolerance = 1e-9;

/// 2 binom(2k, 2) = 2k(2k-1).
std::uint64_t split_coefficient(int k);

/// One-prime splitting inequality over the cells of padic_split.
SplitReport verify_basecase_split(const WeightedSet& A, const Rational& u, const Integer& p, int k,
                                  const RunConfig& config = {});
/// K-prime splitting inequality over joint valuation cells.
SplitReport verify_multiprime_split(const WeightedSet& A, const Rational& u,
                                    const std::vector<Integer>& primes, int k,
                                    const RunConfig& config = {});

}  // namespace sumprod
