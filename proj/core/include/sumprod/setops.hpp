#pragma once

#include <cstdint>

#include "sumprod/config.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

namespace sumprod {

// Pairwise set algebra. Each result is deduplicated; results larger than
// config.set_budget raise BudgetExceeded.

RationalSet product_set(const RationalSet& A, const RationalSet& B, const RunConfig& config = {});
RationalSet sum_set(const RationalSet& A, const RationalSet& B, const RunConfig& config = {});
RationalSet difference_set(const RationalSet& A, const RationalSet& B, const RunConfig& config = {});
/// {a/b}; throws InvalidArgument when 0 is in B.
RationalSet ratio_set(const RationalSet& A, const RationalSet& B, const RunConfig& config = {});

/// A^(k) by k-1 pairwise products with deduplication after each stage.
RationalSet k_fold_product(const RationalSet& A, int k, const RunConfig& config = {});
/// kA by iterated pairwise sums.
RationalSet k_fold_sum(const RationalSet& A, int k, const RunConfig& config = {});
/// (A+u)^(k); u must be nonzero.
RationalSet shifted_k_fold_product(const RationalSet& A, const Rational& u, int k,
                                   const RunConfig& config = {});

RationalSet translate(const RationalSet& A, const Rational& u);
RationalSet dilate(const RationalSet& A, const Rational& lambda);

/// |AA| / |A| for nonempty A with 0 not in A.
Rational doubling_constant(const RationalSet& A, const RunConfig& config = {});

struct MultiplicativeDimension {
  /// Affine dimension of the valuation vectors of |a|, a in A.
  long dimension = 0;
  /// Whether the sign of each element is an affine function of its valuation
  /// vector modulo 2 (always true for sets of positive rationals).
  bool signs_consistent = true;
  bool has_negative = false;
};

/// Throws InvalidArgument when 0 is in A or A is empty.
MultiplicativeDimension multiplicative_dimension(const RationalSet& A);

struct PlunneckeReport {
  int h = 0;
  std::uint64_t product_size = 0;  // |A^(h)|
  Rational doubling;               // K = |AA|/|A|
  Rational bound;                  // K^h |A|
  bool holds = false;
};

/// Multiplicative Plünnecke instance |A^(h)| <= K^h |A|.
PlunneckeReport plunnecke_check(const RationalSet& A, int h, const RunConfig& config = {});

struct RuzsaTriangleReport {
  std::uint64_t ratio_size = 0;  // |A/A|
  Rational bound;                // |AA|^2 / |A|
  bool holds = false;
};

/// Ruzsa triangle instance |A/A| <= |AA|^2 / |A|.
RuzsaTriangleReport ruzsa_triangle_check(const RationalSet& A, const RunConfig& config = {});

}  // namespace sumprod
