#include "sumprod/setops.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "sumprod/error.hpp"
#include "sumprod/factor.hpp"
#include "sumprod/parallel.hpp"

namespace sumprod {
namespace {

template <typename Op>
RationalSet pairwise(const RationalSet& A, const RationalSet& B, const RunConfig& config,
                     const char* name, Op op) {
  if (A.empty() || B.empty()) return {};
  // One slot per element of A; each slot is sorted and deduplicated locally
  // so that memory stays proportional to the distinct results.
  std::vector<std::vector<Rational>> slots(A.size());
  parallel_for(A.size(), config.resolved_threads(), [&](std::size_t i) {
    auto& out = slots[i];
    out.reserve(B.size());
    for (const Rational& b : B) out.push_back(op(A[i], b));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  });
  std::vector<Rational> merged;
  for (auto& slot : slots) {
    merged.insert(merged.end(), std::make_move_iterator(slot.begin()),
                  std::make_move_iterator(slot.end()));
    slot.clear();
    slot.shrink_to_fit();
    if (merged.size() > 2 * config.set_budget) {
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      if (merged.size() > config.set_budget) {
        throw BudgetExceeded(name, merged.size(), config.set_budget);
      }
    }
  }
  RationalSet result(std::move(merged));
  if (result.size() > config.set_budget) {
    throw BudgetExceeded(name, result.size(), config.set_budget);
  }
  return result;
}

void require_k(int k) {
  if (k < 1) throw InvalidArgument("k must be >= 1, got " + std::to_string(k));
}

// Rank of an integer matrix over Q by Gaussian elimination on exact rationals.
long rational_rank(std::vector<std::vector<mpq_class>> rows, std::size_t cols) {
  long rank = 0;
  std::size_t r0 = 0;
  for (std::size_t c = 0; c < cols && r0 < rows.size(); ++c) {
    std::size_t pivot = r0;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r0]);
    for (std::size_t r = r0 + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const mpq_class f = rows[r][c] / rows[r0][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[r0][j];
    }
    ++r0;
    ++rank;
  }
  return rank;
}

// Solvability of M x = s over GF(2).
bool gf2_solvable(std::vector<std::vector<std::uint8_t>> rows, std::vector<std::uint8_t> rhs) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::size_t r0 = 0;
  for (std::size_t c = 0; c < cols && r0 < rows.size(); ++c) {
    std::size_t pivot = r0;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r0]);
    std::swap(rhs[pivot], rhs[r0]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == r0 || rows[r][c] == 0) continue;
      for (std::size_t j = c; j < cols; ++j) rows[r][j] ^= rows[r0][j];
      rhs[r] ^= rhs[r0];
    }
    ++r0;
  }
  for (std::size_t r = r0; r < rows.size(); ++r) {
    if (rhs[r] != 0) return false;
  }
  return true;
}

}  // namespace

RationalSet product_set(const RationalSet& A, const RationalSet& B, const RunConfig& config) {
  return pairwise(A, B, config, "product_set", [](const Rational& a, const Rational& b) { return a * b; });
}

RationalSet sum_set(const RationalSet& A, const RationalSet& B, const RunConfig& config) {
  return pairwise(A, B, config, "sum_set", [](const Rational& a, const Rational& b) { return a + b; });
}

RationalSet difference_set(const RationalSet& A, const RationalSet& B, const RunConfig& config) {
  return pairwise(A, B, config, "difference_set",
                  [](const Rational& a, const Rational& b) { return a - b; });
}

RationalSet ratio_set(const RationalSet& A, const RationalSet& B, const RunConfig& config) {
  if (B.contains_zero()) throw InvalidArgument("ratio_set: 0 is in the denominator set");
  return pairwise(A, B, config, "ratio_set", [](const Rational& a, const Rational& b) { return a / b; });
}

RationalSet k_fold_product(const RationalSet& A, int k, const RunConfig& config) {
  require_k(k);
  RationalSet result = A;
  for (int j = 2; j <= k; ++j) result = product_set(result, A, config);
  return result;
}

RationalSet k_fold_sum(const RationalSet& A, int k, const RunConfig& config) {
  require_k(k);
  RationalSet result = A;
  for (int j = 2; j <= k; ++j) result = sum_set(result, A, config);
  return result;
}

RationalSet shifted_k_fold_product(const RationalSet& A, const Rational& u, int k,
                                   const RunConfig& config) {
  if (u.is_zero()) throw InvalidArgument("shift u must be nonzero");
  require_k(k);
  return k_fold_product(translate(A, u), k, config);
}

RationalSet translate(const RationalSet& A, const Rational& u) {
  std::vector<Rational> out;
  out.reserve(A.size());
  for (const Rational& a : A) out.push_back(a + u);
  return RationalSet(std::move(out));
}

RationalSet dilate(const RationalSet& A, const Rational& lambda) {
  std::vector<Rational> out;
  out.reserve(A.size());
  for (const Rational& a : A) out.push_back(a * lambda);
  return RationalSet(std::move(out));
}

Rational doubling_constant(const RationalSet& A, const RunConfig& config) {
  if (A.empty()) throw InvalidArgument("doubling_constant: empty set");
  if (A.contains_zero()) throw InvalidArgument("doubling_constant: 0 is in the set");
  const auto aa = product_set(A, A, config);
  return Rational::canonicalize(static_cast<long>(aa.size()), static_cast<long>(A.size()));
}

MultiplicativeDimension multiplicative_dimension(const RationalSet& A) {
  if (A.empty()) throw InvalidArgument("multiplicative_dimension: empty set");
  const ValuationEmbedding emb = valuation_embedding(A);  // rejects 0
  MultiplicativeDimension out;
  const std::size_t t = emb.primes.size();
  const auto& base = emb.vectors.front();

  std::vector<std::vector<mpq_class>> rows;
  for (std::size_t i = 1; i < emb.vectors.size(); ++i) {
    std::vector<mpq_class> row(t);
    for (std::size_t j = 0; j < t; ++j) row[j] = emb.vectors[i][j] - base[j];
    rows.push_back(std::move(row));
  }
  out.dimension = rational_rank(std::move(rows), t);

  out.has_negative = std::any_of(emb.signs.begin(), emb.signs.end(), [](int s) { return s < 0; });
  if (out.has_negative) {
    std::vector<std::vector<std::uint8_t>> gf_rows;
    std::vector<std::uint8_t> rhs;
    for (std::size_t i = 0; i < emb.vectors.size(); ++i) {
      std::vector<std::uint8_t> row(t + 1);
      row[0] = 1;
      for (std::size_t j = 0; j < t; ++j) row[j + 1] = static_cast<std::uint8_t>(emb.vectors[i][j] & 1);
      gf_rows.push_back(std::move(row));
      rhs.push_back(emb.signs[i] < 0 ? 1 : 0);
    }
    out.signs_consistent = gf2_solvable(std::move(gf_rows), std::move(rhs));
  }
  return out;
}

PlunneckeReport plunnecke_check(const RationalSet& A, int h, const RunConfig& config) {
  require_k(h);
  PlunneckeReport r;
  r.h = h;
  r.doubling = doubling_constant(A, config);
  r.product_size = k_fold_product(A, h, config).size();
  r.bound = r.doubling.pow(h) * Rational(static_cast<long>(A.size()));
  r.holds = Rational(static_cast<long>(r.product_size)) <= r.bound;
  return r;
}

RuzsaTriangleReport ruzsa_triangle_check(const RationalSet& A, const RunConfig& config) {
  if (A.empty()) throw InvalidArgument("ruzsa_triangle_check: empty set");
  RuzsaTriangleReport r;
  r.ratio_size = ratio_set(A, A, config).size();
  const long aa = static_cast<long>(product_set(A, A, config).size());
  r.bound = Rational::canonicalize(aa * aa, static_cast<long>(A.size()));
  r.holds = Rational(static_cast<long>(r.ratio_size)) <= r.bound;
  return r;
}

}  // namespace sumprod
