#include "sumprod/applications.hpp"

#include <algorithm>
#include <cmath>

#include "sumprod/error.hpp"
#include "sumprod/parallel.hpp"
#include "sumprod/setops.hpp"

namespace sumprod {
namespace {

void require_k(int k) {
  if (k < 1) throw InvalidArgument("k must be >= 1, got " + std::to_string(k));
}

void require_shift(const RationalSet& A, const Rational& u) {
  if (u.is_zero()) throw InvalidArgument("shift u must be nonzero");
  if (A.contains_zero()) throw InvalidArgument("the set must not contain 0");
}

double log_size(std::uint64_t n) { return std::log(static_cast<double>(n)); }

void tally(IncidenceReport& r, LineClass c, std::uint64_t hits) {
  r.total += hits;
  switch (c) {
    case LineClass::kAxisParallel: r.axis_parallel += hits; break;
    case LineClass::kThroughOrigin: r.through_origin += hits; break;
    case LineClass::kIrrationalSlope: r.irrational_slope += hits; break;
    case LineClass::kGeneric: r.generic += hits; break;
  }
  r.per_line.push_back(hits);
}

}  // namespace

LineSolutionReport count_line_solutions(const RationalSet& A, const Rational& c1, const Rational& c2,
                                        const RunConfig& config) {
  if (c1.is_zero() || c2.is_zero()) throw InvalidArgument("count_line_solutions: coefficients must be nonzero");
  std::vector<LineSolutionReport> slots(A.size());
  parallel_for(A.size(), config.resolved_threads(), [&](std::size_t i) {
    const Rational x2 = (Rational(1) - c1 * A[i]) / c2;
    if (A.contains(x2)) {
      slots[i].count = 1;
      slots[i].zero_coordinate = (A[i].is_zero() || x2.is_zero()) ? 1 : 0;
    }
  });
  LineSolutionReport r;
  for (const auto& s : slots) {
    r.count += s.count;
    r.zero_coordinate += s.zero_coordinate;
  }
  return r;
}

std::string to_string(LineClass c) {
  switch (c) {
    case LineClass::kAxisParallel: return "axis_parallel";
    case LineClass::kThroughOrigin: return "through_origin";
    case LineClass::kIrrationalSlope: return "irrational_slope";
    case LineClass::kGeneric: return "generic";
  }
  return "unknown";
}

LineClass classify(const Line& line) {
  if (line.a.is_zero() && line.b.is_zero()) {
    throw InvalidArgument("degenerate line 0x + 0y = " + line.c.to_string());
  }
  if (line.a.is_zero() || line.b.is_zero()) return LineClass::kAxisParallel;
  if (line.c.is_zero()) return LineClass::kThroughOrigin;
  return LineClass::kGeneric;
}

IncidenceReport count_incidences(const RationalSet& A, const std::vector<Line>& lines, const RunConfig& config) {
  std::vector<LineClass> classes;
  classes.reserve(lines.size());
  for (const Line& l : lines) classes.push_back(classify(l));
  std::vector<std::uint64_t> hits(lines.size(), 0);
  parallel_for(lines.size(), config.resolved_threads(), [&](std::size_t i) {
    const Line& l = lines[i];
    if (l.b.is_zero()) {
      // x = c/a: every y in A.
      hits[i] = A.contains(l.c / l.a) ? A.size() : 0;
      return;
    }
    std::uint64_t h = 0;
    for (const Rational& x : A) {
      if (A.contains((l.c - l.a * x) / l.b)) ++h;
    }
    hits[i] = h;
  });
  IncidenceReport r;
  r.points = static_cast<std::uint64_t>(A.size()) * A.size();
  r.lines = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) tally(r, classes[i], hits[i]);
  return r;
}

IncidenceReport count_incidences_naive(const RationalSet& A, const std::vector<Line>& lines) {
  IncidenceReport r;
  r.points = static_cast<std::uint64_t>(A.size()) * A.size();
  r.lines = lines.size();
  for (const Line& l : lines) {
    const LineClass c = classify(l);
    std::uint64_t h = 0;
    for (const Rational& x : A) {
      for (const Rational& y : A) {
        if (l.a * x + l.b * y == l.c) ++h;
      }
    }
    tally(r, c, h);
  }
  return r;
}

BasisReport additive_basis_count(const RationalSet& A, const RationalSet& B, const RationalSet& B_prime,
                                 const RunConfig& config) {
  std::vector<std::vector<std::uint32_t>> slices(B.size());
  parallel_for(B.size(), config.resolved_threads(), [&](std::size_t i) {
    for (std::uint32_t j = 0; j < B_prime.size(); ++j) {
      if (A.contains(B[i] + B_prime[j])) slices[i].push_back(j);
    }
  });
  BasisReport r;
  for (const auto& s : slices) {
    r.slices.push_back(s.size());
    r.count += s.size();
  }
  std::vector<std::uint64_t> best(B.size(), 0);
  parallel_for(B.size(), config.resolved_threads(), [&](std::size_t i) {
    std::vector<std::uint32_t> common;
    for (std::size_t j = i + 1; j < B.size(); ++j) {
      common.clear();
      std::set_intersection(slices[i].begin(), slices[i].end(), slices[j].begin(), slices[j].end(),
                            std::back_inserter(common));
      best[i] = std::max<std::uint64_t>(best[i], common.size());
    }
  });
  for (auto b : best) r.max_intersection = std::max(r.max_intersection, b);
  return r;
}

GrowthReport growth_experiment(const RationalSet& A, const Rational& u, int k_max, const RunConfig& config) {
  require_k(k_max);
  require_shift(A, u);
  if (A.empty()) throw InvalidArgument("growth_experiment: empty set");
  GrowthReport r;
  const RationalSet shifted = translate(A, u);
  RationalSet prod = A, sprod = shifted;
  const double denom = log_size(A.size());
  for (int j = 1; j <= k_max; ++j) {
    try {
      if (j > 1) {
        prod = product_set(prod, A, config);
        sprod = product_set(sprod, shifted, config);
      }
    } catch (const BudgetExceeded& e) {
      r.partial = true;
      r.note = e.what();
      break;
    }
    GrowthRow row;
    row.j = j;
    row.product_size = prod.size();
    row.shifted_size = sprod.size();
    row.exponent = A.size() > 1 ? log_size(std::max(row.product_size, row.shifted_size)) / denom : 0.0;
    r.rows.push_back(row);
  }
  return r;
}

UsoldReport verify_usold_bound(const RationalSet& A, const Rational& u, int k, const RunConfig& config) {
  require_k(k);
  require_shift(A, u);
  if (A.empty()) throw InvalidArgument("verify_usold_bound: empty set");
  UsoldReport r;
  r.k = k;
  r.lhs = shifted_k_fold_product(A, u, k, config).size();
  r.doubling = doubling_constant(A, config);
  const double kd = k;
  r.log_lhs = log_size(r.lhs);
  r.log_rhs = kd * log_size(A.size()) - kd * r.doubling.to_double() * std::log(8.0 * kd * kd * kd * kd);
  r.holds = r.log_lhs >= r.log_rhs - 1e-9;
  return r;
}

SumPowerReport sum_then_power_growth(const RationalSet& A, const RationalSet& B, int k, const RunConfig& config) {
  require_k(k);
  if (B.size() < 2) throw InvalidArgument("sum_then_power_growth: |B| must be at least 2");
  if (A.empty()) throw InvalidArgument("sum_then_power_growth: empty set");
  SumPowerReport r;
  r.k = k;
  const RationalSet C = sum_set(A, B, config);
  r.sumset_size = C.size();
  r.size = k_fold_product(C, k, config).size();
  if (A.size() > 1) r.exponent = log_size(r.size) / log_size(A.size());
  return r;
}

}  // namespace sumprod
