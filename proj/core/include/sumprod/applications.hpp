#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumprod/config.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

namespace sumprod {

struct LineSolutionReport {
  std::uint64_t count = 0;            // (x1, x2) in A^2 with c1 x1 + c2 x2 = 1
  std::uint64_t zero_coordinate = 0;  // of those, solutions with x1 = 0 or x2 = 0
};

/// Throws InvalidArgument when c1 or c2 is zero.
LineSolutionReport count_line_solutions(const RationalSet& A, const Rational& c1, const Rational& c2,
                                        const RunConfig& config = {});

/// The line a x + b y = c.
struct Line {
  Rational a, b, c;
};

enum class LineClass { kAxisParallel, kThroughOrigin, kIrrationalSlope, kGeneric };
std::string to_string(LineClass c);
/// Throws InvalidArgument for a = b = 0.
LineClass classify(const Line& line);

struct IncidenceReport {
  std::uint64_t total = 0;
  std::uint64_t axis_parallel = 0;
  std::uint64_t through_origin = 0;
  std::uint64_t irrational_slope = 0;  // structurally zero for rational lines
  std::uint64_t generic = 0;
  std::uint64_t points = 0;  // |A|^2
  std::uint64_t lines = 0;
  std::vector<std::uint64_t> per_line;
};

/// Incidences between A x A and the lines, one membership lookup per
/// (line, x) pair.
IncidenceReport count_incidences(const RationalSet& A, const std::vector<Line>& lines,
                                 const RunConfig& config = {});
/// Same count by testing every (point, line) pair.
IncidenceReport count_incidences_naive(const RationalSet& A, const std::vector<Line>& lines);

struct BasisReport {
  std::uint64_t count = 0;           // S = |{(b, b') : b + b' in A}|
  std::vector<std::uint64_t> slices; // |S_b| for b in B, in order
  std::uint64_t max_intersection = 0;  // max over b1 < b2 of |S_b1 ∩ S_b2|
};

BasisReport additive_basis_count(const RationalSet& A, const RationalSet& B, const RationalSet& B_prime,
                                 const RunConfig& config = {});

struct GrowthRow {
  int j = 0;
  std::uint64_t product_size = 0;  // |A^(j)|
  std::uint64_t shifted_size = 0;  // |(A+u)^(j)|
  double exponent = 0.0;           // ln max / ln |A|, 0 when |A| = 1
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  bool partial = false;
  std::string note;  // budget message when partial
};

/// Rows for j = 1..k_max; stops early when a set exceeds the budget.
GrowthReport growth_experiment(const RationalSet& A, const Rational& u, int k_max, const RunConfig& config = {});

struct UsoldReport {
  int k = 0;
  std::uint64_t lhs = 0;  // |(A+u)^(k)|
  Rational doubling;      // K = |AA| / |A|
  double log_lhs = 0.0;
  double log_rhs = 0.0;   // k ln|A| - kK ln(8k^4)
  bool holds = false;
};

/// |(A+u)^(k)| >= |A|^k / (8k^4)^{kK}, compared in log space.
UsoldReport verify_usold_bound(const RationalSet& A, const Rational& u, int k, const RunConfig& config = {});

struct SumPowerReport {
  int k = 0;
  std::uint64_t sumset_size = 0;  // |A+B|
  std::uint64_t size = 0;         // |(A+B)^(k)|
  std::optional<double> exponent; // ln size / ln |A|; empty when |A| = 1
};

/// Requires |B| >= 2.
SumPowerReport sum_then_power_growth(const RationalSet& A, const RationalSet& B, int k,
                                     const RunConfig& config = {});

}  // namespace sumprod
