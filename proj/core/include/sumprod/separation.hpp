#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sumprod/config.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

namespace sumprod {

/// Z = union over x in X of x * Y_x, with the fiber sets Y_x coprime to
/// every x' in X.
class Decomposition {
 public:
  /// Validates the coprimality certificate and the disjointness of the
  /// pieces x * Y_x; throws InvalidArgument naming the violating triple
  /// (x, x', y) or the colliding element.
  Decomposition(RationalSet X, std::map<Rational, RationalSet> fibers);

  const RationalSet& X() const noexcept { return X_; }
  const std::map<Rational, RationalSet>& fibers() const noexcept { return fibers_; }
  const RationalSet& Z() const noexcept { return Z_; }
  /// x * Y_x.
  RationalSet piece(const Rational& x) const;

 private:
  RationalSet X_;
  std::map<Rational, RationalSet> fibers_;
  RationalSet Z_;
};

struct SeparationReport {
  int k = 0;
  Rational u;
  double lhs = 0.0;      // E~_{k,w}(Z;u)^{1/k}
  double rhs_sum = 0.0;  // sum over x of E~_{k,w}(x Y_x;u)^{1/k}
  double ratio = 0.0;    // lhs / rhs_sum, 0 when rhs_sum = 0
  std::size_t pieces = 0;
};

/// Per-instance lower bound on any valid separating constant of X.
SeparationReport separation_ratio(const Decomposition& D, const Rational& u, int k,
                                  const WeightedSet& weights_on_Z, const RunConfig& config = {});

struct ProbeReport {
  double max_ratio = 0.0;
  std::vector<double> ratios;  // one per probe, in probe order
  std::size_t fallback_probes = 0;
};

/// Maximum separation ratio over `probes` random decompositions of X whose
/// fibers are built from primes outside prime_support(X).
ProbeReport probe_separating_constant(const RationalSet& X, const Rational& u, int k, int probes,
                                      std::uint64_t seed, const RunConfig& config = {});

/// 2k(2k-1) when X = {p^h : h in H} for a single prime p, otherwise |X|.
/// Both are proven upper bounds on the separating constant.
double separating_bound(const RationalSet& X, int k);

/// True when every element is p^h for one prime p (h may be negative).
bool is_prime_power_set(const RationalSet& X);

enum class LambdaMethod { kUniform, kAscent, kGrid };
std::string to_string(LambdaMethod m);

struct LambdaEstimate {
  double value = 0.0;            // lower bound on Lambda_k(A;u)
  std::vector<double> witness;   // nonnegative, sum of squares 1
  LambdaMethod method = LambdaMethod::kUniform;
  std::vector<double> trace;     // ascent: best objective after each iteration
  std::uint64_t evaluations = 0;
};

/// (E~_k(A;u) / |A|^k)^{1/k} with the uniform witness.
LambdaEstimate lambda_uniform(const RationalSet& A, const Rational& u, int k, const RunConfig& config = {});

/// Multiplicative-update ascent on the nonnegative unit sphere with
/// backtracking, started from uniform weights and from seeded perturbations
/// of them. The objective never decreases.
LambdaEstimate lambda_ascent(const RationalSet& A, const Rational& u, int k, int iters,
                             std::uint64_t seed, const RunConfig& config = {});

/// Exhaustive search over the nonnegative unit sphere in hyperspherical
/// coordinates with angular step `step`. Requires |A| <= 4, 0 < step <= 0.2.
LambdaEstimate lambda_grid_oracle(const RationalSet& A, const Rational& u, int k, double step,
                                  const RunConfig& config = {});

/// Absolute tolerance used when comparing grid-oracle values.
inline constexpr double kGridTolerance = 1e-3;

struct StabilityReport {
  double lambda_full = 0.0;
  struct Trial {
    RationalSet subset;
    double lambda = 0.0;
    bool holds = false;
  };
  std::vector<Trial> trials;
  bool holds = true;
};

/// Lambda_k(A';u) <= Lambda_k(A;u) + kGridTolerance on random subsets A'.
StabilityReport verify_stability(const RationalSet& A, const Rational& u, int k, int trials,
                                 std::uint64_t seed, double step = 0.01, const RunConfig& config = {});

struct SubsetLemmaReport {
  double lambda = 0.0;  // grid oracle value of Lambda_k(A;u)
  Rational doubling;    // K = |AA|/|A|
  double psi = 0.0;     // proven separating bound for A'
  double rhs = 0.0;     // K^4 (|A|/(|A'|-1))^2 psi
  bool holds = false;
};

SubsetLemmaReport verify_subset_lemma_instance(const RationalSet& A, const RationalSet& A_sub,
                                               const Rational& u, int k, double step = 0.01,
                                               const RunConfig& config = {});

}  // namespace sumprod
