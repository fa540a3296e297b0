#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/config.hpp"
#include "sumprod/lattice.hpp"
#include "sumprod/rational.hpp"

namespace sumprod {

/// A +_G B = {a + b : (a, b) in G}.
LatticeSet restricted_sumset(const LatticeSet& A, const LatticeSet& B, const EdgeList& G);

/// Fiber decomposition of a lattice graph along Z^n = Z^t x Z^{n-t}.
/// Base points are the distinct prefixes; each fiber holds the suffixes
/// above one base point.
struct FiberView {
  std::size_t split = 0;
  LatticeSet base_A;                  // pi_1(A)
  LatticeSet base_B;                  // pi_1(B)
  std::vector<LatticeSet> fibers_A;   // A_2(a_1), aligned with base_A
  std::vector<LatticeSet> fibers_B;   // B_2(b_1), aligned with base_B
  /// For each point of A: (base index, index inside its fiber).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> locate_A;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> locate_B;
  EdgeList base_graph;  // G_1, on base indices
  /// G_2(a_1, b_1) on fiber-local indices, for every (a_1, b_1) in G_1.
  std::map<std::pair<std::uint32_t, std::uint32_t>, EdgeList> fiber_graphs;

  /// Rebuilds A (respectively B, G) from the base points and fibers.
  LatticeSet reconstruct_A() const;
  LatticeSet reconstruct_B() const;
  EdgeList reconstruct_graph(const LatticeSet& A, const LatticeSet& B) const;
};

/// Throws InvalidArgument when t > n or the dimensions differ.
FiberView fiber_view(const LatticeSet& A, const LatticeSet& B, const EdgeList& G, std::size_t t);

struct FiberGraphSumReport {
  std::size_t split = 0;
  std::uint64_t lhs = 0;           // |A +_G B|
  std::uint64_t base_sumset = 0;   // |pi_1(A) +_{G_1} pi_1(B)|
  std::uint64_t min_all_pairs = 0; // min over pi_1(A) x pi_1(B) of the fiber sumset
  std::uint64_t min_on_base = 0;   // min over G_1 only
  std::uint64_t rhs = 0;           // base_sumset * min_all_pairs
  std::uint64_t rhs_strong = 0;    // base_sumset * min_on_base
  bool holds = false;
  bool holds_strong = false;
};

FiberGraphSumReport verify_fiber_graph_sum(const LatticeSet& A, const LatticeSet& B, const EdgeList& G,
                                           std::size_t t);

struct PruneResult {
  Rational delta;                   // |G| / (|A||B|) of the input
  std::vector<std::uint32_t> kept_A;  // surviving indices, ascending
  std::vector<std::uint32_t> kept_B;
  EdgeList edges;                   // surviving edges, original indices
};

/// Removes vertices of degree below delta|B|/4 (A side) or delta|A|/4
/// (B side) until none remain. Requires |G| >= 1.
PruneResult degree_prune(std::size_t a_size, std::size_t b_size, const EdgeList& G);

struct PrunePostconditions {
  bool degree_A = false;  // deg a >= delta|B|/4 for surviving a
  bool degree_B = false;  // deg b >= delta|A|/4 for surviving b
  bool size_A = false;    // |A'| >= delta|A|/2
  bool size_B = false;    // |B'| >= delta|B|/2
  bool size_G = false;    // |G'| >= delta|A||B|/2
  bool all() const { return degree_A && degree_B && size_A && size_B && size_G; }
};

/// Evaluates the five postconditions exactly from the result alone.
PrunePostconditions check_prune(std::size_t a_size, std::size_t b_size, const EdgeList& G,
                                const PruneResult& result);

struct PigeonholeItem {
  Rational value;  // positive
  Rational mass;   // nonnegative
};

struct PigeonholeClass {
  long index = 0;                    // j: values in [lo 2^j, lo 2^{j+1})
  std::vector<std::size_t> members;  // item indices, ascending
  Rational mass;
  std::size_t nonempty_classes = 0;
};

/// Class of maximal total mass; ties go to the smallest index. Throws
/// InvalidArgument on empty input, lo <= 0, or a value outside [lo, hi].
PigeonholeClass dyadic_pigeonhole(const std::vector<PigeonholeItem>& items, const Rational& lo,
                                  const Rational& hi);

/// f(t) = max |A_2(a_1)| + max |B_2(b_1)| at split t (f(0) = |A| + |B|).
std::uint64_t max_fiber_sum(const LatticeSet& A, const LatticeSet& B, std::size_t t);

/// The t in [0, n-1] with f(t)^4 >= |A||B| > f(t+1)^4, or 0 when none exists.
std::size_t choose_split_coordinate(const LatticeSet& A, const LatticeSet& B);

/// Thresholds of the regularization stages. Every constant of the form
/// c * (expression) is exposed so that empirical constants can be charted.
struct RegularizeParams {
  /// Stage B: keep b with at least incidence_fraction * delta * n_A
  /// neighbours in the largest A-fiber.
  Rational incidence_fraction = Rational::canonicalize(1, 8);
  /// Stage B: drop base points whose fiber is below
  /// small_fiber_constant * delta^5 K^-2 n_A.
  Rational small_fiber_constant = Rational::canonicalize(1, 10'000);
  /// Stage A: drop base points whose fiber is below
  /// a_fiber_constant * delta^3 K^-2 m_B.
  Rational a_fiber_constant = Rational::canonicalize(1, 100'000);
  /// Graph fibers: keep base pairs with
  /// |G_2| >= graph_density_constant * delta / (16 L) * m_A m_B.
  double graph_density_constant = 1.0;
  /// Doubling: drop base pairs with K_+ > doubling_constant * L^3 delta^-10 K.
  double doubling_constant = 1.0;
};

struct AchievedConstants {
  double log_factor = 0.0;      // L = max(1, ln(K/delta))
  double set_size_A = 0.0;      // M_A m_A / (delta^2 L^-1 |A|)
  double set_size_B = 0.0;      // M_B m_B / (delta^2 L^-1 |B|)
  double delta_product = 0.0;   // delta_1 delta_2 / (L^-3 delta)
  double doubling = 0.0;        // K_1 K_2 / (delta^-2 max(1, ln K) K)
};

struct StageRecord {
  std::string name;
  double threshold = 0.0;
  std::size_t kept = 0;
  std::size_t discarded = 0;
};

struct RegularizationCertificate {
  std::size_t split = 0;
  LatticeSet A;  // A'
  LatticeSet B;  // B'
  EdgeList edges;  // G', indices into A' and B'
  std::uint64_t M_A = 0, M_B = 0, m_A = 0, m_B = 0;
  Rational delta;      // input density
  Rational K_squared;  // input doubling K^2 = |A +_G B|^2 / (|A||B|)
  Rational delta_1, delta_2;
  Rational K1_squared, K2_squared;
  double K1 = 0.0, K2 = 0.0;
  Rational fiber_uniformity;  // max over both sides of (largest fiber / m)
  bool swapped = false;       // the roles of A and B were exchanged internally
  std::vector<StageRecord> stages;
  AchievedConstants achieved;
};

/// Runs degree pruning and the four regularization stages. Throws
/// StageEmptied when a stage would discard every edge.
RegularizationCertificate regularize(const LatticeSet& A, const LatticeSet& B, const EdgeList& G,
                                     std::size_t t, const RegularizeParams& params = {},
                                     const RunConfig& config = {});

struct CertificateCheck {
  bool uniform_fibers = false;   // fiber sizes in [m, 2m] on both sides
  bool base_graph = false;       // |G'_1| >= delta_1 M_A M_B
  bool fiber_graphs = false;     // |G'_2| >= delta_2 m_A m_B on every G'_1 pair
  bool k1_identity = false;      // |pi_1 A' +_{G'_1} pi_1 B'|^2 = K_1^2 M_A M_B
  bool fiber_doubling = false;   // K_+^2 in [K_2^2, 4 K_2^2] on every G'_1 pair
  bool subgraph = false;         // G' is a subgraph of the input G
  bool all() const {
    return uniform_fibers && base_graph && fiber_graphs && k1_identity && fiber_doubling && subgraph;
  }
};

/// Recomputes every certificate invariant from scratch.
CertificateCheck check_certificate(const RegularizationCertificate& cert, const LatticeSet& A,
                                   const LatticeSet& B, const EdgeList& G);

}  // namespace sumprod
