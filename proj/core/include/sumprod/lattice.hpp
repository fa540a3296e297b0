#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sumprod/rational.hpp"

namespace sumprod {

using Point = std::vector<std::int64_t>;

/// Finite set of integer vectors of a common dimension, sorted
/// lexicographically without duplicates.
class LatticeSet {
 public:
  LatticeSet() = default;
  /// Throws InvalidArgument when a point has the wrong dimension.
  LatticeSet(std::size_t dimension, std::vector<Point> points);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// Index of p, or size() when absent.
  std::size_t index_of(const Point& p) const;
  bool contains(const Point& p) const { return index_of(p) != size(); }

  friend bool operator==(const LatticeSet&, const LatticeSet&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<Point> points_;
};

/// Edges (i, j) of a bipartite graph given as indices into A and B; kept
/// sorted and unique.
using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

void normalize_edges(EdgeList& edges);

/// Bipartite graph G between two lattice sets.
struct LatticeGraph {
  LatticeSet A;
  LatticeSet B;
  EdgeList edges;

  /// Throws InvalidArgument on mismatched dimensions or out-of-range edges.
  void validate() const;
  /// |G| / (|A||B|).
  Rational density() const;
};

EdgeList complete_edges(std::size_t a_size, std::size_t b_size);

}  // namespace sumprod
