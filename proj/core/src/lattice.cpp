#include "sumprod/lattice.hpp"

#include <algorithm>
#include <string>

#include "sumprod/error.hpp"

namespace sumprod {

LatticeSet::LatticeSet(std::size_t dimension, std::vector<Point> points)
    : dimension_(dimension), points_(std::move(points)) {
  for (const Point& p : points_) {
    if (p.size() != dimension_) {
      throw InvalidArgument("lattice point of dimension " + std::to_string(p.size()) +
                            " in a set of dimension " + std::to_string(dimension_));
    }
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

std::size_t LatticeSet::index_of(const Point& p) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), p);
  return (it != points_.end() && *it == p) ? static_cast<std::size_t>(it - points_.begin()) : size();
}

void normalize_edges(EdgeList& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void LatticeGraph::validate() const {
  if (A.dimension() != B.dimension()) throw InvalidArgument("graph sides have different dimensions");
  for (const auto& [i, j] : edges) {
    if (i >= A.size() || j >= B.size()) {
      throw InvalidArgument("edge (" + std::to_string(i) + ", " + std::to_string(j) + ") is out of range");
    }
  }
}

Rational LatticeGraph::density() const {
  if (A.empty() || B.empty()) throw InvalidArgument("density of a graph with an empty side");
  return Rational::canonicalize(static_cast<long>(edges.size()), static_cast<long>(A.size() * B.size()));
}

EdgeList complete_edges(std::size_t a_size, std::size_t b_size) {
  EdgeList edges;
  edges.reserve(a_size * b_size);
  for (std::uint32_t i = 0; i < a_size; ++i) {
    for (std::uint32_t j = 0; j < b_size; ++j) edges.emplace_back(i, j);
  }
  return edges;
}

}  // namespace sumprod
