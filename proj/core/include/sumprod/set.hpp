#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "sumprod/rational.hpp"

namespace sumprod {

/// Finite set of rationals, stored sorted ascending without duplicates.
class RationalSet {
 public:
  using const_iterator = std::vector<Rational>::const_iterator;

  RationalSet() = default;
  explicit RationalSet(std::vector<Rational> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }
  RationalSet(std::initializer_list<Rational> elements)
      : RationalSet(std::vector<Rational>(elements)) {}

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const Rational& operator[](std::size_t i) const { return elements_[i]; }
  const_iterator begin() const noexcept { return elements_.begin(); }
  const_iterator end() const noexcept { return elements_.end(); }
  std::span<const Rational> elements() const noexcept { return elements_; }

  bool contains(const Rational& x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
  }
  /// Index of x in sorted order, or size() when absent.
  std::size_t index_of(const Rational& x) const {
    const auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    return (it != elements_.end() && *it == x) ? static_cast<std::size_t>(it - elements_.begin())
                                               : elements_.size();
  }
  bool contains_zero() const { return contains(Rational(0)); }

  friend bool operator==(const RationalSet&, const RationalSet&) = default;

 private:
  std::vector<Rational> elements_;
};

}  // namespace sumprod
