#pragma once

#include <cstdint>
#include <vector>

#include "sumprod/lattice.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

namespace sumprod {

/// {r^i : 0 <= i < n}. Rejects r in {0, 1, -1} and n < 1.
RationalSet geometric_progression(const Rational& r, long n);

/// {prod p_i^{e_i} : 0 <= e_i < dims_i}. Rejects repeated or nonprime
/// entries, mismatched lengths and nonpositive dims.
RationalSet multidim_gp(const std::vector<Integer>& primes, const std::vector<long>& dims);

/// {p^h : h in H}.
RationalSet prime_power_set(const Integer& p, const std::vector<long>& H);

/// `count` distinct nonzero rationals a/b with |a| <= numerator_bound and
/// 1 <= b <= denominator_bound. Throws InvalidArgument when the range holds
/// fewer than `count` distinct values.
RationalSet random_rational_set(std::uint64_t count, std::uint64_t numerator_bound,
                                std::uint64_t denominator_bound, std::uint64_t seed);

/// [0, side-1]^n.
LatticeSet lattice_box(std::size_t n, std::int64_t side);

/// `count` distinct points of [0, side-1]^n.
LatticeSet random_lattice_set(std::size_t n, std::size_t count, std::int64_t side, std::uint64_t seed);

/// Each pair kept independently with probability `density` in (0, 1].
EdgeList random_lattice_graph(std::size_t a_size, std::size_t b_size, double density, std::uint64_t seed);

}  // namespace sumprod
