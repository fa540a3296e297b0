#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sumprod/rational.hpp"
#include "sumprod/set.hpp"

namespace sumprod {

/// Primes below a fixed bound, built once by a sieve of Eratosthenes.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint32_t bound);

  /// Process-wide table with bound 10^6.
  static const PrimeTable& shared();

  std::uint32_t bound() const noexcept { return bound_; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

 private:
  std::uint32_t bound_;
  std::vector<std::uint32_t> primes_;
};

bool is_prime(const Integer& n);

/// Smallest prime strictly greater than n.
Integer next_prime(const Integer& n);

/// Prime factorization of n >= 1 as ascending (prime, exponent) pairs.
/// Trial division by the prime table, then Pollard rho (Brent) on the cofactor.
std::vector<std::pair<Integer, long>> factor_integer(const Integer& n);

/// Sign and sparse prime -> exponent map of a rational. Exponents are never
/// zero; the zero rational has sign 0 and no exponents.
struct FactoredRational {
  int sign = 0;
  std::map<Integer, long> exponents;

  Rational reconstruct() const;
  friend bool operator==(const FactoredRational&, const FactoredRational&) = default;
};

FactoredRational factor(const Rational& a);

/// v_p(a). Throws InvalidArgument for a == 0 or p not prime.
long valuation(const Rational& a, const Integer& p);

/// True when no prime divides both a and b (in numerator or denominator).
/// Throws InvalidArgument when either is zero.
bool coprime(const Rational& a, const Rational& b);

/// Sorted primes p with v_p(a) != 0 for some a in A. Throws on 0 in A.
std::vector<Integer> prime_support(const RationalSet& A);

using ValuationVector = std::vector<long>;

/// The map a -> (v_{p_1}(a), ..., v_{p_t}(a)) over prime_support(A).
/// Signs are carried alongside; the vectors only see |a|.
struct ValuationEmbedding {
  std::vector<Integer> primes;
  std::vector<ValuationVector> vectors;  // aligned with A's sorted order
  std::vector<int> signs;
};

ValuationEmbedding valuation_embedding(const RationalSet& A);

}  // namespace sumprod
