#include "sumprod/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "sumprod/error.hpp"
#include "sumprod/factor.hpp"
#include "sumprod/random.hpp"

namespace sumprod {
namespace {

// Number of coprime pairs (p, q) with 1 <= p <= n, 1 <= q <= d, by Moebius
// inversion over the common divisor.
std::uint64_t coprime_pairs(std::uint64_t n, std::uint64_t d) {
  const std::uint64_t m = std::min(n, d);
  std::vector<int> mu(m + 1, 1);
  std::vector<char> composite(m + 1, 0);
  for (std::uint64_t i = 2; i <= m; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i; j <= m; j += i) {
      if (j != i) composite[j] = 1;
      mu[j] = -mu[j];
    }
    if (i <= m / i) {
      for (std::uint64_t j = i * i; j <= m; j += i * i) mu[j] = 0;
    }
  }
  __int128 sum = 0;
  for (std::uint64_t g = 1; g <= m; ++g) {
    sum += static_cast<__int128>(mu[g]) * static_cast<__int128>(n / g) * static_cast<__int128>(d / g);
  }
  return static_cast<std::uint64_t>(sum);
}

constexpr std::uint64_t kExactCapacityLimit = 10'000'000;
constexpr std::uint64_t kExactSideLimit = 1'000'000;

}  // namespace

RationalSet geometric_progression(const Rational& r, long n) {
  if (r.is_zero() || r == Rational(1) || r == Rational(-1)) {
    throw InvalidArgument("geometric_progression: ratio " + r.to_string() + " is excluded");
  }
  if (n < 1) throw InvalidArgument("geometric_progression: length must be >= 1");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n));
  Rational x(1);
  for (long i = 0; i < n; ++i, x *= r) out.push_back(x);
  return RationalSet(std::move(out));
}

RationalSet multidim_gp(const std::vector<Integer>& primes, const std::vector<long>& dims) {
  if (primes.size() != dims.size()) throw InvalidArgument("multidim_gp: primes and dims differ in length");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) throw InvalidArgument("multidim_gp: " + primes[i].get_str() + " is not prime");
    if (dims[i] < 1) throw InvalidArgument("multidim_gp: dims must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (primes[j] == primes[i]) throw InvalidArgument("multidim_gp: repeated prime " + primes[i].get_str());
    }
  }
  std::vector<Rational> out{Rational(1)};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::vector<Rational> next;
    next.reserve(out.size() * static_cast<std::size_t>(dims[i]));
    for (const Rational& x : out) {
      Rational y = x;
      for (long e = 0; e < dims[i]; ++e, y *= Rational(primes[i])) next.push_back(y);
    }
    out = std::move(next);
  }
  return RationalSet(std::move(out));
}

RationalSet prime_power_set(const Integer& p, const std::vector<long>& H) {
  if (!is_prime(p)) throw InvalidArgument("prime_power_set: " + p.get_str() + " is not prime");
  std::vector<Rational> out;
  out.reserve(H.size());
  for (long h : H) out.push_back(Rational(p).pow(h));
  return RationalSet(std::move(out));
}

RationalSet random_rational_set(std::uint64_t count, std::uint64_t numerator_bound,
                                std::uint64_t denominator_bound, std::uint64_t seed) {
  if (count < 1 || numerator_bound < 1 || denominator_bound < 1) {
    throw InvalidArgument("random_rational_set: count and bounds must be >= 1");
  }
  const std::uint64_t small_side = std::min(numerator_bound, denominator_bound);
  // Above the limit the capacity is at least numerator_bound + denominator_bound - 1
  // and in practice far larger; only the exact count is used for rejection.
  const bool exact = small_side <= kExactSideLimit;
  if (exact) {
    const std::uint64_t capacity = 2 * coprime_pairs(numerator_bound, denominator_bound);
    if (count > capacity) {
      throw InvalidArgument("random_rational_set: only " + std::to_string(capacity) + " distinct values in range, " +
                            std::to_string(count) + " requested");
    }
    if (capacity <= kExactCapacityLimit && capacity <= 4 * count) {
      // Dense request: enumerate and partially shuffle.
      std::vector<Rational> all;
      all.reserve(capacity);
      for (std::uint64_t q = 1; q <= denominator_bound; ++q) {
        for (std::uint64_t p = 1; p <= numerator_bound; ++p) {
          if (std::gcd(p, q) != 1) continue;
          const Rational v = Rational::canonicalize(static_cast<long>(p), static_cast<long>(q));
          all.push_back(v);
          all.push_back(-v);
        }
      }
      std::sort(all.begin(), all.end());
      Rng rng(seed);
      for (std::uint64_t i = 0; i < count; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
      all.resize(count);
      return RationalSet(std::move(all));
    }
  }
  Rng rng(seed);
  std::set<Rational> seen;
  while (seen.size() < count) {
    const long p = static_cast<long>(1 + rng.below(numerator_bound));
    const long q = static_cast<long>(1 + rng.below(denominator_bound));
    const Rational v = Rational::canonicalize(rng.coin(0.5) ? -p : p, q);
    seen.insert(v);
  }
  return RationalSet(std::vector<Rational>(seen.begin(), seen.end()));
}

LatticeSet lattice_box(std::size_t n, std::int64_t side) {
  if (n < 1 || side < 1) throw InvalidArgument("lattice_box: n and side must be >= 1");
  std::vector<Point> pts{Point{}};
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<Point> next;
    next.reserve(pts.size() * static_cast<std::size_t>(side));
    for (const Point& p : pts) {
      for (std::int64_t x = 0; x < side; ++x) {
        Point q = p;
        q.push_back(x);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  return LatticeSet(n, std::move(pts));
}

LatticeSet random_lattice_set(std::size_t n, std::size_t count, std::int64_t side, std::uint64_t seed) {
  if (n < 1 || side < 1) throw InvalidArgument("random_lattice_set: n and side must be >= 1");
  long double capacity = 1;
  for (std::size_t d = 0; d < n; ++d) capacity *= static_cast<long double>(side);
  if (static_cast<long double>(count) > capacity) {
    throw InvalidArgument("random_lattice_set: box holds fewer than " + std::to_string(count) + " points");
  }
  Rng rng(seed);
  std::set<Point> seen;
  while (seen.size() < count) {
    Point p(n);
    for (auto& x : p) x = rng.between(0, side - 1);
    seen.insert(std::move(p));
  }
  return LatticeSet(n, std::vector<Point>(seen.begin(), seen.end()));
}

EdgeList random_lattice_graph(std::size_t a_size, std::size_t b_size, double density, std::uint64_t seed) {
  if (!(density > 0.0 && density <= 1.0)) throw InvalidArgument("random_lattice_graph: density must be in (0, 1]");
  if (density == 1.0) return complete_edges(a_size, b_size);
  Rng rng(seed);
  EdgeList edges;
  for (std::uint32_t i = 0; i < a_size; ++i) {
    for (std::uint32_t j = 0; j < b_size; ++j) {
      if (rng.coin(density)) edges.emplace_back(i, j);
    }
  }
  return edges;
}

}  // namespace sumprod
