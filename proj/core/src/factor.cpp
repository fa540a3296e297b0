#include "sumprod/factor.hpp"

#include <algorithm>
#include <set>

#include "sumprod/error.hpp"

namespace sumprod {
namespace {

// Miller-Rabin with the first 13 prime bases is deterministic below 3.3e24.
const Integer kDeterministicMillerRabinLimit("3317044064679887385961981", 10);

bool miller_rabin(const Integer& n, unsigned long base) {
  Integer d = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  Integer x;
  const Integer a(base);
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Brent's variant of Pollard rho; n is odd, composite and not a prime power
// of a table prime. Returns a nontrivial factor.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    const auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    unsigned long r = 1;
    const unsigned long m = 128;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        const unsigned long steps = std::min(m, r - k);
        for (unsigned long i = 0; i < steps; ++i) {
          y = f(y);
          q = (q * abs(Integer(x - y))) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_cofactor(const Integer& n, std::map<Integer, long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    std::map<Integer, long> half;
    factor_cofactor(root, half);
    for (const auto& [p, e] : half) out[p] += 2 * e;
    return;
  }
  const Integer d = pollard_brent(n);
  factor_cofactor(d, out);
  factor_cofactor(Integer(n / d), out);
}

void factor_into(const Integer& n_in, long sign, std::map<Integer, long>& out) {
  Integer n = abs(n_in);
  const auto& table = PrimeTable::shared();
  for (const std::uint32_t p : table.primes()) {
    if (n == 1) return;
    const Integer pp(p);
    if (pp * pp > n) break;
    long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e != 0) out[pp] += sign * e;
  }
  if (n == 1) return;
  std::map<Integer, long> rest;
  factor_cofactor(n, rest);
  for (const auto& [p, e] : rest) out[p] += sign * e;
}

}  // namespace

PrimeTable::PrimeTable(std::uint32_t bound) : bound_(bound) {
  std::vector<bool> composite(bound + 1, false);
  for (std::uint32_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes_.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= bound; j += i) composite[j] = true;
  }
}

const PrimeTable& PrimeTable::shared() {
  static const PrimeTable table(1'000'000);
  return table;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (const unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < kDeterministicMillerRabinLimit) {
    for (const unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul}) {
      if (!miller_rabin(n, a)) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Integer next_prime(const Integer& n) {
  Integer c = n < 2 ? Integer(2) : Integer(n + 1);
  while (!is_prime(c)) ++c;
  return c;
}

std::vector<std::pair<Integer, long>> factor_integer(const Integer& n) {
  if (n < 1) throw InvalidArgument("factor_integer expects n >= 1");
  std::map<Integer, long> out;
  factor_into(n, 1, out);
  return {out.begin(), out.end()};
}

Rational FactoredRational::reconstruct() const {
  if (sign == 0) return Rational(0);
  Integer num = 1, den = 1;
  for (const auto& [p, e] : exponents) {
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e > 0 ? e : -e));
    (e > 0 ? num : den) *= power;
  }
  return Rational::canonicalize(sign * num, den);
}

FactoredRational factor(const Rational& a) {
  FactoredRational f;
  f.sign = a.sign();
  if (f.sign == 0) return f;
  factor_into(a.num(), 1, f.exponents);
  factor_into(a.den(), -1, f.exponents);
  std::erase_if(f.exponents, [](const auto& kv) { return kv.second == 0; });
  return f;
}

long valuation(const Rational& a, const Integer& p) {
  if (a.is_zero()) throw InvalidArgument("valuation of zero is undefined");
  if (!is_prime(p)) throw InvalidArgument("valuation base " + p.get_str() + " is not prime");
  long v = 0;
  Integer n = abs(a.num());
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  Integer d = a.den();
  while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
    --v;
  }
  return v;
}

bool coprime(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) throw InvalidArgument("coprime: zero argument");
  // Any shared prime divides num(a)*den(a) and num(b)*den(b).
  return gcd(Integer(abs(a.num()) * a.den()), Integer(abs(b.num()) * b.den())) == 1;
}

std::vector<Integer> prime_support(const RationalSet& A) {
  std::set<Integer> primes;
  for (const Rational& a : A) {
    if (a.is_zero()) throw InvalidArgument("prime_support: 0 is in the set");
    for (const auto& [p, e] : factor(a).exponents) primes.insert(p);
  }
  return {primes.begin(), primes.end()};
}

ValuationEmbedding valuation_embedding(const RationalSet& A) {
  ValuationEmbedding emb;
  std::vector<FactoredRational> factored;
  factored.reserve(A.size());
  std::set<Integer> primes;
  for (const Rational& a : A) {
    if (a.is_zero()) throw InvalidArgument("valuation_embedding: 0 is in the set");
    factored.push_back(factor(a));
    for (const auto& [p, e] : factored.back().exponents) primes.insert(p);
  }
  emb.primes.assign(primes.begin(), primes.end());
  for (const auto& f : factored) {
    ValuationVector v(emb.primes.size(), 0);
    for (const auto& [p, e] : f.exponents) {
      const auto it = std::lower_bound(emb.primes.begin(), emb.primes.end(), p);
      v[static_cast<std::size_t>(it - emb.primes.begin())] = e;
    }
    emb.vectors.push_back(std::move(v));
    emb.signs.push_back(f.sign);
  }
  return emb;
}

}  // namespace sumprod
