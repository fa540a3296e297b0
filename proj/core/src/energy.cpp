#include "sumprod/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>

#include "sumprod/detail/key_table.hpp"
#include "sumprod/error.hpp"
#include "sumprod/factor.hpp"
#include "sumprod/parallel.hpp"
#include "sumprod/setops.hpp"

namespace sumprod {
namespace {

using detail::KeyTable;

// Chunks per convolution step. Fixed so that the merge order, and with it
// every floating-point sum, does not depend on the thread count.
constexpr std::size_t kChunks = 64;

void require_energy_args(const Rational& u, int k) {
  if (u.is_zero()) throw InvalidArgument("shift u must be nonzero");
  if (k < 2) throw InvalidArgument("k must be >= 2, got " + std::to_string(k));
}

std::uint64_t checked_tuple_count(std::size_t n, int k, const RunConfig& config, const char* what) {
  long double count = 1;
  std::uint64_t exact = 1;
  for (int i = 0; i < k; ++i) {
    count *= static_cast<long double>(n);
    exact *= n;
  }
  if (count > static_cast<long double>(config.tuple_budget)) {
    const std::uint64_t required =
        count >= 1.8e19L ? std::numeric_limits<std::uint64_t>::max() : exact;
    throw BudgetExceeded(what, required, config.tuple_budget);
  }
  return exact;
}

// Multiplicative encoding of one side (the values a, or the values a + u):
// per element [zero, sign parity, v_{p_1}, ..., v_{p_t}] over the primes
// supporting the nonzero values.
struct SideCode {
  std::size_t width = 2;
  std::vector<std::int32_t> codes;  // n * width
};

SideCode encode_side(const std::vector<Rational>& values, int k) {
  std::set<Integer> prime_set;
  std::vector<FactoredRational> factored;
  factored.reserve(values.size());
  for (const Rational& v : values) {
    factored.push_back(factor(v));
    for (const auto& [p, e] : factored.back().exponents) prime_set.insert(p);
  }
  const std::vector<Integer> primes(prime_set.begin(), prime_set.end());
  SideCode side;
  side.width = 2 + primes.size();
  side.codes.assign(values.size() * side.width, 0);
  const long limit = std::numeric_limits<std::int32_t>::max() / std::max(k, 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::int32_t* code = side.codes.data() + i * side.width;
    if (factored[i].sign == 0) {
      code[0] = 1;
      continue;
    }
    code[1] = factored[i].sign < 0 ? 1 : 0;
    for (const auto& [p, e] : factored[i].exponents) {
      if (std::labs(e) > limit) throw InvalidArgument("valuation too large to encode");
      const auto it = std::lower_bound(primes.begin(), primes.end(), p);
      code[2 + static_cast<std::size_t>(it - primes.begin())] = static_cast<std::int32_t>(e);
    }
  }
  return side;
}

// Concatenation of one or two sides; each element's code is the
// concatenation of its side codes.
struct Encoding {
  std::size_t n = 0;
  std::size_t width = 0;
  std::vector<std::size_t> side_offsets;
  std::vector<std::size_t> side_widths;
  std::vector<std::int32_t> codes;

  const std::int32_t* code(std::size_t i) const { return codes.data() + i * width; }

  // out = key (+) code(i), normalized so that a zero side is [1, 0, ..., 0].
  void combine(const std::int32_t* key, std::size_t i, std::int32_t* out) const {
    const std::int32_t* c = code(i);
    for (std::size_t s = 0; s < side_offsets.size(); ++s) {
      const std::size_t off = side_offsets[s];
      const std::size_t w = side_widths[s];
      if (key[off] != 0 || c[off] != 0) {
        out[off] = 1;
        std::fill(out + off + 1, out + off + w, 0);
        continue;
      }
      out[off] = 0;
      out[off + 1] = (key[off + 1] + c[off + 1]) & 1;
      for (std::size_t j = 2; j < w; ++j) out[off + j] = key[off + j] + c[off + j];
    }
  }
};

enum class Sides { kProduct, kShifted, kBoth };

Encoding encode(const RationalSet& A, const Rational& u, int k, Sides sides) {
  Encoding enc;
  enc.n = A.size();
  std::vector<SideCode> parts;
  if (sides != Sides::kShifted) parts.push_back(encode_side({A.begin(), A.end()}, k));
  if (sides != Sides::kProduct) {
    std::vector<Rational> shifted;
    shifted.reserve(A.size());
    for (const Rational& a : A) shifted.push_back(a + u);
    parts.push_back(encode_side(shifted, k));
  }
  for (const auto& p : parts) {
    enc.side_offsets.push_back(enc.width);
    enc.side_widths.push_back(p.width);
    enc.width += p.width;
  }
  enc.codes.assign(enc.n * enc.width, 0);
  for (std::size_t i = 0; i < enc.n; ++i) {
    for (std::size_t s = 0; s < parts.size(); ++s) {
      std::copy_n(parts[s].codes.data() + i * parts[s].width, parts[s].width,
                  enc.codes.data() + i * enc.width + enc.side_offsets[s]);
    }
  }
  return enc;
}

// Distribution of k-tuple keys: counts and, when weights are given, masses.
struct KeyMass {
  explicit KeyMass(std::size_t width) : keys(width) {}
  KeyTable keys;
  std::vector<std::uint64_t> counts;
  std::vector<double> masses;
};

// r_k by iterated convolution: r_j(key + code(a)) += r_{j-1}(key) for each a.
// Each step splits the elements into fixed chunks merged in chunk order.
KeyMass key_distribution(const Encoding& enc, int k, const std::vector<double>* weights,
                         const RunConfig& config) {
  const std::size_t W = enc.width;
  KeyMass current(W);
  {
    std::vector<std::int32_t> zero_key(W, 0);
    std::vector<std::int32_t> key(W);
    for (std::size_t i = 0; i < enc.n; ++i) {
      enc.combine(zero_key.data(), i, key.data());
      const std::uint32_t id = current.keys.intern(key.data());
      if (id == current.counts.size()) {
        current.counts.push_back(0);
        current.masses.push_back(0.0);
      }
      current.counts[id] += 1;
      if (weights) current.masses[id] += (*weights)[i];
    }
  }
  for (int step = 2; step <= k; ++step) {
    const std::size_t chunks = std::min(kChunks, enc.n);
    std::vector<KeyMass> partial;
    partial.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) partial.emplace_back(W);
    parallel_for(chunks, config.resolved_threads(), [&](std::size_t c) {
      KeyMass& out = partial[c];
      std::vector<std::int32_t> key(W);
      const std::size_t lo = enc.n * c / chunks, hi = enc.n * (c + 1) / chunks;
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t id = 0; id < current.counts.size(); ++id) {
          enc.combine(current.keys.key(id).data(), i, key.data());
          const std::uint32_t nid = out.keys.intern(key.data());
          if (nid == out.counts.size()) {
            out.counts.push_back(0);
            out.masses.push_back(0.0);
          }
          out.counts[nid] += current.counts[id];
          if (weights) out.masses[nid] += current.masses[id] * (*weights)[i];
        }
      }
    });
    KeyMass next(W);
    for (auto& part : partial) {
      for (std::size_t id = 0; id < part.counts.size(); ++id) {
        const std::uint32_t nid = next.keys.intern(part.keys.key(id).data());
        if (nid == next.counts.size()) {
          next.counts.push_back(0);
          next.masses.push_back(0.0);
        }
        next.counts[nid] += part.counts[id];
        next.masses[nid] += part.masses[id];
      }
      part = KeyMass(W);
    }
    current = std::move(next);
  }
  return current;
}

Integer sum_of_squares(const std::vector<std::uint64_t>& counts) {
  Integer total = 0;
  unsigned __int128 acc = 0;
  for (const std::uint64_t c : counts) {
    const unsigned __int128 sq = static_cast<unsigned __int128>(c) * c;
    if (acc > ~static_cast<unsigned __int128>(0) - sq) {
      total += Integer(static_cast<unsigned long>(acc >> 64)) << 64;
      total += Integer(static_cast<unsigned long>(acc));
      acc = 0;
    }
    acc += sq;
  }
  Integer hi(static_cast<unsigned long>(acc >> 64));
  total += (hi << 64) + Integer(static_cast<unsigned long>(acc));
  return total;
}

double sum_of_squares(const std::vector<double>& masses) {
  double total = 0.0;
  for (const double m : masses) total += m * m;
  return total;
}

EnergyValue count_energy(const RationalSet& A, const Rational& u, int k, Sides sides,
                         const RunConfig& config, const char* what) {
  checked_tuple_count(A.size(), k, config, what);
  EnergyValue e;
  if (A.empty()) return e;
  const Encoding enc = encode(A, u, k, sides);
  e.exact = sum_of_squares(key_distribution(enc, k, nullptr, config).counts);
  return e;
}

struct PairHash {
  std::size_t operator()(const std::pair<Rational, Rational>& p) const noexcept {
    return hash_combine(p.first.hash(), p.second.hash());
  }
};

struct PartialMass {
  std::uint64_t count = 0;
  double mass = 0.0;
};

using PairMap = std::unordered_map<std::pair<Rational, Rational>, PartialMass, PairHash>;

RepTable build_rep_table(const RationalSet& A, const Rational& u, int k,
                         const std::vector<double>* weights, const RunConfig& config) {
  require_energy_args(u, k);
  checked_tuple_count(A.size(), k, config, "rep_table");
  RepTable table;
  table.k = k;
  table.u = u;
  table.weighted = weights != nullptr;
  const std::size_t n = A.size();
  if (n == 0) return table;
  std::vector<Rational> shifted;
  shifted.reserve(n);
  for (const Rational& a : A) shifted.push_back(a + u);

  // Split on the first coordinate; the rest of the tuple is enumerated in
  // lexicographic order with running products.
  std::vector<PairMap> partial(n);
  parallel_for(n, config.resolved_threads(), [&](std::size_t first) {
    PairMap& out = partial[first];
    std::vector<Rational> xs(static_cast<std::size_t>(k)), ys(static_cast<std::size_t>(k));
    std::vector<double> ws(static_cast<std::size_t>(k));
    xs[0] = A[first];
    ys[0] = shifted[first];
    ws[0] = weights ? (*weights)[first] : 1.0;
    std::vector<std::size_t> digit(static_cast<std::size_t>(k), 0);
    const auto descend = [&](auto&& self, std::size_t depth) -> void {
      if (depth == static_cast<std::size_t>(k)) {
        PartialMass& m = out[{xs[depth - 1], ys[depth - 1]}];
        m.count += 1;
        m.mass += ws[depth - 1];
        return;
      }
      for (std::size_t i = 0; i < n; ++i) {
        xs[depth] = xs[depth - 1] * A[i];
        ys[depth] = ys[depth - 1] * shifted[i];
        ws[depth] = ws[depth - 1] * (weights ? (*weights)[i] : 1.0);
        self(self, depth + 1);
      }
    };
    descend(descend, 1);
  });

  PairMap merged;
  for (auto& part : partial) {
    // Visit keys in sorted order so the floating-point merge is reproducible.
    std::vector<std::pair<std::pair<Rational, Rational>, PartialMass>> items(part.begin(), part.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [key, m] : items) {
      PartialMass& dst = merged[key];
      dst.count += m.count;
      dst.mass += m.mass;
    }
    part.clear();
  }
  table.entries.reserve(merged.size());
  for (const auto& [key, m] : merged) {
    table.entries.push_back({key.first, key.second, m.count, table.weighted ? m.mass : 0.0});
  }
  std::sort(table.entries.begin(), table.entries.end(), [](const RepEntry& a, const RepEntry& b) {
    return std::tie(a.x, a.y) < std::tie(b.x, b.y);
  });
  return table;
}

double kth_root(double value, int k) { return value <= 0.0 ? 0.0 : std::pow(value, 1.0 / k); }

template <typename Cells>
SplitReport split_report(const WeightedSet& A, const Rational& u, const std::vector<Integer>& primes,
                         int k, const Cells& cells, const RunConfig& config) {
  SplitReport r;
  r.k = k;
  r.primes = primes;
  r.lhs = kth_root(weighted_mixed_energy(A, u, k, config).real, k);
  r.coefficient = std::pow(static_cast<double>(split_coefficient(k)), static_cast<double>(primes.size()));
  for (const auto& [key, cell] : cells) {
    SplitCell c;
    if constexpr (std::is_same_v<std::decay_t<decltype(key)>, long>) {
      c.valuation = {key};
    } else {
      c.valuation = key;
    }
    c.size = cell.size();
    c.energy = weighted_mixed_energy(A.restrict_to(cell), u, k, config).real;
    c.root = kth_root(c.energy, k);
    r.rhs_sum += c.root;
    r.cells.push_back(std::move(c));
  }
  r.rhs = r.coefficient * r.rhs_sum;
  r.holds = r.lhs <= r.rhs * (1.0 + kRootTolerance) + 1e-300;
  return r;
}

void require_split_args(const WeightedSet& A, const Rational& u, int k) {
  require_energy_args(u, k);
  if (A.base.contains_zero()) throw InvalidArgument("splitting lemmas need 0 outside the set");
}

}  // namespace

WeightedSet WeightedSet::uniform(const RationalSet& A) {
  WeightedSet w;
  w.base = A;
  w.weights.assign(A.size(), A.empty() ? 0.0 : 1.0 / std::sqrt(static_cast<double>(A.size())));
  return w;
}

WeightedSet WeightedSet::make(const RationalSet& A, std::vector<double> weights) {
  if (weights.size() != A.size()) throw InvalidArgument("weight count does not match set size");
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("weights must be finite and nonnegative");
  }
  return WeightedSet{A, std::move(weights)};
}

double WeightedSet::weight_of(const Rational& a) const {
  const std::size_t i = base.index_of(a);
  if (i == base.size()) throw InvalidArgument("element " + a.to_string() + " is not in the weighted set");
  return weights[i];
}

bool WeightedSet::normalized() const {
  double s = 0.0;
  for (const double w : weights) s += w * w;
  return std::abs(s - 1.0) <= 1e-12;
}

WeightedSet WeightedSet::restrict_to(const RationalSet& subset) const {
  std::vector<double> w;
  w.reserve(subset.size());
  for (const Rational& a : subset) w.push_back(weight_of(a));
  return WeightedSet{subset, std::move(w)};
}

std::uint64_t RepTable::total_count() const {
  std::uint64_t total = 0;
  for (const auto& e : entries) total += e.count;
  return total;
}

EnergyValue RepTable::second_moment() const {
  EnergyValue e;
  e.weighted = weighted;
  if (weighted) {
    for (const auto& entry : entries) e.real += entry.weight_mass * entry.weight_mass;
  } else {
    std::vector<std::uint64_t> counts;
    counts.reserve(entries.size());
    for (const auto& entry : entries) counts.push_back(entry.count);
    e.exact = sum_of_squares(counts);
  }
  return e;
}

RepTable rep_table(const RationalSet& A, const Rational& u, int k, const RunConfig& config) {
  return build_rep_table(A, u, k, nullptr, config);
}

RepTable weighted_rep_table(const WeightedSet& A, const Rational& u, int k, const RunConfig& config) {
  return build_rep_table(A.base, u, k, &A.weights, config);
}

EnergyValue mixed_energy(const RationalSet& A, const Rational& u, int k, const RunConfig& config) {
  require_energy_args(u, k);
  return count_energy(A, u, k, Sides::kBoth, config, "mixed_energy");
}

EnergyValue weighted_mixed_energy(const WeightedSet& A, const Rational& u, int k,
                                  const RunConfig& config) {
  require_energy_args(u, k);
  for (const double w : A.weights) {
    if (!(w >= 0.0)) throw InvalidArgument("weights must be nonnegative");
  }
  checked_tuple_count(A.base.size(), k, config, "weighted_mixed_energy");
  EnergyValue e;
  e.weighted = true;
  if (A.base.empty()) return e;
  const Encoding enc = encode(A.base, u, k, Sides::kBoth);
  e.real = sum_of_squares(key_distribution(enc, k, &A.weights, config).masses);
  return e;
}

EnergyValue multiplicative_energy_shifted(const RationalSet& A, const Rational& u, int k,
                                          const RunConfig& config) {
  require_energy_args(u, k);
  return count_energy(A, u, k, Sides::kShifted, config, "multiplicative_energy_shifted");
}

EnergyValue multiplicative_energy(const RationalSet& A, int k, const RunConfig& config) {
  if (k < 2) throw InvalidArgument("k must be >= 2");
  return count_energy(A, Rational(1), k, Sides::kProduct, config, "multiplicative_energy");
}

EnergyValue additive_energy_kfold(const RationalSet& A, int k, const RunConfig& config) {
  if (k < 2) throw InvalidArgument("k must be >= 2");
  checked_tuple_count(A.size(), k, config, "additive_energy_kfold");
  EnergyValue e;
  if (A.empty()) return e;
  // Sum-representation table by iterated convolution.
  std::unordered_map<Rational, std::uint64_t, RationalHash> reps;
  for (const Rational& a : A) reps[a] += 1;
  for (int step = 2; step <= k; ++step) {
    std::unordered_map<Rational, std::uint64_t, RationalHash> next;
    next.reserve(reps.size() * 2);
    for (const auto& [s, c] : reps) {
      for (const Rational& a : A) next[s + a] += c;
    }
    reps = std::move(next);
  }
  std::vector<std::uint64_t> counts;
  counts.reserve(reps.size());
  for (const auto& [s, c] : reps) counts.push_back(c);
  e.exact = sum_of_squares(counts);
  return e;
}

MixedEnergyForm::MixedEnergyForm(const RationalSet& A, const Rational& u, int k,
                                 const RunConfig& config)
    : n_(A.size()), k_(k) {
  require_energy_args(u, k);
  const std::uint64_t tuples = checked_tuple_count(n_, k, config, "MixedEnergyForm");
  if (n_ == 0) return;
  const Encoding enc = encode(A, u, k, Sides::kBoth);
  KeyTable keys(enc.width);
  tuple_key_.reserve(tuples);
  std::vector<std::vector<std::int32_t>> prefix(static_cast<std::size_t>(k) + 1,
                                                std::vector<std::int32_t>(enc.width, 0));
  const auto descend = [&](auto&& self, std::size_t depth) -> void {
    if (depth == static_cast<std::size_t>(k)) {
      tuple_key_.push_back(keys.intern(prefix[depth].data()));
      return;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      enc.combine(prefix[depth].data(), i, prefix[depth + 1].data());
      self(self, depth + 1);
    }
  };
  descend(descend, 0);
  key_count_ = keys.size();
}

namespace {

// Visits every k-tuple in lexicographic order with the running products of
// the weights: visit(tuple_index, digits, prefix) where prefix[j] is the
// product of the first j weights.
template <typename Visit>
void for_each_tuple(std::size_t n, int k, std::span<const double> w, Visit&& visit) {
  const std::size_t K = static_cast<std::size_t>(k);
  std::vector<std::size_t> digit(K, 0);
  std::vector<double> prefix(K + 1, 1.0);
  std::size_t index = 0;
  const auto descend = [&](auto&& self, std::size_t depth) -> void {
    if (depth == K) {
      visit(index++, digit, prefix);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      digit[depth] = i;
      prefix[depth + 1] = prefix[depth] * w[i];
      self(self, depth + 1);
    }
  };
  descend(descend, 0);
}

}  // namespace

double MixedEnergyForm::value(std::span<const double> w) const {
  if (w.size() != n_) throw InvalidArgument("weight vector has the wrong dimension");
  if (n_ == 0) return 0.0;
  std::vector<double> mass(key_count_, 0.0);
  for_each_tuple(n_, k_, w, [&](std::size_t t, const auto&, const auto& prefix) {
    mass[tuple_key_[t]] += prefix.back();
  });
  return sum_of_squares(mass);
}

double MixedEnergyForm::value_and_gradient(std::span<const double> w, std::span<double> grad) const {
  if (w.size() != n_ || grad.size() != n_) throw InvalidArgument("weight vector has the wrong dimension");
  std::fill(grad.begin(), grad.end(), 0.0);
  if (n_ == 0) return 0.0;
  std::vector<double> mass(key_count_, 0.0);
  for_each_tuple(n_, k_, w, [&](std::size_t t, const auto&, const auto& prefix) {
    mass[tuple_key_[t]] += prefix.back();
  });
  const std::size_t K = static_cast<std::size_t>(k_);
  std::vector<double> suffix(K + 1, 1.0);
  for_each_tuple(n_, k_, w, [&](std::size_t t, const auto& digit, const auto& prefix) {
    const double m2 = 2.0 * mass[tuple_key_[t]];
    suffix[K] = 1.0;
    for (std::size_t j = K; j-- > 0;) suffix[j] = suffix[j + 1] * w[digit[j]];
    for (std::size_t j = 0; j < K; ++j) grad[digit[j]] += m2 * prefix[j] * suffix[j + 1];
  });
  return sum_of_squares(mass);
}

Integer MixedEnergyForm::unweighted() const {
  std::vector<std::uint64_t> counts(key_count_, 0);
  for (const std::uint32_t id : tuple_key_) counts[id] += 1;
  return sum_of_squares(counts);
}

std::map<long, RationalSet> padic_split(const RationalSet& A, const Integer& p) {
  std::map<long, std::vector<Rational>> cells;
  for (const Rational& a : A) {
    if (a.is_zero()) throw InvalidArgument("padic_split: 0 is in the set");
    cells[valuation(a, p)].push_back(a);
  }
  std::map<long, RationalSet> out;
  for (auto& [d, xs] : cells) out.emplace(d, RationalSet(std::move(xs)));
  return out;
}

std::map<std::vector<long>, RationalSet> multiprime_split(const RationalSet& A,
                                                         const std::vector<Integer>& primes) {
  std::map<std::vector<long>, std::vector<Rational>> cells;
  for (const Rational& a : A) {
    if (a.is_zero()) throw InvalidArgument("multiprime_split: 0 is in the set");
    std::vector<long> key;
    key.reserve(primes.size());
    for (const Integer& p : primes) key.push_back(valuation(a, p));
    cells[std::move(key)].push_back(a);
  }
  std::map<std::vector<long>, RationalSet> out;
  for (auto& [d, xs] : cells) out.emplace(d, RationalSet(std::move(xs)));
  return out;
}

CauchySchwarzReport verify_cs_chain(const RationalSet& A, const Rational& u, int k,
                                    const RunConfig& config) {
  require_energy_args(u, k);
  if (A.contains_zero()) throw InvalidArgument("verify_cs_chain: 0 is in the set");
  CauchySchwarzReport r;
  r.k = k;
  mpz_ui_pow_ui(r.lhs.get_mpz_t(), A.size(), static_cast<unsigned long>(2 * k));
  r.product_size = k_fold_product(A, k, config).size();
  r.shifted_size = shifted_k_fold_product(A, u, k, config).size();
  r.energy = mixed_energy(A, u, k, config).exact;
  r.rhs = Integer(r.product_size) * Integer(r.shifted_size) * r.energy;
  if (r.lhs != 0) r.slack = Rational::canonicalize(r.rhs, r.lhs);
  r.holds = r.lhs <= r.rhs;
  return r;
}

std::uint64_t split_coefficient(int k) {
  const auto kk = static_cast<std::uint64_t>(k);
  return 2 * kk * (2 * kk - 1);
}

SplitReport verify_basecase_split(const WeightedSet& A, const Rational& u, const Integer& p, int k,
                                  const RunConfig& config) {
  require_split_args(A, u, k);
  return split_report(A, u, {p}, k, padic_split(A.base, p), config);
}

SplitReport verify_multiprime_split(const WeightedSet& A, const Rational& u,
                                    const std::vector<Integer>& primes, int k,
                                    const RunConfig& config) {
  require_split_args(A, u, k);
  for (const Integer& p : primes) {
    if (!is_prime(p)) throw InvalidArgument(p.get_str() + " is not prime");
  }
  return split_report(A, u, primes, k, multiprime_split(A.base, primes), config);
}

}  // namespace sumprod
