#include "sumprod/separation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sumprod/error.hpp"
#include "sumprod/factor.hpp"
#include "sumprod/parallel.hpp"
#include "sumprod/random.hpp"
#include "sumprod/setops.hpp"

namespace sumprod {
namespace {

double kth_root(double value, int k) { return value <= 0.0 ? 0.0 : std::pow(value, 1.0 / k); }

void normalize(std::vector<double>& w) {
  double s = 0.0;
  for (const double x : w) s += x * x;
  if (s <= 0.0) return;
  const double inv = 1.0 / std::sqrt(s);
  for (double& x : w) x *= inv;
}

void require_lambda_args(const RationalSet& A, const Rational& u, int k) {
  if (u.is_zero()) throw InvalidArgument("shift u must be nonzero");
  if (k < 2) throw InvalidArgument("k must be >= 2");
  if (A.empty()) throw InvalidArgument("Lambda of the empty set is undefined");
}

}  // namespace

Decomposition::Decomposition(RationalSet X, std::map<Rational, RationalSet> fibers)
    : X_(std::move(X)), fibers_(std::move(fibers)) {
  for (const Rational& x : X_) {
    if (x.is_zero()) throw InvalidArgument("decomposition: 0 is in X");
    if (!fibers_.contains(x)) throw InvalidArgument("decomposition: no fiber for x = " + x.to_string());
  }
  for (const auto& [x, Y] : fibers_) {
    if (!X_.contains(x)) throw InvalidArgument("decomposition: fiber keyed by " + x.to_string() + " not in X");
    if (Y.contains_zero()) throw InvalidArgument("decomposition: 0 in fiber of " + x.to_string());
  }
  // (x, Y_{x'}) = 1 for all x, x' in X.
  for (const Rational& x : X_) {
    for (const auto& [x2, Y] : fibers_) {
      for (const Rational& y : Y) {
        if (!coprime(x, y)) {
          throw InvalidArgument("decomposition: coprimality fails for (x, x', y) = (" + x.to_string() +
                                ", " + x2.to_string() + ", " + y.to_string() + ")");
        }
      }
    }
  }
  std::vector<Rational> all;
  for (const Rational& x : X_) {
    const RationalSet p = piece(x);
    all.insert(all.end(), p.begin(), p.end());
  }
  const std::size_t total = all.size();
  Z_ = RationalSet(std::move(all));
  if (Z_.size() != total) throw InvalidArgument("decomposition: the pieces x*Y_x are not disjoint");
}

RationalSet Decomposition::piece(const Rational& x) const { return dilate(fibers_.at(x), x); }

SeparationReport separation_ratio(const Decomposition& D, const Rational& u, int k,
                                  const WeightedSet& weights_on_Z, const RunConfig& config) {
  if (weights_on_Z.base != D.Z()) throw InvalidArgument("separation_ratio: weights must live on Z");
  SeparationReport r;
  r.k = k;
  r.u = u;
  r.pieces = D.X().size();
  r.lhs = kth_root(weighted_mixed_energy(weights_on_Z, u, k, config).real, k);
  for (const Rational& x : D.X()) {
    const WeightedSet piece = weights_on_Z.restrict_to(D.piece(x));
    r.rhs_sum += kth_root(weighted_mixed_energy(piece, u, k, config).real, k);
  }
  r.ratio = r.rhs_sum > 0.0 ? r.lhs / r.rhs_sum : 0.0;
  return r;
}

ProbeReport probe_separating_constant(const RationalSet& X, const Rational& u, int k, int probes,
                                      std::uint64_t seed, const RunConfig& config) {
  if (X.contains_zero()) throw InvalidArgument("probe_separating_constant: 0 is in X");
  if (u.is_zero()) throw InvalidArgument("shift u must be nonzero");
  if (k < 2) throw InvalidArgument("k must be >= 2");
  ProbeReport report;
  if (X.empty()) return report;

  // Fresh primes: the four primes following the largest prime dividing X.
  const auto support = prime_support(X);
  std::vector<Integer> fresh;
  Integer q = support.empty() ? Integer(1) : support.back();
  for (int i = 0; i < 4; ++i) fresh.push_back(q = next_prime(q));
  std::vector<Rational> candidates{Rational(1)};
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    candidates.emplace_back(fresh[i]);
    candidates.emplace_back(Integer(fresh[i] * fresh[i]));
    for (std::size_t j = i + 1; j < fresh.size(); ++j) candidates.emplace_back(Integer(fresh[i] * fresh[j]));
  }

  report.ratios.assign(static_cast<std::size_t>(std::max(probes, 0)), 0.0);
  std::vector<char> fell_back(report.ratios.size(), 0);
  parallel_for(report.ratios.size(), config.resolved_threads(), [&](std::size_t probe) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (probe + 1)));
    std::map<Rational, RationalSet> fibers;
    std::size_t z_size = 0;
    for (const Rational& x : X) {
      const std::size_t size = 1 + rng.below(3);
      std::vector<Rational> pool = candidates;
      std::vector<Rational> picked;
      for (std::size_t s = 0; s < size; ++s) {
        const std::size_t j = rng.below(pool.size());
        picked.push_back(pool[j]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
      }
      z_size += picked.size();
      fibers.emplace(x, RationalSet(std::move(picked)));
    }
    long double tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= static_cast<long double>(z_size);
    if (tuples > static_cast<long double>(config.tuple_budget)) {
      fell_back[probe] = 1;
      for (auto& [x, Y] : fibers) Y = RationalSet{Rational(1)};
    }
    const Decomposition D(X, std::move(fibers));
    std::vector<double> w(D.Z().size());
    for (double& v : w) v = rng.unit();
    normalize(w);
    RunConfig inner = config;
    inner.threads = 1;
    report.ratios[probe] = separation_ratio(D, u, k, WeightedSet::make(D.Z(), std::move(w)), inner).ratio;
  });
  for (std::size_t i = 0; i < report.ratios.size(); ++i) {
    report.max_ratio = std::max(report.max_ratio, report.ratios[i]);
    report.fallback_probes += fell_back[i] != 0;
  }
  return report;
}

bool is_prime_power_set(const RationalSet& X) {
  Integer prime = 0;
  for (const Rational& x : X) {
    if (x.sign() <= 0) return false;
    const FactoredRational f = factor(x);
    if (f.exponents.empty()) continue;
    if (f.exponents.size() > 1) return false;
    const Integer& p = f.exponents.begin()->first;
    if (prime == 0) {
      prime = p;
    } else if (prime != p) {
      return false;
    }
  }
  return true;
}

double separating_bound(const RationalSet& X, int k) {
  const auto trivial = static_cast<double>(X.size());
  if (!is_prime_power_set(X)) return trivial;
  return std::min(trivial, static_cast<double>(split_coefficient(k)));
}

std::string to_string(LambdaMethod m) {
  switch (m) {
    case LambdaMethod::kUniform: return "uniform";
    case LambdaMethod::kAscent: return "ascent";
    case LambdaMethod::kGrid: return "grid";
  }
  return "unknown";
}

LambdaEstimate lambda_uniform(const RationalSet& A, const Rational& u, int k, const RunConfig& config) {
  require_lambda_args(A, u, k);
  LambdaEstimate est;
  est.method = LambdaMethod::kUniform;
  const Integer energy = mixed_energy(A, u, k, config).exact;
  Integer denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), A.size(), static_cast<unsigned long>(k));
  est.value = kth_root(mpq_class(energy, denom).get_d(), k);
  est.witness.assign(A.size(), 1.0 / std::sqrt(static_cast<double>(A.size())));
  est.evaluations = 1;
  return est;
}

LambdaEstimate lambda_ascent(const RationalSet& A, const Rational& u, int k, int iters,
                             std::uint64_t seed, const RunConfig& config) {
  require_lambda_args(A, u, k);
  const MixedEnergyForm form(A, u, k, config);
  const std::size_t n = A.size();
  LambdaEstimate est;
  est.method = LambdaMethod::kAscent;

  constexpr int kStarts = 4;
  constexpr int kBacktracks = 30;
  Rng rng(seed);
  std::vector<double> grad(n), candidate(n);
  double best = -1.0;
  for (int start = 0; start < kStarts; ++start) {
    std::vector<double> w(n, 1.0);
    if (start > 0) {
      for (double& x : w) x = 0.5 + rng.unit();
    }
    normalize(w);
    double f = form.value_and_gradient(w, grad);
    ++est.evaluations;
    if (f > best) {
      best = f;
      est.witness = w;
    }
    for (int it = 0; it < iters; ++it) {
      // At a constrained critical point grad_a = 2k F w_a on the support,
      // so ratio_a = grad_a / (2k F w_a) measures the distance from it.
      bool improved = false;
      double eta = 1.0;
      for (int bt = 0; bt < kBacktracks && f > 0.0; ++bt, eta *= 0.5) {
        for (std::size_t a = 0; a < n; ++a) {
          const double ratio = w[a] > 0.0 ? grad[a] / (2.0 * k * f * w[a]) : 0.0;
          candidate[a] = w[a] > 0.0 ? w[a] * std::pow(std::max(ratio, 0.0), eta) : 0.0;
        }
        normalize(candidate);
        const double fc = form.value(candidate);
        ++est.evaluations;
        if (fc > f) {
          w = candidate;
          f = form.value_and_gradient(w, grad);
          ++est.evaluations;
          improved = true;
          break;
        }
      }
      if (f > best) {
        best = f;
        est.witness = w;
      }
      est.trace.push_back(kth_root(best, k));
      if (!improved) break;
    }
  }
  est.value = kth_root(best, k);
  return est;
}

LambdaEstimate lambda_grid_oracle(const RationalSet& A, const Rational& u, int k, double step,
                                  const RunConfig& config) {
  require_lambda_args(A, u, k);
  if (A.size() > 4) throw InvalidArgument("lambda_grid_oracle supports |A| <= 4");
  if (!(step > 0.0 && step <= 0.2)) throw InvalidArgument("grid step must lie in (0, 0.2]");
  const MixedEnergyForm form(A, u, k, config);
  const std::size_t n = A.size();
  const std::size_t angles = n - 1;

  // Angles 0, step, 2 step, ..., always including pi/2.
  std::vector<double> theta;
  const double half_pi = std::numbers::pi / 2.0;
  for (std::size_t j = 0; static_cast<double>(j) * step < half_pi; ++j) theta.push_back(static_cast<double>(j) * step);
  theta.push_back(half_pi);
  std::vector<double> cosines(theta.size()), sines(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    cosines[j] = std::cos(theta[j]);
    sines[j] = std::sin(theta[j]);
  }
  // The last angle at pi/2 makes cos exactly zero.
  cosines.back() = 0.0;
  sines.back() = 1.0;

  LambdaEstimate est;
  est.method = LambdaMethod::kGrid;
  if (angles == 0) {
    est.witness = {1.0};
    est.value = kth_root(form.value(est.witness), k);
    est.evaluations = 1;
    return est;
  }
  const std::size_t m = theta.size();
  struct Best {
    double f = -1.0;
    std::vector<double> w;
    std::uint64_t evaluations = 0;
  };
  std::vector<Best> slots(m);
  parallel_for(m, config.resolved_threads(), [&](std::size_t first) {
    Best& best = slots[first];
    std::vector<std::size_t> idx(angles, 0);
    idx[0] = first;
    std::vector<double> w(n);
    const std::size_t inner = angles - 1;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < inner; ++i) combos *= m;
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t rest = c;
      for (std::size_t i = angles; i-- > 1;) {
        idx[i] = rest % m;
        rest /= m;
      }
      double radius = 1.0;
      for (std::size_t i = 0; i < angles; ++i) {
        w[i] = radius * cosines[idx[i]];
        radius *= sines[idx[i]];
      }
      w[angles] = radius;
      const double f = form.value(w);
      ++best.evaluations;
      if (f > best.f) {
        best.f = f;
        best.w = w;
      }
    }
  });
  double best = -1.0;
  for (const auto& s : slots) {
    est.evaluations += s.evaluations;
    if (s.f > best) {
      best = s.f;
      est.witness = s.w;
    }
  }
  for (double& x : est.witness) x = std::max(x, 0.0);
  est.value = kth_root(best, k);
  return est;
}

StabilityReport verify_stability(const RationalSet& A, const Rational& u, int k, int trials,
                                 std::uint64_t seed, double step, const RunConfig& config) {
  if (A.size() > 4) throw InvalidArgument("verify_stability needs |A| <= 4 (exact-oracle regime)");
  StabilityReport r;
  r.lambda_full = lambda_grid_oracle(A, u, k, step, config).value;
  Rng rng(seed);
  const std::uint64_t masks = (std::uint64_t{1} << A.size()) - 1;  // nonempty subsets
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t mask = 1 + rng.below(masks);
    std::vector<Rational> elems;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if ((mask >> i) & 1) elems.push_back(A[i]);
    }
    StabilityReport::Trial trial;
    trial.subset = RationalSet(std::move(elems));
    trial.lambda = lambda_grid_oracle(trial.subset, u, k, step, config).value;
    trial.holds = trial.lambda <= r.lambda_full + kGridTolerance;
    r.holds = r.holds && trial.holds;
    r.trials.push_back(std::move(trial));
  }
  return r;
}

SubsetLemmaReport verify_subset_lemma_instance(const RationalSet& A, const RationalSet& A_sub,
                                               const Rational& u, int k, double step,
                                               const RunConfig& config) {
  for (const Rational& a : A_sub) {
    if (!A.contains(a)) throw InvalidArgument("subset lemma: A' is not contained in A");
  }
  if (A_sub.size() < 2) throw InvalidArgument("subset lemma: |A'| must be >= 2");
  SubsetLemmaReport r;
  r.lambda = lambda_grid_oracle(A, u, k, step, config).value;
  r.doubling = doubling_constant(A, config);
  r.psi = separating_bound(A_sub, k);
  const double K = r.doubling.to_double();
  const double ratio = static_cast<double>(A.size()) / static_cast<double>(A_sub.size() - 1);
  r.rhs = K * K * K * K * ratio * ratio * r.psi;
  r.holds = r.lambda <= r.rhs + kGridTolerance;
  return r;
}

}  // namespace sumprod
