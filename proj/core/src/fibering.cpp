#include "sumprod/fibering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sumprod/error.hpp"
#include "sumprod/parallel.hpp"

namespace sumprod {
namespace {

Point add_points(const Point& a, const Point& b) {
  Point s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

Point concat(const Point& head, const Point& tail) {
  Point p = head;
  p.insert(p.end(), tail.begin(), tail.end());
  return p;
}

void check_edges(const LatticeSet& A, const LatticeSet& B, const EdgeList& G) {
  for (const auto& [i, j] : G) {
    if (i >= A.size() || j >= B.size()) {
      throw InvalidArgument("edge (" + std::to_string(i) + ", " + std::to_string(j) + ") is out of range");
    }
  }
}

// Groups a sorted set by its length-t prefix.
void split_side(const LatticeSet& S, std::size_t t, LatticeSet& base, std::vector<LatticeSet>& fibers,
                std::vector<std::pair<std::uint32_t, std::uint32_t>>& locate) {
  const std::size_t n = S.dimension();
  std::vector<Point> prefixes;
  std::vector<std::vector<Point>> suffixes;
  locate.assign(S.size(), {0, 0});
  for (std::size_t i = 0; i < S.size(); ++i) {
    const Point& p = S[i];
    Point head(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(t));
    if (prefixes.empty() || prefixes.back() != head) {
      prefixes.push_back(std::move(head));
      suffixes.emplace_back();
    }
    locate[i] = {static_cast<std::uint32_t>(prefixes.size() - 1),
                 static_cast<std::uint32_t>(suffixes.back().size())};
    suffixes.back().emplace_back(p.begin() + static_cast<std::ptrdiff_t>(t), p.end());
  }
  base = LatticeSet(t, std::move(prefixes));
  fibers.clear();
  fibers.reserve(suffixes.size());
  for (auto& s : suffixes) fibers.emplace_back(n - t, std::move(s));
}

std::uint64_t sumset_size(const LatticeSet& A, const LatticeSet& B, const EdgeList& G) {
  std::vector<Point> sums;
  sums.reserve(G.size());
  for (const auto& [i, j] : G) sums.push_back(add_points(A[i], B[j]));
  std::sort(sums.begin(), sums.end());
  return static_cast<std::uint64_t>(std::unique(sums.begin(), sums.end()) - sums.begin());
}

Rational ratio(std::uint64_t n, std::uint64_t d) {
  return Rational::canonicalize(Integer(static_cast<unsigned long>(n)), Integer(static_cast<unsigned long>(d)));
}

std::uint64_t max_fiber(const std::vector<LatticeSet>& fibers) {
  std::uint64_t m = 0;
  for (const auto& f : fibers) m = std::max<std::uint64_t>(m, f.size());
  return m;
}

// Working state of the regularization: a lattice graph with its fiber view.
struct Working {
  LatticeSet A, B;
  EdgeList edges;
  FiberView view;
};

Working make_working(const LatticeSet& A, const LatticeSet& B, EdgeList edges, std::size_t t) {
  Working w{A, B, std::move(edges), {}};
  normalize_edges(w.edges);
  w.view = fiber_view(w.A, w.B, w.edges, t);
  return w;
}

// Restricts to the points whose index passes the predicates; remaps edges.
template <typename KeepA, typename KeepB>
Working restrict(const Working& w, std::size_t t, KeepA keep_a, KeepB keep_b) {
  std::vector<Point> pa, pb;
  std::vector<std::uint32_t> ma(w.A.size(), UINT32_MAX), mb(w.B.size(), UINT32_MAX);
  for (std::uint32_t i = 0; i < w.A.size(); ++i) {
    if (keep_a(i)) {
      ma[i] = static_cast<std::uint32_t>(pa.size());
      pa.push_back(w.A[i]);
    }
  }
  for (std::uint32_t j = 0; j < w.B.size(); ++j) {
    if (keep_b(j)) {
      mb[j] = static_cast<std::uint32_t>(pb.size());
      pb.push_back(w.B[j]);
    }
  }
  EdgeList e;
  for (const auto& [i, j] : w.edges) {
    if (ma[i] != UINT32_MAX && mb[j] != UINT32_MAX) e.emplace_back(ma[i], mb[j]);
  }
  // Points were visited in sorted order, so indices stay aligned.
  return make_working(LatticeSet(w.A.dimension(), std::move(pa)), LatticeSet(w.B.dimension(), std::move(pb)),
                      std::move(e), t);
}

EdgeList flip(const EdgeList& e) {
  EdgeList f;
  f.reserve(e.size());
  for (const auto& [i, j] : e) f.emplace_back(j, i);
  normalize_edges(f);
  return f;
}

// Fiber doubling K_+^2 = |A_2 +_{G_2} B_2|^2 / (|A_2||B_2|).
Rational fiber_doubling_squared(const FiberView& v, std::uint32_t a1, std::uint32_t b1, const EdgeList& g2) {
  const std::uint64_t s = sumset_size(v.fibers_A[a1], v.fibers_B[b1], g2);
  return ratio(s * s, v.fibers_A[a1].size() * v.fibers_B[b1].size());
}

}  // namespace

LatticeSet restricted_sumset(const LatticeSet& A, const LatticeSet& B, const EdgeList& G) {
  if (A.dimension() != B.dimension()) throw InvalidArgument("restricted_sumset: dimensions differ");
  check_edges(A, B, G);
  std::vector<Point> sums;
  sums.reserve(G.size());
  for (const auto& [i, j] : G) sums.push_back(add_points(A[i], B[j]));
  return LatticeSet(A.dimension(), std::move(sums));
}

LatticeSet FiberView::reconstruct_A() const {
  std::vector<Point> pts;
  for (std::size_t b = 0; b < base_A.size(); ++b) {
    for (const Point& s : fibers_A[b]) pts.push_back(concat(base_A[b], s));
  }
  return LatticeSet(base_A.dimension() + (fibers_A.empty() ? 0 : fibers_A.front().dimension()), std::move(pts));
}

LatticeSet FiberView::reconstruct_B() const {
  std::vector<Point> pts;
  for (std::size_t b = 0; b < base_B.size(); ++b) {
    for (const Point& s : fibers_B[b]) pts.push_back(concat(base_B[b], s));
  }
  return LatticeSet(base_B.dimension() + (fibers_B.empty() ? 0 : fibers_B.front().dimension()), std::move(pts));
}

EdgeList FiberView::reconstruct_graph(const LatticeSet& A, const LatticeSet& B) const {
  EdgeList out;
  for (const auto& [pair, g2] : fiber_graphs) {
    const auto [a1, b1] = pair;
    for (const auto& [i, j] : g2) {
      const std::size_t ia = A.index_of(concat(base_A[a1], fibers_A[a1][i]));
      const std::size_t ib = B.index_of(concat(base_B[b1], fibers_B[b1][j]));
      if (ia == A.size() || ib == B.size()) throw InvalidArgument("reconstruct_graph: point not in set");
      out.emplace_back(static_cast<std::uint32_t>(ia), static_cast<std::uint32_t>(ib));
    }
  }
  normalize_edges(out);
  return out;
}

FiberView fiber_view(const LatticeSet& A, const LatticeSet& B, const EdgeList& G, std::size_t t) {
  if (A.dimension() != B.dimension()) throw InvalidArgument("fiber_view: dimensions differ");
  if (t > A.dimension()) {
    throw InvalidArgument("fiber_view: split " + std::to_string(t) + " outside [0, " +
                          std::to_string(A.dimension()) + "]");
  }
  check_edges(A, B, G);
  FiberView v;
  v.split = t;
  split_side(A, t, v.base_A, v.fibers_A, v.locate_A);
  split_side(B, t, v.base_B, v.fibers_B, v.locate_B);
  for (const auto& [i, j] : G) {
    const auto [a1, a2] = v.locate_A[i];
    const auto [b1, b2] = v.locate_B[j];
    v.fiber_graphs[{a1, b1}].emplace_back(a2, b2);
  }
  for (auto& [pair, g2] : v.fiber_graphs) {
    normalize_edges(g2);
    v.base_graph.push_back(pair);
  }
  return v;
}

FiberGraphSumReport verify_fiber_graph_sum(const LatticeSet& A, const LatticeSet& B, const EdgeList& G,
                                           std::size_t t) {
  const FiberView v = fiber_view(A, B, G, t);
  FiberGraphSumReport r;
  r.split = t;
  r.lhs = restricted_sumset(A, B, G).size();
  r.base_sumset = restricted_sumset(v.base_A, v.base_B, v.base_graph).size();

  std::vector<std::uint64_t> sizes(v.base_graph.size());
  parallel_for(v.base_graph.size(), RunConfig{}.resolved_threads(), [&](std::size_t idx) {
    const auto [a1, b1] = v.base_graph[idx];
    sizes[idx] = sumset_size(v.fibers_A[a1], v.fibers_B[b1], v.fiber_graphs.at(v.base_graph[idx]));
  });
  r.min_on_base = sizes.empty() ? 0 : *std::min_element(sizes.begin(), sizes.end());
  const bool base_complete = v.base_graph.size() == v.base_A.size() * v.base_B.size();
  r.min_all_pairs = base_complete ? r.min_on_base : 0;
  r.rhs = r.base_sumset * r.min_all_pairs;
  r.rhs_strong = r.base_sumset * r.min_on_base;
  r.holds = r.lhs >= r.rhs;
  r.holds_strong = r.lhs >= r.rhs_strong;
  return r;
}

PruneResult degree_prune(std::size_t a_size, std::size_t b_size, const EdgeList& G) {
  EdgeList edges = G;
  normalize_edges(edges);
  if (edges.empty()) throw InvalidArgument("degree_prune: the graph has no edges");
  for (const auto& [i, j] : edges) {
    if (i >= a_size || j >= b_size) throw InvalidArgument("degree_prune: edge out of range");
  }
  const unsigned __int128 total = edges.size();
  PruneResult r;
  r.delta = ratio(edges.size(), static_cast<std::uint64_t>(a_size) * b_size);

  std::vector<char> alive_a(a_size, 1), alive_b(b_size, 1);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::uint64_t> da(a_size, 0), db(b_size, 0);
    for (const auto& [i, j] : edges) {
      ++da[i];
      ++db[j];
    }
    // deg a >= delta |B| / 4  <=>  4 deg a |A| >= |G|; symmetrically for b.
    for (std::size_t i = 0; i < a_size; ++i) {
      if (alive_a[i] && static_cast<unsigned __int128>(4) * da[i] * a_size < total) {
        alive_a[i] = 0;
        changed = true;
      }
    }
    for (std::size_t j = 0; j < b_size; ++j) {
      if (alive_b[j] && static_cast<unsigned __int128>(4) * db[j] * b_size < total) {
        alive_b[j] = 0;
        changed = true;
      }
    }
    std::erase_if(edges, [&](const auto& e) { return !alive_a[e.first] || !alive_b[e.second]; });
  }
  for (std::uint32_t i = 0; i < a_size; ++i) {
    if (alive_a[i]) r.kept_A.push_back(i);
  }
  for (std::uint32_t j = 0; j < b_size; ++j) {
    if (alive_b[j]) r.kept_B.push_back(j);
  }
  r.edges = std::move(edges);
  return r;
}

PrunePostconditions check_prune(std::size_t a_size, std::size_t b_size, const EdgeList& G,
                                const PruneResult& result) {
  EdgeList input = G;
  normalize_edges(input);
  const unsigned __int128 total = input.size();
  std::vector<std::uint64_t> da(a_size, 0), db(b_size, 0);
  bool consistent = std::includes(input.begin(), input.end(), result.edges.begin(), result.edges.end());
  for (const auto& [i, j] : result.edges) {
    if (!std::binary_search(result.kept_A.begin(), result.kept_A.end(), i) ||
        !std::binary_search(result.kept_B.begin(), result.kept_B.end(), j)) {
      consistent = false;
      continue;
    }
    ++da[i];
    ++db[j];
  }
  PrunePostconditions p;
  p.degree_A = consistent && std::all_of(result.kept_A.begin(), result.kept_A.end(), [&](std::uint32_t i) {
                 return static_cast<unsigned __int128>(4) * da[i] * a_size >= total;
               });
  p.degree_B = consistent && std::all_of(result.kept_B.begin(), result.kept_B.end(), [&](std::uint32_t j) {
                 return static_cast<unsigned __int128>(4) * db[j] * b_size >= total;
               });
  // |A'| >= delta |A| / 2  <=>  2 |A'| |B| >= |G|.
  p.size_A = static_cast<unsigned __int128>(2) * result.kept_A.size() * b_size >= total;
  p.size_B = static_cast<unsigned __int128>(2) * result.kept_B.size() * a_size >= total;
  p.size_G = static_cast<unsigned __int128>(2) * result.edges.size() >= total;
  return p;
}

PigeonholeClass dyadic_pigeonhole(const std::vector<PigeonholeItem>& items, const Rational& lo,
                                  const Rational& hi) {
  if (items.empty()) throw InvalidArgument("dyadic_pigeonhole: no items");
  if (lo.sign() <= 0) throw InvalidArgument("dyadic_pigeonhole: lo must be positive");
  std::map<long, PigeonholeClass> classes;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [value, mass] = items[i];
    if (value < lo || value > hi) {
      throw InvalidArgument("dyadic_pigeonhole: value " + value.to_string() + " outside [" + lo.to_string() +
                            ", " + hi.to_string() + "]");
    }
    if (mass.sign() < 0) throw InvalidArgument("dyadic_pigeonhole: negative mass");
    // j = floor(log2(value / lo)) = bit length of floor(value / lo) minus one.
    const Rational q = value / lo;
    const Integer fl = q.num() / q.den();
    const long j = static_cast<long>(mpz_sizeinbase(fl.get_mpz_t(), 2)) - 1;
    PigeonholeClass& c = classes[j];
    c.index = j;
    c.members.push_back(i);
    c.mass += mass;
  }
  const PigeonholeClass* best = nullptr;
  for (const auto& [j, c] : classes) {
    if (best == nullptr || c.mass > best->mass) best = &c;
  }
  PigeonholeClass out = *best;
  out.nonempty_classes = classes.size();
  return out;
}

std::uint64_t max_fiber_sum(const LatticeSet& A, const LatticeSet& B, std::size_t t) {
  if (A.dimension() != B.dimension()) throw InvalidArgument("max_fiber_sum: dimensions differ");
  if (t > A.dimension()) throw InvalidArgument("max_fiber_sum: split out of range");
  if (t == 0) return A.size() + B.size();
  const FiberView v = fiber_view(A, B, {}, t);
  return max_fiber(v.fibers_A) + max_fiber(v.fibers_B);
}

std::size_t choose_split_coordinate(const LatticeSet& A, const LatticeSet& B) {
  if (A.dimension() != B.dimension()) throw InvalidArgument("choose_split_coordinate: dimensions differ");
  const std::size_t n = A.dimension();
  if (n == 0) return 0;
  const Integer N = Integer(static_cast<unsigned long>(A.size())) * static_cast<unsigned long>(B.size());
  std::vector<Integer> f4(n + 1);
  for (std::size_t t = 0; t <= n; ++t) {
    const Integer f(static_cast<unsigned long>(max_fiber_sum(A, B, t)));
    f4[t] = f * f * f * f;
  }
  for (std::size_t t = n; t-- > 0;) {
    if (f4[t] >= N && f4[t + 1] < N) return t;
  }
  return 0;
}

RegularizationCertificate regularize(const LatticeSet& A_in, const LatticeSet& B_in, const EdgeList& G_in,
                                     std::size_t t, const RegularizeParams& params, const RunConfig& config) {
  if (A_in.dimension() != B_in.dimension()) throw InvalidArgument("regularize: dimensions differ");
  if (t > A_in.dimension()) throw InvalidArgument("regularize: split out of range");
  check_edges(A_in, B_in, G_in);
  EdgeList G0 = G_in;
  normalize_edges(G0);
  if (G0.empty()) throw InvalidArgument("regularize: the graph has no edges");
  const std::size_t threads = config.resolved_threads();

  RegularizationCertificate cert;
  cert.split = t;
  cert.delta = ratio(G0.size(), static_cast<std::uint64_t>(A_in.size()) * B_in.size());
  {
    const std::uint64_t s = restricted_sumset(A_in, B_in, G0).size();
    cert.K_squared = ratio(s * s, static_cast<std::uint64_t>(A_in.size()) * B_in.size());
  }
  const Rational& delta = cert.delta;
  const double delta_d = delta.to_double();
  const double K = std::sqrt(cert.K_squared.to_double());
  const double L = std::max(1.0, std::log(K / delta_d));
  cert.achieved.log_factor = L;

  auto record = [&](std::string name, double threshold, std::size_t kept, std::size_t discarded) {
    if (kept == 0) throw StageEmptied(name, threshold);
    cert.stages.push_back({std::move(name), threshold, kept, discarded});
  };

  // Stage 0: degree pruning.
  Working w;
  {
    const PruneResult pr = degree_prune(A_in.size(), B_in.size(), G0);
    std::vector<char> ka(A_in.size(), 0), kb(B_in.size(), 0);
    for (auto i : pr.kept_A) ka[i] = 1;
    for (auto j : pr.kept_B) kb[j] = 1;
    Working full{A_in, B_in, pr.edges, {}};
    w = restrict(full, t, [&](std::uint32_t i) { return ka[i] != 0; }, [&](std::uint32_t j) { return kb[j] != 0; });
    record("degree-prune", delta_d / 4, w.edges.size(), G0.size() - w.edges.size());
  }

  // Work with n_A >= n_B; undone at the end.
  if (max_fiber(w.view.fibers_A) < max_fiber(w.view.fibers_B)) {
    cert.swapped = true;
    w = make_working(w.B, w.A, flip(w.edges), t);
  }

  // Stage (i): regularize B.
  {
    const FiberView& v = w.view;
    const std::uint64_t n_A = max_fiber(v.fibers_A);
    std::uint32_t a_star = 0;
    while (v.fibers_A[a_star].size() != n_A) ++a_star;
    std::vector<std::uint64_t> incidence(w.B.size(), 0);
    for (const auto& [i, j] : w.edges) {
      if (v.locate_A[i].first == a_star) ++incidence[j];
    }
    const Rational need = params.incidence_fraction * delta * Rational(static_cast<long>(n_A));
    std::vector<char> keep_b(w.B.size(), 0);
    std::size_t kept = 0;
    for (std::size_t j = 0; j < w.B.size(); ++j) {
      if (incidence[j] > 0 && Rational(static_cast<long>(incidence[j])) >= need) {
        keep_b[j] = 1;
        ++kept;
      }
    }
    if (kept == 0) throw StageEmptied("regularize-B incidence", need.to_double());
    const std::size_t dropped = w.B.size() - kept;
    w = restrict(w, t, [](std::uint32_t) { return true; }, [&](std::uint32_t j) { return keep_b[j] != 0; });
    record("regularize-B incidence", need.to_double(), w.edges.size(), dropped);

    const Rational cut = params.small_fiber_constant * delta.pow(5) / cert.K_squared *
                         Rational(static_cast<long>(n_A));
    std::vector<PigeonholeItem> items;
    std::vector<std::uint32_t> base_of_item;
    for (std::uint32_t b1 = 0; b1 < w.view.base_B.size(); ++b1) {
      const long size = static_cast<long>(w.view.fibers_B[b1].size());
      if (Rational(size) >= cut) {
        items.push_back({Rational(size), Rational(size)});
        base_of_item.push_back(b1);
      }
    }
    if (items.empty()) throw StageEmptied("regularize-B small fibers", cut.to_double());
    const PigeonholeClass cls = dyadic_pigeonhole(items, cut, Rational(static_cast<long>(n_A)));
    std::vector<char> keep_base(w.view.base_B.size(), 0);
    for (auto m : cls.members) keep_base[base_of_item[m]] = 1;
    const std::size_t before = w.edges.size();
    w = restrict(w, t, [](std::uint32_t) { return true; },
                 [&](std::uint32_t j) { return keep_base[w.view.locate_B[j].first] != 0; });
    record("regularize-B pigeonhole", cut.to_double(), w.edges.size(), before - w.edges.size());
  }

  // Stage (ii): regularize A against the selected B fibers.
  {
    const FiberView& v = w.view;
    std::vector<std::uint64_t> mass(v.base_A.size(), 0);
    for (const auto& [i, j] : w.edges) ++mass[v.locate_A[i].first];
    std::uint64_t m_B = std::numeric_limits<std::uint64_t>::max();
    for (const auto& f : v.fibers_B) m_B = std::min<std::uint64_t>(m_B, f.size());
    const Rational cut = params.a_fiber_constant * delta.pow(3) / cert.K_squared * Rational(static_cast<long>(m_B));
    std::vector<PigeonholeItem> items;
    std::vector<std::uint32_t> base_of_item;
    for (std::uint32_t a1 = 0; a1 < v.base_A.size(); ++a1) {
      const long size = static_cast<long>(v.fibers_A[a1].size());
      if (mass[a1] > 0 && Rational(size) >= cut) {
        items.push_back({Rational(size), Rational(static_cast<long>(mass[a1]))});
        base_of_item.push_back(a1);
      }
    }
    if (items.empty()) throw StageEmptied("regularize-A", cut.to_double());
    const Rational hi(static_cast<long>(max_fiber(v.fibers_A)));
    const PigeonholeClass cls = dyadic_pigeonhole(items, cut, hi);
    std::vector<char> keep_base(v.base_A.size(), 0);
    for (auto m : cls.members) keep_base[base_of_item[m]] = 1;
    const std::size_t before = w.edges.size();
    w = restrict(w, t, [&](std::uint32_t i) { return keep_base[w.view.locate_A[i].first] != 0; },
                 [](std::uint32_t) { return true; });
    record("regularize-A", cut.to_double(), w.edges.size(), before - w.edges.size());
  }

  auto min_fiber = [](const std::vector<LatticeSet>& fibers) {
    std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
    for (const auto& f : fibers) m = std::min<std::uint64_t>(m, f.size());
    return m;
  };

  // Stage (iii): graph fiber densities.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  {
    const FiberView& v = w.view;
    const std::uint64_t mA = min_fiber(v.fibers_A), mB = min_fiber(v.fibers_B);
    const double threshold = params.graph_density_constant * delta_d / (16.0 * L) * static_cast<double>(mA * mB);
    std::vector<PigeonholeItem> items;
    for (const auto& [pair, g2] : v.fiber_graphs) {
      if (static_cast<double>(g2.size()) >= threshold) {
        pairs.push_back(pair);
        items.push_back({ratio(g2.size(), mA * mB), Rational(static_cast<long>(g2.size()))});
      }
    }
    if (items.empty()) throw StageEmptied("graph-fibers", threshold);
    Rational lo = items.front().value;
    for (const auto& it : items) lo = std::min(lo, it.value);
    const PigeonholeClass cls = dyadic_pigeonhole(items, lo, Rational(4));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> chosen;
    for (auto m : cls.members) chosen.push_back(pairs[m]);
    record("graph-fibers", threshold, chosen.size(), v.base_graph.size() - chosen.size());
    pairs = std::move(chosen);
  }

  // Stage (iv): fiber doubling.
  {
    const FiberView& v = w.view;
    std::vector<Rational> k_plus(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t idx) {
      k_plus[idx] = fiber_doubling_squared(v, pairs[idx].first, pairs[idx].second, v.fiber_graphs.at(pairs[idx]));
    });
    const double limit = params.doubling_constant * L * L * L * std::pow(delta_d, -10.0) * K;
    std::vector<PigeonholeItem> items;
    std::vector<std::size_t> index_of_item;
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
      if (std::sqrt(k_plus[idx].to_double()) <= limit) {
        items.push_back({k_plus[idx], Rational(1)});
        index_of_item.push_back(idx);
      }
    }
    if (items.empty()) throw StageEmptied("doubling", limit);
    Rational lo = items.front().value, hi = items.front().value;
    for (const auto& it : items) {
      lo = std::min(lo, it.value);
      hi = std::max(hi, it.value);
    }
    const PigeonholeClass cls = dyadic_pigeonhole(items, lo, hi);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> chosen;
    cert.K2_squared = items[cls.members.front()].value;
    for (auto m : cls.members) {
      chosen.push_back(pairs[index_of_item[m]]);
      cert.K2_squared = std::min(cert.K2_squared, items[m].value);
    }
    record("doubling", limit, chosen.size(), pairs.size() - chosen.size());
    std::sort(chosen.begin(), chosen.end());
    pairs = std::move(chosen);
  }

  // Keep the edges on the selected base pairs and drop isolated base points.
  {
    const FiberView& v = w.view;
    std::vector<char> base_a(v.base_A.size(), 0), base_b(v.base_B.size(), 0);
    for (const auto& [a1, b1] : pairs) {
      base_a[a1] = 1;
      base_b[b1] = 1;
    }
    EdgeList kept;
    for (const auto& e : w.edges) {
      const std::pair<std::uint32_t, std::uint32_t> p{v.locate_A[e.first].first, v.locate_B[e.second].first};
      if (std::binary_search(pairs.begin(), pairs.end(), p)) kept.push_back(e);
    }
    Working trimmed{w.A, w.B, std::move(kept), {}};
    w = restrict(trimmed, t, [&](std::uint32_t i) { return base_a[v.locate_A[i].first] != 0; },
                 [&](std::uint32_t j) { return base_b[v.locate_B[j].first] != 0; });
  }

  if (cert.swapped) w = make_working(w.B, w.A, flip(w.edges), t);

  const FiberView& v = w.view;
  cert.M_A = v.base_A.size();
  cert.M_B = v.base_B.size();
  cert.m_A = min_fiber(v.fibers_A);
  cert.m_B = min_fiber(v.fibers_B);
  cert.delta_1 = ratio(v.base_graph.size(), cert.M_A * cert.M_B);
  {
    std::uint64_t min_g2 = std::numeric_limits<std::uint64_t>::max();
    for (const auto& [pair, g2] : v.fiber_graphs) min_g2 = std::min<std::uint64_t>(min_g2, g2.size());
    cert.delta_2 = ratio(min_g2, cert.m_A * cert.m_B);
  }
  {
    const std::uint64_t s = restricted_sumset(v.base_A, v.base_B, v.base_graph).size();
    cert.K1_squared = ratio(s * s, cert.M_A * cert.M_B);
  }
  cert.K1 = std::sqrt(cert.K1_squared.to_double());
  cert.K2 = std::sqrt(cert.K2_squared.to_double());
  cert.fiber_uniformity = std::max(ratio(max_fiber(v.fibers_A), cert.m_A), ratio(max_fiber(v.fibers_B), cert.m_B));

  const double a_size = static_cast<double>(A_in.size()), b_size = static_cast<double>(B_in.size());
  cert.achieved.set_size_A =
      static_cast<double>(cert.M_A * cert.m_A) / (delta_d * delta_d / L * a_size);
  cert.achieved.set_size_B =
      static_cast<double>(cert.M_B * cert.m_B) / (delta_d * delta_d / L * b_size);
  cert.achieved.delta_product = cert.delta_1.to_double() * cert.delta_2.to_double() / (delta_d / (L * L * L));
  cert.achieved.doubling = cert.K1 * cert.K2 / (std::max(1.0, std::log(K)) * K / (delta_d * delta_d));

  cert.A = std::move(w.A);
  cert.B = std::move(w.B);
  cert.edges = std::move(w.edges);
  return cert;
}

CertificateCheck check_certificate(const RegularizationCertificate& cert, const LatticeSet& A, const LatticeSet& B,
                                   const EdgeList& G) {
  CertificateCheck c;
  const FiberView v = fiber_view(cert.A, cert.B, cert.edges, cert.split);
  const Integer mA(static_cast<unsigned long>(cert.m_A)), mB(static_cast<unsigned long>(cert.m_B));
  auto uniform = [](const std::vector<LatticeSet>& fibers, std::uint64_t m) {
    return m > 0 && std::all_of(fibers.begin(), fibers.end(), [&](const LatticeSet& f) {
             return f.size() >= m && f.size() <= 2 * m;
           });
  };
  c.uniform_fibers = uniform(v.fibers_A, cert.m_A) && uniform(v.fibers_B, cert.m_B) &&
                     cert.fiber_uniformity <= Rational(2);

  const bool counts = v.base_A.size() == cert.M_A && v.base_B.size() == cert.M_B;
  const Rational MM = ratio(cert.M_A * cert.M_B, 1);
  c.base_graph = counts && !v.base_graph.empty() && Rational(static_cast<long>(v.base_graph.size())) >= cert.delta_1 * MM;

  c.fiber_graphs = true;
  c.fiber_doubling = true;
  const Rational need = cert.delta_2 * ratio(cert.m_A * cert.m_B, 1);
  for (const auto& [pair, g2] : v.fiber_graphs) {
    if (Rational(static_cast<long>(g2.size())) < need) c.fiber_graphs = false;
    const Rational kp = fiber_doubling_squared(v, pair.first, pair.second, g2);
    if (kp < cert.K2_squared || kp > cert.K2_squared * Rational(4)) c.fiber_doubling = false;
  }

  const std::uint64_t s = restricted_sumset(v.base_A, v.base_B, v.base_graph).size();
  c.k1_identity = counts && ratio(s * s, 1) == cert.K1_squared * MM;

  EdgeList input = G;
  normalize_edges(input);
  c.subgraph = true;
  for (const auto& [i, j] : cert.edges) {
    const std::size_t ia = A.index_of(cert.A[i]);
    const std::size_t ib = B.index_of(cert.B[j]);
    if (ia == A.size() || ib == B.size() ||
        !std::binary_search(input.begin(), input.end(),
                            std::pair{static_cast<std::uint32_t>(ia), static_cast<std::uint32_t>(ib)})) {
      c.subgraph = false;
      break;
    }
  }
  return c;
}

}  // namespace sumprod
