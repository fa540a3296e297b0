#include "sumprodlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sumprod/applications.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/error.hpp"
#include "sumprod/fibering.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/io.hpp"
#include "sumprod/random.hpp"
#include "sumprod/separation.hpp"
#include "sumprod/setops.hpp"
#include "sumprodlab/report.hpp"
#include "sumprodlab/suites.hpp"

namespace sumprodlab {

using namespace sumprod;

namespace {

struct Options {
  // Shared.
  std::string set, set_b, set_b2, lines, graph, out;
  std::string format = "json";
  std::string u = "1", c1, c2;
  int k = 2;
  std::optional<long> t;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget, set_budget;
  std::size_t threads = 0;
  bool no_timings = false;
  // Subcommand specific.
  std::string kind = "mixed";
  std::string method = "ascent";
  int iters = 200;
  double step = 0.01;
  int probes = 20;
  std::string decomposition;
  std::string suite = "all";
  int n_max = 20;
  // gen.
  std::string family;
  std::string r = "2", p = "2";
  std::vector<std::string> primes;
  std::vector<long> dims, exponents;
  long n = 8;
  std::uint64_t count = 10, num_bound = 100, den_bound = 1;
  std::size_t dim = 2, a_size = 10, b_size = 10;
  std::int64_t side = 4, coef_bound = 3;
  double density = 0.5;
};

Rational parse_rational(const std::string& text, const std::string& flag) {
  if (text.empty()) throw InvalidArgument(flag + " is required");
  try {
    return Rational::parse(text);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(flag + ": " + e.what());
  }
}

const std::string& require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw InvalidArgument(flag + " is required");
  return value;
}

RunConfig make_config(const Options& o) {
  RunConfig c = config_from_environment();
  if (o.budget) c.tuple_budget = *o.budget;
  if (o.set_budget) c.set_budget = *o.set_budget;
  c.threads = o.threads;
  return c;
}

template <typename T>
Json list_json(const std::vector<T>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(x);
  return j;
}

// ---- gen --------------------------------------------------------------------

Report cmd_gen(const Options& o) {
  Report rep;
  rep.command = "gen";
  std::ostringstream out;
  const std::string& f = o.family;
  if (f == "gp") {
    write_set(out, geometric_progression(parse_rational(o.r, "--r"), o.n));
  } else if (f == "multidim-gp") {
    std::vector<Integer> ps;
    for (const auto& s : o.primes) ps.emplace_back(s);
    write_set(out, multidim_gp(ps, o.dims));
  } else if (f == "prime-powers") {
    write_set(out, prime_power_set(Integer(o.p), o.exponents));
  } else if (f == "random") {
    write_set(out, random_rational_set(o.count, o.num_bound, o.den_bound, o.seed));
  } else if (f == "box") {
    write_lattice(out, lattice_box(o.dim, o.side));
  } else if (f == "random-lattice") {
    write_lattice(out, random_lattice_set(o.dim, o.count, o.side, o.seed));
  } else if (f == "random-graph") {
    write_graph(out, GraphFile{o.dim, o.a_size, o.b_size, random_lattice_graph(o.a_size, o.b_size, o.density, o.seed)});
  } else if (f == "random-lines") {
    if (o.coef_bound < 1) throw InvalidArgument("--coef-bound must be positive");
    Rng rng(o.seed);
    std::vector<Line> lines;
    while (lines.size() < o.count) {
      Line l{Rational(rng.between(-o.coef_bound, o.coef_bound)), Rational(rng.between(-o.coef_bound, o.coef_bound)),
             Rational::canonicalize(rng.between(-o.coef_bound, o.coef_bound), rng.between(1, o.coef_bound))};
      if (!l.a.is_zero() || !l.b.is_zero()) lines.push_back(l);
    }
    write_lines(out, lines);
  } else {
    throw InvalidArgument("unknown family '" + f + "'");
  }
  rep.raw = out.str();
  return rep;
}

// ---- growth -----------------------------------------------------------------

Report cmd_growth(const Options& o, const RunConfig& cfg) {
  const RationalSet A = read_set_file(require(o.set, "--set"));
  const Rational u = parse_rational(o.u, "--u");
  if (u.is_zero()) throw InvalidArgument("--u must be nonzero");
  if (o.k < 1) throw InvalidArgument("--k must be at least 1");
  const auto g = growth_experiment(A, u, o.k, cfg);
  Report rep;
  rep.command = "growth";
  rep.inputs = {{"set", o.set}, {"size", A.size()}, {"u", u.to_string()}, {"k", o.k}};
  Json rows = Json::array();
  rep.table.columns = {"j", "product_size", "shifted_size", "exponent"};
  for (const auto& row : g.rows) {
    rows.push_back({{"j", row.j}, {"product_size", row.product_size}, {"shifted_size", row.shifted_size},
                    {"exponent", row.exponent}});
    rep.table.rows.push_back({std::to_string(row.j), cell(row.product_size), cell(row.shifted_size), cell(row.exponent)});
  }
  rep.result = {{"rows", rows}, {"partial", g.partial}};
  if (g.partial) {
    rep.result["note"] = g.note;
    rep.exit_code = kBudget;
  }
  return rep;
}

// ---- energy -----------------------------------------------------------------

Report cmd_energy(const Options& o, const RunConfig& cfg) {
  const RationalSet A = read_set_file(require(o.set, "--set"));
  const Rational u = parse_rational(o.u, "--u");
  if (o.k < 1) throw InvalidArgument("--k must be at least 1");
  EnergyValue e;
  if (o.kind == "mixed") {
    e = mixed_energy(A, u, o.k, cfg);
  } else if (o.kind == "additive") {
    e = additive_energy_kfold(A, o.k, cfg);
  } else if (o.kind == "multiplicative") {
    e = multiplicative_energy(A, o.k, cfg);
  } else {
    e = multiplicative_energy_shifted(A, u, o.k, cfg);
  }
  Report rep;
  rep.command = "energy";
  rep.inputs = {{"set", o.set}, {"size", A.size()}, {"u", u.to_string()}, {"k", o.k}, {"kind", o.kind}};
  rep.result = {{"energy", integer_json(e.exact)}};
  if (o.kind == "mixed" && o.k == 2 && !u.is_zero()) {
    const Integer expected(2 * A.size() * A.size() - A.size());
    rep.result["closed_form_k2"] = integer_json(expected);
    if (e.exact != expected) rep.exit_code = kViolation;
  }
  rep.table.columns = {"kind", "k", "u", "size", "energy"};
  rep.table.rows.push_back({o.kind, std::to_string(o.k), u.to_string(), cell(std::uint64_t{A.size()}), e.exact.get_str()});
  return rep;
}

// ---- lambda -----------------------------------------------------------------

Report cmd_lambda(const Options& o, const RunConfig& cfg) {
  const RationalSet A = read_set_file(require(o.set, "--set"));
  const Rational u = parse_rational(o.u, "--u");
  if (o.k < 1) throw InvalidArgument("--k must be at least 1");
  LambdaEstimate est;
  if (o.method == "uniform") {
    est = lambda_uniform(A, u, o.k, cfg);
  } else if (o.method == "grid") {
    est = lambda_grid_oracle(A, u, o.k, o.step, cfg);
  } else {
    est = lambda_ascent(A, u, o.k, o.iters, o.seed, cfg);
  }
  Report rep;
  rep.command = "lambda";
  rep.inputs = {{"set", o.set}, {"size", A.size()}, {"u", u.to_string()}, {"k", o.k}, {"method", o.method}};
  if (o.method == "ascent") {
    rep.inputs["iters"] = o.iters;
    rep.inputs["seed"] = o.seed;
  }
  if (o.method == "grid") rep.inputs["step"] = o.step;
  rep.result = {{"value", est.value}, {"witness", list_json(est.witness)}, {"evaluations", est.evaluations}};
  if (!est.trace.empty()) rep.result["iterations"] = est.trace.size();
  if (o.k == 2 && !u.is_zero()) rep.result["closed_form_k2"] = std::sqrt(2.0 - 1.0 / static_cast<double>(A.size()));
  rep.table.columns = {"method", "k", "u", "value", "element", "weight"};
  for (std::size_t i = 0; i < A.size(); ++i) {
    rep.table.rows.push_back(
        {o.method, std::to_string(o.k), u.to_string(), cell(est.value), A[i].to_string(), cell(est.witness[i])});
  }
  return rep;
}

// ---- separate ---------------------------------------------------------------

Decomposition read_decomposition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(path + ": cannot open");
  Json j;
  try {
    j = Json::parse(in);
    std::vector<Rational> xs;
    for (const auto& s : j.at("X")) xs.push_back(Rational::parse(s.get<std::string>()));
    std::map<Rational, RationalSet> fibers;
    for (const auto& [key, ys] : j.at("fibers").items()) {
      std::vector<Rational> v;
      for (const auto& s : ys) v.push_back(Rational::parse(s.get<std::string>()));
      fibers.emplace(Rational::parse(key), RationalSet(std::move(v)));
    }
    return Decomposition(RationalSet(std::move(xs)), std::move(fibers));
  } catch (const Json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

Report cmd_separate(const Options& o, const RunConfig& cfg) {
  const Rational u = parse_rational(o.u, "--u");
  if (o.k < 1) throw InvalidArgument("--k must be at least 1");
  Report rep;
  rep.command = "separate";
  if (!o.decomposition.empty()) {
    const Decomposition D = read_decomposition(o.decomposition);
    const auto s = separation_ratio(D, u, o.k, WeightedSet::uniform(D.Z()), cfg);
    const double bound = separating_bound(D.X(), o.k);
    const bool holds = s.ratio <= bound * (1 + kRootTolerance);
    rep.inputs = {{"decomposition", o.decomposition}, {"u", u.to_string()}, {"k", o.k}};
    rep.result = {{"lhs", s.lhs}, {"rhs_sum", s.rhs_sum}, {"ratio", s.ratio}, {"pieces", s.pieces},
                  {"bound", bound}, {"holds", holds}};
    rep.table.columns = {"k", "u", "lhs", "rhs_sum", "ratio", "bound", "holds"};
    rep.table.rows.push_back({std::to_string(o.k), u.to_string(), cell(s.lhs), cell(s.rhs_sum), cell(s.ratio),
                              cell(bound), cell(holds)});
    if (!holds) rep.exit_code = kViolation;
    return rep;
  }
  const RationalSet X = read_set_file(require(o.set, "--set or --decomposition"));
  const auto probe = probe_separating_constant(X, u, o.k, o.probes, o.seed, cfg);
  const double bound = separating_bound(X, o.k);
  const bool holds = probe.max_ratio <= bound * (1 + kRootTolerance);
  rep.inputs = {{"set", o.set}, {"size", X.size()}, {"u", u.to_string()}, {"k", o.k}, {"probes", o.probes},
                {"seed", o.seed}};
  rep.result = {{"max_ratio", probe.max_ratio},
                {"bound", bound},
                {"prime_power_set", is_prime_power_set(X)},
                {"holds", holds},
                {"fallback_probes", probe.fallback_probes},
                {"ratios", list_json(probe.ratios)}};
  rep.table.columns = {"probe", "ratio", "bound"};
  for (std::size_t i = 0; i < probe.ratios.size(); ++i) {
    rep.table.rows.push_back({std::to_string(i), cell(probe.ratios[i]), cell(bound)});
  }
  if (!holds) rep.exit_code = kViolation;
  return rep;
}

// ---- fiber ------------------------------------------------------------------

Json rational_pair(const Rational& sq, double root) { return {{"squared", sq.to_string()}, {"value", root}}; }

Report cmd_fiber(const Options& o, const RunConfig& cfg) {
  const LatticeSet A = read_lattice_file(require(o.set, "--set"));
  const LatticeSet B = o.set_b.empty() ? A : read_lattice_file(o.set_b);
  if (A.dimension() != B.dimension()) throw InvalidArgument("--set and --set-b have different dimensions");
  EdgeList G;
  if (o.graph.empty()) {
    G = complete_edges(A.size(), B.size());
  } else {
    const GraphFile g = read_graph_file(o.graph);
    if (g.dimension != A.dimension() || g.a_size != A.size() || g.b_size != B.size()) {
      throw InvalidArgument(o.graph + ": header does not match the lattice sets");
    }
    G = g.edges;
  }
  if (G.empty()) throw InvalidArgument("the graph has no edges");
  normalize_edges(G);
  if (o.t && (*o.t < 0 || static_cast<std::size_t>(*o.t) > A.dimension())) {
    throw InvalidArgument("--t must lie in [0, n]");
  }
  const std::size_t split = o.t ? static_cast<std::size_t>(*o.t) : choose_split_coordinate(A, B);

  Report rep;
  rep.command = "fiber";
  rep.inputs = {{"set", o.set}, {"set_b", o.set_b.empty() ? o.set : o.set_b}, {"graph", o.graph.empty() ? "complete" : o.graph},
                {"dimension", A.dimension()}, {"size_A", A.size()}, {"size_B", B.size()}, {"edges", G.size()},
                {"t", split}, {"t_chosen", !o.t.has_value()}};

  const auto sum = verify_fiber_graph_sum(A, B, G, split);
  rep.result["fiber_sum"] = {{"lhs", sum.lhs},         {"base_sumset", sum.base_sumset},
                             {"min_all_pairs", sum.min_all_pairs}, {"min_on_base", sum.min_on_base},
                             {"rhs", sum.rhs},         {"rhs_strong", sum.rhs_strong},
                             {"holds", sum.holds},     {"holds_strong", sum.holds_strong}};
  bool ok = sum.holds && sum.holds_strong;

  const auto prune = degree_prune(A.size(), B.size(), G);
  const auto post = check_prune(A.size(), B.size(), G, prune);
  rep.result["prune"] = {{"delta", prune.delta.to_string()}, {"kept_A", prune.kept_A.size()},
                         {"kept_B", prune.kept_B.size()}, {"kept_edges", prune.edges.size()},
                         {"postconditions", post.all()}};
  ok = ok && post.all();

  rep.table.columns = {"t", "size_A", "size_B", "edges", "lhs", "rhs_strong", "fiber_sum_holds", "M_A", "M_B",
                       "m_A", "m_B", "delta_1", "delta_2", "K1", "K2", "fiber_uniformity", "log_factor",
                       "set_size_A", "set_size_B", "delta_product", "doubling", "certificate_holds"};
  std::vector<std::string> row = {std::to_string(split), cell(std::uint64_t{A.size()}), cell(std::uint64_t{B.size()}),
                                  cell(std::uint64_t{G.size()}), cell(sum.lhs), cell(sum.rhs_strong),
                                  cell(sum.holds && sum.holds_strong)};
  try {
    const auto cert = regularize(A, B, G, split, {}, cfg);
    const auto check = check_certificate(cert, A, B, G);
    Json stages = Json::array();
    for (const auto& s : cert.stages) {
      stages.push_back({{"name", s.name}, {"threshold", s.threshold}, {"kept", s.kept}, {"discarded", s.discarded}});
    }
    rep.result["certificate"] = {
        {"M_A", cert.M_A},
        {"M_B", cert.M_B},
        {"m_A", cert.m_A},
        {"m_B", cert.m_B},
        {"size_A", cert.A.size()},
        {"size_B", cert.B.size()},
        {"edges", cert.edges.size()},
        {"delta", cert.delta.to_string()},
        {"K_squared", cert.K_squared.to_string()},
        {"delta_1", cert.delta_1.to_string()},
        {"delta_2", cert.delta_2.to_string()},
        {"K1", rational_pair(cert.K1_squared, cert.K1)},
        {"K2", rational_pair(cert.K2_squared, cert.K2)},
        {"fiber_uniformity", cert.fiber_uniformity.to_string()},
        {"swapped", cert.swapped},
        {"stages", stages},
        {"achieved", {{"log_factor", cert.achieved.log_factor},
                      {"set_size_A", cert.achieved.set_size_A},
                      {"set_size_B", cert.achieved.set_size_B},
                      {"delta_product", cert.achieved.delta_product},
                      {"doubling", cert.achieved.doubling}}},
        {"checks", {{"uniform_fibers", check.uniform_fibers},
                    {"base_graph", check.base_graph},
                    {"fiber_graphs", check.fiber_graphs},
                    {"k1_identity", check.k1_identity},
                    {"fiber_doubling", check.fiber_doubling},
                    {"subgraph", check.subgraph}}},
        {"holds", check.all()}};
    ok = ok && check.all();
    row.insert(row.end(), {cell(cert.M_A), cell(cert.M_B), cell(cert.m_A), cell(cert.m_B), cell(cert.delta_1),
                           cell(cert.delta_2), cell(cert.K1), cell(cert.K2), cell(cert.fiber_uniformity),
                           cell(cert.achieved.log_factor), cell(cert.achieved.set_size_A),
                           cell(cert.achieved.set_size_B), cell(cert.achieved.delta_product),
                           cell(cert.achieved.doubling), cell(check.all())});
  } catch (const StageEmptied& e) {
    rep.result["certificate"] = {{"emptied_stage", e.stage()}, {"message", e.what()}, {"holds", false}};
    ok = false;
    row.resize(rep.table.columns.size());
    row.back() = cell(false);
  }
  rep.table.rows.push_back(row);
  if (!ok) rep.exit_code = kViolation;
  return rep;
}

// ---- counters ---------------------------------------------------------------

Report cmd_solve_count(const Options& o, const RunConfig& cfg) {
  const RationalSet A = read_set_file(require(o.set, "--set"));
  const Rational c1 = parse_rational(o.c1, "--c1"), c2 = parse_rational(o.c2, "--c2");
  const auto r = count_line_solutions(A, c1, c2, cfg);
  Report rep;
  rep.command = "solve-count";
  rep.inputs = {{"set", o.set}, {"size", A.size()}, {"c1", c1.to_string()}, {"c2", c2.to_string()}};
  rep.result = {{"count", r.count}, {"zero_coordinate", r.zero_coordinate}};
  rep.table.columns = {"c1", "c2", "size", "count", "zero_coordinate"};
  rep.table.rows.push_back({c1.to_string(), c2.to_string(), cell(std::uint64_t{A.size()}), cell(r.count),
                            cell(r.zero_coordinate)});
  return rep;
}

Report cmd_incidence(const Options& o, const RunConfig& cfg) {
  const RationalSet A = read_set_file(require(o.set, "--set"));
  const auto lines = read_lines_file(require(o.lines, "--lines"));
  const auto r = count_incidences(A, lines, cfg);
  Report rep;
  rep.command = "incidence";
  rep.inputs = {{"set", o.set}, {"size", A.size()}, {"lines", o.lines}, {"line_count", lines.size()}};
  rep.result = {{"total", r.total},
                {"points", r.points},
                {"by_class",
                 {{to_string(LineClass::kAxisParallel), r.axis_parallel},
                  {to_string(LineClass::kThroughOrigin), r.through_origin},
                  {to_string(LineClass::kIrrationalSlope), r.irrational_slope},
                  {to_string(LineClass::kGeneric), r.generic}}},
                {"per_line", list_json(r.per_line)}};
  rep.table.columns = {"line", "a", "b", "c", "class", "incidences"};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    rep.table.rows.push_back({std::to_string(i), lines[i].a.to_string(), lines[i].b.to_string(),
                              lines[i].c.to_string(), to_string(classify(lines[i])), cell(r.per_line[i])});
  }
  return rep;
}

Report cmd_basis(const Options& o, const RunConfig& cfg) {
  const RationalSet A = read_set_file(require(o.set, "--set"));
  const RationalSet B = read_set_file(require(o.set_b, "--set-b"));
  const RationalSet Bp = o.set_b2.empty() ? B : read_set_file(o.set_b2);
  const auto r = additive_basis_count(A, B, Bp, cfg);
  Report rep;
  rep.command = "basis";
  rep.inputs = {{"set", o.set}, {"set_b", o.set_b}, {"set_b2", o.set_b2.empty() ? o.set_b : o.set_b2},
                {"size_A", A.size()}, {"size_B", B.size()}, {"size_B2", Bp.size()}};
  rep.result = {{"count", r.count}, {"max_intersection", r.max_intersection}, {"slices", list_json(r.slices)}};
  rep.table.columns = {"b", "slice"};
  for (std::size_t i = 0; i < B.size(); ++i) rep.table.rows.push_back({B[i].to_string(), cell(r.slices[i])});
  return rep;
}

// ---- verify -----------------------------------------------------------------

Report cmd_verify(const Options& o, const RunConfig& cfg, bool timings) {
  std::vector<std::string> names;
  if (o.suite == "all") {
    names = suite_names();
  } else {
    names.push_back(o.suite);
  }
  SuiteOptions so;
  so.seed = o.seed;
  so.n_max = o.n_max;
  so.config = cfg;
  if (so.n_max < 1) throw InvalidArgument("--n-max must be at least 1");
  Report rep;
  rep.command = "verify";
  rep.inputs = {{"suite", o.suite}, {"seed", o.seed}, {"n_max", o.n_max}};
  Json suites = Json::array();
  bool all_passed = true;
  std::uint64_t checks = 0, failures = 0;
  rep.table.columns = {"suite", "checks", "failures", "passed"};
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, so);
    Json j = {{"suite", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"failures", r.failures}};
    if (!r.messages.empty()) j["messages"] = list_json(r.messages);
    j["details"] = r.details;
    if (timings) j["elapsed_ms"] = r.elapsed_ms;
    suites.push_back(std::move(j));
    rep.table.rows.push_back({r.name, cell(r.checks), cell(r.failures), cell(r.passed())});
    all_passed = all_passed && r.passed();
    checks += r.checks;
    failures += r.failures;
  }
  rep.result = {{"passed", all_passed}, {"checks", checks}, {"failures", failures}, {"suites", suites}};
  if (!all_passed) rep.exit_code = kViolation;
  return rep;
}

// ---- driver -----------------------------------------------------------------

void add_common(CLI::App* sc, Options& o) {
  sc->add_option("--seed", o.seed, "Seed for randomized steps");
  sc->add_option("--budget", o.budget, "Tuple budget (overrides SUMPRODLAB_BUDGET)");
  sc->add_option("--set-budget", o.set_budget, "Maximum intermediate set size");
  sc->add_option("--out", o.out, "Write the report to FILE instead of stdout");
  sc->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sc->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  sc->add_flag("--no-timings", o.no_timings, "Omit wall-clock timings from the report");
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidArgument(o.out + ": cannot open for writing");
  f << text;
  if (!f) throw Error(o.out + ": write failed");
}

}  // namespace

int run_cli(int argc, char** argv) {
  Options o;
  CLI::App app{"sumprodlab: exact sum-product experiments and verifiers", "sumprodlab"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Emit a set, lattice, graph or line file");
  gen->add_option("family", o.family,
                  "gp | multidim-gp | prime-powers | random | box | random-lattice | random-graph | random-lines")
      ->required();
  gen->add_option("--r", o.r, "Ratio of the progression");
  gen->add_option("--n", o.n, "Length of the progression");
  gen->add_option("--primes", o.primes, "Primes of a multidimensional progression")->delimiter(',');
  gen->add_option("--dims", o.dims, "Side lengths of a multidimensional progression")->delimiter(',');
  gen->add_option("--p", o.p, "Prime of a prime-power set");
  gen->add_option("--exponents", o.exponents, "Exponents of a prime-power set")->delimiter(',');
  gen->add_option("--count", o.count, "Number of elements, points or lines");
  gen->add_option("--num-bound", o.num_bound, "Numerator bound of random rationals");
  gen->add_option("--den-bound", o.den_bound, "Denominator bound of random rationals");
  gen->add_option("--dim", o.dim, "Lattice dimension");
  gen->add_option("--side", o.side, "Side length of the lattice box");
  gen->add_option("--a-size", o.a_size, "Left vertex count of a random graph");
  gen->add_option("--b-size", o.b_size, "Right vertex count of a random graph");
  gen->add_option("--density", o.density, "Edge probability of a random graph");
  gen->add_option("--coef-bound", o.coef_bound, "Coefficient bound of random lines");
  add_common(gen, o);

  auto* growth = app.add_subcommand("growth", "Sizes of A^(j) and (A+u)^(j) for j = 1..k");
  growth->add_option("--set", o.set, "Set file");
  growth->add_option("--u", o.u, "Shift");
  growth->add_option("--k", o.k, "Largest fold");
  add_common(growth, o);

  auto* energy = app.add_subcommand("energy", "Mixed, additive or multiplicative energies");
  energy->add_option("--set", o.set, "Set file");
  energy->add_option("--u", o.u, "Shift");
  energy->add_option("--k", o.k, "Fold");
  energy->add_option("--kind", o.kind, "Energy kind")
      ->check(CLI::IsMember({"mixed", "additive", "multiplicative", "shifted-multiplicative"}));
  add_common(energy, o);

  auto* lambda = app.add_subcommand("lambda", "Lower bounds on the Lambda constant");
  lambda->add_option("--set", o.set, "Set file");
  lambda->add_option("--u", o.u, "Shift");
  lambda->add_option("--k", o.k, "Fold");
  lambda->add_option("--method", o.method, "Estimator")->check(CLI::IsMember({"uniform", "ascent", "grid"}));
  lambda->add_option("--iters", o.iters, "Ascent iterations");
  lambda->add_option("--step", o.step, "Grid angular step");
  add_common(lambda, o);

  auto* separate = app.add_subcommand("separate", "Separation ratios of a set or a decomposition");
  separate->add_option("--set", o.set, "Set file X (random probes)");
  separate->add_option("--decomposition", o.decomposition, "JSON decomposition {X, fibers}");
  separate->add_option("--u", o.u, "Shift");
  separate->add_option("--k", o.k, "Fold");
  separate->add_option("--probes", o.probes, "Number of random probes");
  add_common(separate, o);

  auto* fiber = app.add_subcommand("fiber", "Fiber sumset bound, degree pruning and regularization");
  fiber->add_option("--set", o.set, "Lattice CSV for A");
  fiber->add_option("--set-b", o.set_b, "Lattice CSV for B (default: A)");
  fiber->add_option("--graph", o.graph, "Graph file (default: complete)");
  fiber->add_option("--t", o.t, "Split coordinate (default: chosen automatically)");
  add_common(fiber, o);

  auto* solve = app.add_subcommand("solve-count", "Solutions of c1 x + c2 y = 1 in A x A");
  solve->add_option("--set", o.set, "Set file");
  solve->add_option("--c1", o.c1, "First coefficient");
  solve->add_option("--c2", o.c2, "Second coefficient");
  add_common(solve, o);

  auto* incidence = app.add_subcommand("incidence", "Incidences between A x A and lines");
  incidence->add_option("--set", o.set, "Set file");
  incidence->add_option("--lines", o.lines, "Line file");
  add_common(incidence, o);

  auto* basis = app.add_subcommand("basis", "Pairs (b, b') with b + b' in A");
  basis->add_option("--set", o.set, "Set file A");
  basis->add_option("--set-b", o.set_b, "Set file B");
  basis->add_option("--set-b2", o.set_b2, "Set file B' (default: B)");
  add_common(basis, o);

  auto* verify = app.add_subcommand("verify", "Run the property check suites");
  std::string suite_help = "all";
  for (const auto& s : suite_names()) suite_help += " | " + s;
  verify->add_option("--suite", o.suite, suite_help);
  verify->add_option("--n-max", o.n_max, "Largest |A| in the k = 2 closed-form suite");
  add_common(verify, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const auto parsed = app.get_subcommands();
    std::cerr << (parsed.empty() ? app.help() : parsed.front()->help());
    return kUsage;
  }

  if (o.suite != "all") {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
      std::cerr << "error: unknown suite '" << o.suite << "'\n\n" << verify->help();
      return kUsage;
    }
  }

  const bool timings = !o.no_timings;
  const Format format = o.format == "csv" ? Format::kCsv : Format::kJson;
  try {
    const RunConfig cfg = make_config(o);
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    if (gen->parsed()) {
      rep = cmd_gen(o);
    } else if (growth->parsed()) {
      rep = cmd_growth(o, cfg);
    } else if (energy->parsed()) {
      rep = cmd_energy(o, cfg);
    } else if (lambda->parsed()) {
      rep = cmd_lambda(o, cfg);
    } else if (separate->parsed()) {
      rep = cmd_separate(o, cfg);
    } else if (fiber->parsed()) {
      rep = cmd_fiber(o, cfg);
    } else if (solve->parsed()) {
      rep = cmd_solve_count(o, cfg);
    } else if (incidence->parsed()) {
      rep = cmd_incidence(o, cfg);
    } else if (basis->parsed()) {
      rep = cmd_basis(o, cfg);
    } else {
      rep = cmd_verify(o, cfg, timings);
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    write_output(o, render(rep, format, timings));
    return rep.exit_code;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace sumprodlab
