#include "s2al/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

#include "s2al/complexity.hpp"
#include "s2al/errors.hpp"
#include "s2al/oracle.hpp"
#include "s2al/rng.hpp"

namespace s2al {

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::s2: return "s2";
    case Algorithm::random: return "random";
    case Algorithm::bisect: return "bisect";
  }
  throw input_error("unknown algorithm");
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "s2") return Algorithm::s2;
  if (name == "random") return Algorithm::random;
  if (name == "bisect") return Algorithm::bisect;
  throw input_error("unknown algorithm: " + name);
}

DcResult dc_query_complexity(const std::vector<QueryRecord>& log,
                             std::span<const int> boundary) {
  if (boundary.empty()) throw input_error("dc_query_complexity needs a nonempty boundary");
  std::unordered_set<int> missing(boundary.begin(), boundary.end());
  for (std::size_t i = 0; i < log.size(); ++i) {
    missing.erase(log[i].vertex);
    if (missing.empty()) return {true, i + 1};
  }
  return {false, log.size()};
}

namespace {

RunResult dispatch(Algorithm a, const Graph& g, LabelOracle& oracle,
                   const RunOptions& opt) {
  switch (a) {
    case Algorithm::s2: return s2_run(g, oracle, opt);
    case Algorithm::random: return random_run(g, oracle, opt);
    case Algorithm::bisect: return bisect_run(g, oracle, opt);
  }
  throw input_error("unknown algorithm");
}

struct ResolvedRun {
  int budget = 0;
  std::int64_t repetitions = 1;
};

ResolvedRun resolve_run(const Graph& g, const Labeling& truth, const BenchConfig& config) {
  if (config.trials < 1) throw input_error("bench needs trials >= 1");
  int n = g.vertex_count();
  ResolvedRun r;
  r.repetitions = config.repetitions
                      ? *config.repetitions
                      : (config.gamma == 0.0
                             ? 1
                             : repetitions_needed(config.gamma, n, config.epsilon));
  if (config.budget) {
    r.budget = *config.budget;
  } else {
    ComplexitySummary s = summarize(g, truth);
    std::int64_t bound =
        budget_bound(n, s.m, s.kappa_star.value_or(1),
                     static_cast<std::int64_t>(s.boundary_size), s.beta.value(),
                     config.epsilon);
    r.budget = static_cast<int>(std::min<std::int64_t>(bound, n));
  }
  return r;
}

RunResult run_trial(Algorithm algorithm, const Graph& g, const Labeling& truth,
                    double gamma, const ResolvedRun& r, std::uint64_t trial_seed) {
  NoisyOracle oracle(truth, gamma, split_seed(trial_seed, 1));
  RunOptions opt;
  opt.stop = StoppingRule::budget(r.budget);
  opt.seed = split_seed(trial_seed, 0);
  opt.repetitions = r.repetitions;
  opt.ground_truth = &truth;
  return dispatch(algorithm, g, oracle, opt);
}

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  if (values.empty()) return a;
  double sum = 0.0;
  a.min = values.front();
  a.max = values.front();
  for (double v : values) {
    sum += v;
    a.min = std::min(a.min, v);
    a.max = std::max(a.max, v);
  }
  a.mean = sum / values.size();
  double sq = 0.0;
  for (double v : values) sq += (v - a.mean) * (v - a.mean);
  a.stddev = std::sqrt(sq / values.size());
  return a;
}

}  // namespace

BenchReport bench(const Graph& g, const Labeling& truth, const BenchConfig& config) {
  std::vector<Edge> cuts = induced_cuts(g, truth);
  if (cuts.empty()) throw input_error("bench needs ground truth with a nonempty cut");
  std::vector<int> boundary;
  for (const Edge& e : cuts) {
    boundary.push_back(e.u);
    boundary.push_back(e.v);
  }
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());

  ResolvedRun r = resolve_run(g, truth, config);
  BenchReport report;
  report.algorithm = algorithm_name(config.algorithm);
  report.boundary_size = boundary.size();
  report.budget_used = r.budget;
  report.repetitions_used = r.repetitions;

  std::vector<double> query_values, dc_values;
  for (int t = 0; t < config.trials; ++t) {
    std::uint64_t trial_seed = split_seed(config.base_seed, static_cast<std::uint64_t>(t));
    auto start = std::chrono::steady_clock::now();
    RunResult res = run_trial(config.algorithm, g, truth, config.gamma, r, trial_seed);
    auto stop = std::chrono::steady_clock::now();

    TrialRecord rec;
    rec.trial = t;
    rec.seed = trial_seed;
    rec.queries_used = res.queries_used;
    rec.dc = dc_query_complexity(res.log, boundary);
    rec.recovered = res.cut_recovered.value_or(false);
    rec.ms_elapsed = std::chrono::duration<double, std::milli>(stop - start).count();
    report.records.push_back(rec);

    query_values.push_back(static_cast<double>(rec.queries_used));
    if (rec.dc.covered) {
      dc_values.push_back(static_cast<double>(rec.dc.value));
      ++report.covered_trials;
    }
    if (rec.recovered) report.recovery_fraction += 1.0;
  }
  report.recovery_fraction /= config.trials;
  report.queries = aggregate(query_values);
  report.dc = aggregate(dc_values);
  return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
  out << "trial,seed,algorithm,queries_used,dc_complexity,recovered,ms_elapsed\n";
  for (const TrialRecord& rec : report.records) {
    out << rec.trial << ',' << rec.seed << ',' << report.algorithm << ','
        << rec.queries_used << ',';
    if (rec.dc.covered) {
      out << rec.dc.value;
    } else {
      out << -1;
    }
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", rec.ms_elapsed);
    out << ',' << (rec.recovered ? 1 : 0) << ',' << ms << '\n';
  }
}

std::string bench_summary_json(const BenchReport& report) {
  nlohmann::json j;
  j["algorithm"] = report.algorithm;
  j["trials"] = report.records.size();
  j["budget"] = report.budget_used;
  j["repetitions"] = report.repetitions_used;
  j["boundary_size"] = report.boundary_size;
  j["covered_trials"] = report.covered_trials;
  j["recovery_rate"] = report.recovery_fraction;
  j["queries"] = {{"mean", report.queries.mean},
                  {"stddev", report.queries.stddev},
                  {"min", report.queries.min},
                  {"max", report.queries.max}};
  if (report.covered_trials > 0) {
    j["dc_complexity"] = {{"mean", report.dc.mean},
                          {"stddev", report.dc.stddev},
                          {"min", report.dc.min},
                          {"max", report.dc.max}};
  } else {
    j["dc_complexity"] = nullptr;
  }
  return j.dump(2);
}

double recovery_rate(const Graph& g, const Labeling& truth, const BenchConfig& config) {
  ResolvedRun r = resolve_run(g, truth, config);
  int recovered = 0;
  for (int t = 0; t < config.trials; ++t) {
    std::uint64_t trial_seed = split_seed(config.base_seed, static_cast<std::uint64_t>(t));
    RunResult res = run_trial(config.algorithm, g, truth, config.gamma, r, trial_seed);
    if (res.cut_recovered.value_or(false)) ++recovered;
  }
  return static_cast<double>(recovered) / config.trials;
}

std::int64_t nonparam_budget(int w, int d, double c1, int k, double beta, double gamma,
                             std::optional<double> eps) {
  if (w < 2) throw input_error("nonparam_budget needs w >= 2");
  if (d < 1) throw input_error("nonparam_budget needs d >= 1");
  if (!(c1 > 0.0)) throw input_error("nonparam_budget needs c1 > 0");
  if (k < 1) throw input_error("nonparam_budget needs k >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw input_error("nonparam_budget needs beta in (0, 1)");
  if (gamma < 0.0) throw input_error("nonparam_budget needs gamma >= 0");
  if (gamma >= 0.5) throw infeasible_error("noise rate 0.5 leaves no signal to amplify");
  double e = eps.value_or(1.0 / w);
  if (!(e > 0.0 && e < 1.0)) throw input_error("nonparam_budget needs eps in (0, 1)");

  double log_cells = d * std::log(static_cast<double>(w));
  double queries = 6.0 * c1 * std::pow(2.0 * w, d - 1) +
                   (static_cast<double>(k) * k / 4.0) * log_cells +
                   std::log(1.0 / (beta * e)) / std::log(1.0 / (1.0 - beta));
  double repetitions = (log_cells + std::log(1.0 / e)) / (2.0 * (0.5 - gamma) * (0.5 - gamma));
  double total = std::ceil(queries * repetitions);
  if (!(total < 9.0e18)) throw infeasible_error("nonparam budget overflows");
  return static_cast<std::int64_t>(total);
}

namespace {

double default_c1(const GeometricTruth& truth) {
  // One unit of boundary measure per box face interior to [0,1]^d.
  int faces = 0;
  for (const auto& [a, b] : truth.box) {
    if (a > 0.0) ++faces;
    if (b < 1.0) ++faces;
  }
  return std::max(faces, 1);
}

struct CachedLattice {
  LatticeGraph lattice;
  std::vector<double> overlap;  // cell volume inside the truth box, per vertex
};

}  // namespace

std::vector<RiskPoint> nonparam_experiment(const NonparamConfig& config) {
  validate(config.truth);
  if (config.budgets.empty()) throw input_error("nonparam_experiment needs budgets");
  if (config.trials < 1) throw input_error("nonparam_experiment needs trials >= 1");
  if (config.k < 1) throw input_error("nonparam_experiment needs k >= 1");

  int d = config.truth.dim();
  double margin = config.truth.margin;
  double gamma = 0.5 - margin;  // flip probability
  double beta = std::min(config.truth.volume(), 1.0 - config.truth.volume());
  if (!(beta > 0.0)) throw input_error("truth region must leave both classes volume");
  double c1 = config.c1.value_or(default_c1(config.truth));

  auto budget_at = [&](int w) {
    return nonparam_budget(w, d, c1, config.k, beta, gamma);
  };

  std::map<int, CachedLattice> cache;
  std::vector<RiskPoint> points;
  for (std::size_t bi = 0; bi < config.budgets.size(); ++bi) {
    std::int64_t n = config.budgets[bi];
    if (budget_at(2) > n) {
      throw input_error("budget " + std::to_string(n) + " below the smallest lattice");
    }
    int w = 2;
    while (w < 100000 && budget_at(w + 1) <= n) ++w;

    auto [it, inserted] = cache.try_emplace(w);
    if (inserted) {
      it->second.lattice = lattice_graph(w, d);
      std::int64_t cells = it->second.lattice.geometry.vertex_count();
      it->second.overlap.resize(cells);
      for (std::int64_t v = 0; v < cells; ++v) {
        it->second.overlap[v] = config.truth.cell_overlap(it->second.lattice.geometry, v);
      }
    }
    const CachedLattice& entry = it->second;
    std::int64_t cells = entry.lattice.geometry.vertex_count();
    double cell_volume = entry.lattice.geometry.cell_volume();

    // Split the sample budget into logical queries times majority repetitions,
    // the same factorization the budget formula uses.
    double log_cells = d * std::log(static_cast<double>(w));
    double eps = 1.0 / w;
    double queries_factor = 6.0 * c1 * std::pow(2.0 * w, d - 1) +
                            (static_cast<double>(config.k) * config.k / 4.0) * log_cells +
                            std::log(1.0 / (beta * eps)) / std::log(1.0 / (1.0 - beta));
    auto logical = static_cast<int>(
        std::min<std::int64_t>(cells, static_cast<std::int64_t>(std::ceil(queries_factor))));
    auto reps = static_cast<std::int64_t>(
        std::ceil((log_cells + std::log(1.0 / eps)) / (2.0 * margin * margin)));

    double risk_sum = 0.0;
    for (int t = 0; t < config.trials; ++t) {
      std::uint64_t trial_seed =
          split_seed(split_seed(config.base_seed, bi), static_cast<std::uint64_t>(t));
      GeometricOracle oracle(config.truth, entry.lattice.geometry, split_seed(trial_seed, 1));
      RunOptions opt;
      opt.stop = StoppingRule::budget(logical);
      opt.seed = split_seed(trial_seed, 0);
      opt.repetitions = std::max<std::int64_t>(reps, 1);
      RunResult res = s2_run(entry.lattice.graph, oracle, opt);

      double sym_diff = 0.0;
      for (std::int64_t v = 0; v < cells; ++v) {
        double inside = entry.overlap[v];
        sym_diff += res.predicted.label(static_cast<int>(v)) > 0 ? cell_volume - inside
                                                                 : inside;
      }
      risk_sum += 2.0 * margin * sym_diff;
    }
    points.push_back(RiskPoint{n, w, risk_sum / config.trials});
  }
  return points;
}

void write_risk_csv(std::span<const RiskPoint> points, std::ostream& out) {
  out << "budget,w,excess_risk\n";
  for (const RiskPoint& p : points) {
    char risk[40];
    std::snprintf(risk, sizeof risk, "%.10g", p.excess_risk);
    out << p.budget << ',' << p.w << ',' << risk << '\n';
  }
}

std::uint64_t count_grid_cuts(int r, int max_cut) {
  if (r < 2 || r > 4) throw input_error("count_grid_cuts supports r in [2, 4]");
  if (max_cut < 0) throw input_error("count_grid_cuts needs max_cut >= 0");
  Graph g = grid_graph(r, r);
  int n = r * r;
  int free_vertices = n - 2;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (1ull << free_vertices); ++mask) {
    Labeling f(n);
    f.set(0, 1);       // bottom-left corner
    f.set(n - 1, -1);  // top-right corner
    for (int b = 0; b < free_vertices; ++b) {
      f.set(b + 1, (mask >> b) & 1 ? 1 : -1);
    }
    CutStructure cs = cut_structure(g, f);
    if (cs.k() == 2 && cs.cut.size() <= static_cast<std::size_t>(max_cut)) ++count;
  }
  return count;
}

ChainCount chain_family_count(int r, int k, int p, int m) {
  ChainFamilySpec spec;
  spec.paths = r;
  spec.kappa = k;
  spec.blocks = p;
  spec.n = static_cast<std::int64_t>(p) * chain_block_size(spec);

  ChainCount out;
  out.exact = chain_labeling_count(spec, m);
  out.log2_exact = std::log2(static_cast<double>(out.exact));
  if (m == 0) return out;

  std::int64_t khalf = (k - 1) / 2;           // floor((kappa-1)/2)
  std::int64_t c = static_cast<std::int64_t>(m) * r;
  std::int64_t rfloor = c / m;                 // floor(c/m)
  std::int64_t block = rfloor * khalf + 2;
  std::int64_t segments = spec.n / block;      // floor(n / block)
  out.lower_bound =
      m * std::log2((1.0 / m) * static_cast<double>(segments) *
                    static_cast<double>(khalf + 1)) +
      static_cast<double>(m * rfloor - m) * std::log2(static_cast<double>(khalf + 1));
  return out;
}

}  // namespace s2al
