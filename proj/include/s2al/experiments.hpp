#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "s2al/engine.hpp"
#include "s2al/generators.hpp"
#include "s2al/graph.hpp"

namespace s2al {

enum class Algorithm { s2, random, bisect };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct DcResult {
  bool covered = false;
  /// Smallest log prefix whose queried vertices cover the boundary; the full
  /// log length when never covered.
  std::size_t value = 0;
  friend bool operator==(const DcResult&, const DcResult&) = default;
};

/// Queries issued before every boundary vertex has been queried.
DcResult dc_query_complexity(const std::vector<QueryRecord>& log,
                             std::span<const int> boundary);

struct BenchConfig {
  Algorithm algorithm = Algorithm::s2;
  double gamma = 0.0;    // oracle flip probability
  double epsilon = 0.05; // failure budget used when budget/repetitions are auto
  /// Logical query budget; defaults to budget_bound of the instance, capped
  /// at the vertex count.
  std::optional<int> budget;
  /// Raw queries per logical query; defaults to 1 when gamma == 0, otherwise
  /// repetitions_needed(gamma, n, epsilon).
  std::optional<std::int64_t> repetitions;
  int trials = 10;
  std::uint64_t base_seed = 0;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::size_t queries_used = 0;
  DcResult dc;
  bool recovered = false;
  double ms_elapsed = 0.0;
};

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
  double min = 0.0;
  double max = 0.0;
};

struct BenchReport {
  std::string algorithm;
  std::vector<TrialRecord> records;  // sorted by trial index
  Aggregate queries;
  Aggregate dc;            // over covered trials only
  int covered_trials = 0;
  double recovery_fraction = 0.0;
  std::size_t boundary_size = 0;
  int budget_used = 0;
  std::int64_t repetitions_used = 1;
};

/// Seeded independent trials of one algorithm against a ground-truth
/// labeling; per-trial boundary coverage cost, recovery flag and wall time.
/// The truth must induce a nonempty cut.
BenchReport bench(const Graph& g, const Labeling& truth, const BenchConfig& config);

/// Columns: trial,seed,algorithm,queries_used,dc_complexity,recovered,ms_elapsed.
/// dc_complexity is -1 when the run never covered the boundary. Every column
/// except ms_elapsed is deterministic per (config, base_seed).
void write_bench_csv(const BenchReport& report, std::ostream& out);

std::string bench_summary_json(const BenchReport& report);

/// Fraction of trials with exact cut recovery. Works for any truth, cut or
/// no cut.
double recovery_rate(const Graph& g, const Labeling& truth, const BenchConfig& config);

/// Sample-budget bound for learning a box region on the w^d lattice:
///   (6 c1 (2w)^(d-1) + (k^2/4) ln(w^d) + ln(1/(beta*eps))/ln(1/(1-beta)))
///     * ln(w^d/eps) / (2 (0.5-gamma)^2), rounded up.
/// eps defaults to 1/w. gamma is the flip probability; 0.5 is rejected as
/// infeasible.
std::int64_t nonparam_budget(int w, int d, double c1, int k, double beta, double gamma,
                             std::optional<double> eps = std::nullopt);

struct NonparamConfig {
  GeometricTruth truth;         // margin fixes the flip probability 0.5 - margin
  std::vector<std::int64_t> budgets;
  int trials = 1;               // risk is averaged over trials per budget
  std::uint64_t base_seed = 0;
  std::optional<double> c1;     // default: number of box faces interior to [0,1]^d
  int k = 2;
};

struct RiskPoint {
  std::int64_t budget = 0;
  int w = 0;
  double excess_risk = 0.0;
};

/// For each budget: pick the largest lattice width w whose nonparam_budget
/// fits, run the noise-tolerant engine with majority repetitions, and score
/// the completed labeling by exact symmetric-difference volume against the
/// box: excess risk = 2 * margin * vol(predicted delta truth).
std::vector<RiskPoint> nonparam_experiment(const NonparamConfig& config);

/// Columns: budget,w,excess_risk.
void write_risk_csv(std::span<const RiskPoint> points, std::ostream& out);

/// Labelings of the r x r grid with corners pinned to +1 (bottom-left) and
/// -1 (top-right), exactly two homogeneous components, and at most max_cut
/// cut edges. Exhaustive; r <= 4.
std::uint64_t count_grid_cuts(int r, int max_cut);

struct ChainCount {
  std::uint64_t exact = 0;
  double log2_exact = 0.0;
  double lower_bound = 0.0;  // bits
};

/// Closed-form family size C(p,m) * ((k+1)/2)^(m*r) next to the counting
/// bound m*log2((1/m) * floor(n/(r*(k-1)/2+2)) * ((k-1)/2+1))
/// + m*(r-1)*log2((k-1)/2+1) evaluated at the pure-chain vertex count.
ChainCount chain_family_count(int r, int k, int p, int m);

}  // namespace s2al
