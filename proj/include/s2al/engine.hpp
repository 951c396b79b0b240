#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "s2al/graph.hpp"
#include "s2al/oracle.hpp"

namespace s2al {

enum class Phase { random, aggressive };

struct QueryRecord {
  int step = 0;  // 0-based position in the run
  Phase phase = Phase::random;
  int vertex = 0;
  int label = 0;
  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

struct StoppingRule {
  enum class Kind { budget, boundary_known, holdout };

  static StoppingRule budget(int limit);
  static StoppingRule boundary_known(int target_boundary_size);
  static StoppingRule holdout(double fraction, double max_error);

  Kind kind = Kind::budget;
  int limit = 0;
  int target_boundary_size = 0;
  double holdout_fraction = 0.0;
  double holdout_max_error = 0.0;
};

struct RunOptions {
  StoppingRule stop;
  std::uint64_t seed = 0;
  /// Raw queries per logical query; majority vote when > 1.
  std::int64_t repetitions = 1;
  /// Labels known before the run starts (not logged, not charged against the
  /// budget). Used to study the aggressive phase in isolation.
  std::vector<std::pair<int, int>> initial_observed;
  /// When set, RunResult::cut_recovered compares found_cuts against the cut
  /// set this labeling induces.
  const Labeling* ground_truth = nullptr;
};

struct RunResult {
  std::vector<QueryRecord> log;
  Labeling predicted;                   // total
  std::vector<Edge> found_cuts;         // sorted ascending
  std::size_t queries_used = 0;         // logical queries == log.size()
  std::uint64_t raw_queries = 0;        // oracle-side count for this run
  std::optional<bool> cut_recovered;
};

/// Midpoint of the shortest among all shortest paths joining oppositely
/// labeled observed vertices, or nullopt when no such connected pair exists.
/// Pair ties break lexicographically on (distance, smaller id, larger id);
/// for odd path lengths the lower-id of the two central vertices is chosen.
/// Requires every oppositely-observed adjacent pair to have been cut already
/// (closest pair at distance 1 raises input_error).
std::optional<int> mssp(const Graph& g, const Labeling& observed);

/// Majority label per connected component of g among observed members; ties
/// and unobserved components fall back to the global majority, then +1.
/// Expects g to be the working graph (known cut edges removed).
Labeling label_completion(const Graph& g, const Labeling& observed);

/// Algorithm: repeatedly query the mssp midpoint while one exists, otherwise
/// a uniformly random never-queried vertex; strip every edge whose observed
/// endpoints disagree; stop when the rule fires or no query remains.
RunResult s2_run(const Graph& g, LabelOracle& oracle, const RunOptions& opt);

/// Baseline: random queries only.
RunResult random_run(const Graph& g, LabelOracle& oracle, const RunOptions& opt);

/// Baseline: like s2_run, but sticks with one oppositely-labeled pair,
/// bisecting its shortest path until a cut edge falls out, before looking for
/// the next pair.
RunResult bisect_run(const Graph& g, LabelOracle& oracle, const RunOptions& opt);

/// Cut edges a total labeling induces on g, sorted ascending.
std::vector<Edge> induced_cuts(const Graph& g, const Labeling& f);

/// Line format: "step phase vertex label", one record per line.
void write_run_log(const std::vector<QueryRecord>& log, std::ostream& out);
std::vector<QueryRecord> read_run_log(std::istream& in);

}  // namespace s2al
