#pragma once

#include <cstdint>

#include "s2al/graph.hpp"
#include "s2al/rng.hpp"

namespace s2al {

/// Source of (possibly noisy) vertex labels. Implementations own their
/// randomness and count every raw query they answer.
class LabelOracle {
 public:
  virtual ~LabelOracle() = default;
  virtual int query(int v) = 0;  // returns -1 or +1
  virtual int vertex_count() const = 0;
  virtual std::uint64_t query_count() const = 0;
};

/// Ground-truth labeling observed through symmetric label noise: each query
/// independently flips the true label with probability flip_prob. Responses
/// are a deterministic function of (seed, query sequence).
class NoisyOracle final : public LabelOracle {
 public:
  /// truth must be total; flip_prob in [0, 1/2).
  NoisyOracle(Labeling truth, double flip_prob, std::uint64_t seed);

  int query(int v) override;
  int vertex_count() const override { return truth_.size(); }
  std::uint64_t query_count() const override { return count_; }

  const Labeling& truth() const { return truth_; }
  double flip_prob() const { return flip_prob_; }

 private:
  Labeling truth_;
  double flip_prob_;
  Rng rng_;
  std::uint64_t count_ = 0;
};

/// Repetitions per vertex so that majority voting drives the per-vertex error
/// below eps/n: ceil(ln(n/eps) / (2(1/2 - flip_prob)^2)), natural log.
/// Rejects flip_prob >= 1/2 as infeasible.
std::int64_t repetitions_needed(double flip_prob, int n, double eps);

/// Majority vote over `repetitions` raw queries of v; ties go to +1.
int majority_query(LabelOracle& oracle, int v, std::int64_t repetitions);

}  // namespace s2al
