#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "s2al/errors.hpp"
#include "s2al/oracle.hpp"

using namespace s2al;

namespace {

// Deterministic oracle replaying a fixed answer sequence, for exercising the
// majority vote without randomness.
class ScriptedOracle final : public LabelOracle {
 public:
  ScriptedOracle(int n, std::vector<int> answers) : n_(n), answers_(std::move(answers)) {}

  int query(int) override {
    ++count_;
    int a = answers_[next_ % answers_.size()];
    ++next_;
    return a;
  }
  int vertex_count() const override { return n_; }
  std::uint64_t query_count() const override { return count_; }

 private:
  int n_;
  std::vector<int> answers_;
  std::size_t next_ = 0;
  std::uint64_t count_ = 0;
};

}  // namespace

TEST_CASE("repetitions_needed matches the ceil formula at pinned points") {
  CHECK(repetitions_needed(0.25, 225, 0.05) == 68);
  CHECK(repetitions_needed(0.0, 2, 1.0) == 2);
  CHECK(repetitions_needed(0.0, 1, 1.0) == 1);  // ln(1) = 0, clamped up

  // Direct formula evaluation as an independent check on a few more points.
  for (double gamma : {0.1, 0.3, 0.45}) {
    for (int n : {2, 50, 10000}) {
      double margin = 0.5 - gamma;
      auto expected = static_cast<std::int64_t>(
          std::ceil(std::log(n / 0.05) / (2.0 * margin * margin)));
      CHECK(repetitions_needed(gamma, n, 0.05) == std::max<std::int64_t>(expected, 1));
    }
  }
}

TEST_CASE("repetitions_needed grows with noise and with the vertex count") {
  CHECK(repetitions_needed(0.1, 225, 0.05) < repetitions_needed(0.25, 225, 0.05));
  CHECK(repetitions_needed(0.25, 225, 0.05) < repetitions_needed(0.4, 225, 0.05));
  CHECK(repetitions_needed(0.25, 10, 0.05) <= repetitions_needed(0.25, 225, 0.05));
  CHECK(repetitions_needed(0.25, 225, 0.01) >= repetitions_needed(0.25, 225, 0.05));
}

TEST_CASE("repetitions_needed rejects out-of-range parameters") {
  CHECK_THROWS_AS(repetitions_needed(0.5, 10, 0.05), infeasible_error);
  CHECK_THROWS_AS(repetitions_needed(0.7, 10, 0.05), infeasible_error);
  CHECK_THROWS_AS(repetitions_needed(-0.1, 10, 0.05), infeasible_error);
  CHECK_THROWS_AS(repetitions_needed(0.25, 0, 0.05), input_error);
  CHECK_THROWS_AS(repetitions_needed(0.25, 10, 0.0), input_error);
  CHECK_THROWS_AS(repetitions_needed(0.25, 10, 1.5), input_error);
}

TEST_CASE("noisy oracle validates construction") {
  Labeling partial(3);
  partial.set(0, 1);
  CHECK_THROWS_AS(NoisyOracle(partial, 0.1, 7), input_error);
  CHECK_THROWS_AS(NoisyOracle(Labeling::constant(3, 1), 0.5, 7), infeasible_error);
  CHECK_THROWS_AS(NoisyOracle(Labeling::constant(3, 1), -0.01, 7), infeasible_error);
}

TEST_CASE("noiseless oracle echoes the truth and counts queries") {
  Labeling truth(4);
  truth.set(0, 1);
  truth.set(1, -1);
  truth.set(2, -1);
  truth.set(3, 1);
  NoisyOracle oracle(truth, 0.0, 42);
  CHECK(oracle.vertex_count() == 4);
  CHECK(oracle.query_count() == 0);
  for (int round = 0; round < 3; ++round)
    for (int v = 0; v < 4; ++v) CHECK(oracle.query(v) == truth.label(v));
  CHECK(oracle.query_count() == 12);
  CHECK_THROWS_AS(oracle.query(4), input_error);
  CHECK_THROWS_AS(oracle.query(-1), input_error);
}

TEST_CASE("observed flip rate concentrates near the configured noise") {
  const int draws = 50000;
  for (double gamma : {0.1, 0.25, 0.4}) {
    NoisyOracle oracle(Labeling::constant(1, 1), gamma, 2024);
    int flips = 0;
    for (int i = 0; i < draws; ++i)
      if (oracle.query(0) < 0) ++flips;
    double rate = static_cast<double>(flips) / draws;
    // Binomial sd at n = 5e4 is below 0.0023, so 0.01 is over 4 sigma.
    CHECK(std::abs(rate - gamma) < 0.01);
  }
}

TEST_CASE("oracle responses are a deterministic function of the seed") {
  auto transcript = [](std::uint64_t seed) {
    NoisyOracle oracle(Labeling::constant(5, 1), 0.3, seed);
    std::vector<int> out;
    for (int i = 0; i < 200; ++i) out.push_back(oracle.query(i % 5));
    return out;
  };
  CHECK(transcript(11) == transcript(11));
  CHECK(transcript(11) != transcript(12));
}

TEST_CASE("majority vote charges every repetition and breaks ties toward +1") {
  ScriptedOracle flip(1, {1, -1});  // alternating answers
  CHECK(majority_query(flip, 0, 4) == 1);  // 2 vs 2 tie
  CHECK(flip.query_count() == 4);

  ScriptedOracle mostly_neg(1, {-1, -1, 1});
  CHECK(majority_query(mostly_neg, 0, 3) == -1);
  CHECK(mostly_neg.query_count() == 3);

  ScriptedOracle one(1, {-1});
  CHECK(majority_query(one, 0, 1) == -1);
  CHECK_THROWS_AS(majority_query(one, 0, 0), input_error);
  CHECK_THROWS_AS(majority_query(one, 0, -3), input_error);
}

TEST_CASE("majority vote at the prescribed repetition count is reliable") {
  // 68 repetitions target a per-vertex error of eps/n = 0.05/225 under
  // gamma = 0.25. Over 2000 majority votes we expect about 0.4 mistakes;
  // 20 misses would be far outside any plausible run.
  const std::int64_t reps = repetitions_needed(0.25, 225, 0.05);
  NoisyOracle oracle(Labeling::constant(1, -1), 0.25, 99);
  int wrong = 0;
  for (int i = 0; i < 2000; ++i)
    if (majority_query(oracle, 0, reps) != -1) ++wrong;
  CHECK(wrong <= 20);
  CHECK(oracle.query_count() == static_cast<std::uint64_t>(2000 * reps));
}
