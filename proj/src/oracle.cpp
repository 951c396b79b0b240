#include "s2al/oracle.hpp"

#include <cmath>

#include "s2al/errors.hpp"

namespace s2al {

NoisyOracle::NoisyOracle(Labeling truth, double flip_prob, std::uint64_t seed)
    : truth_(std::move(truth)), flip_prob_(flip_prob), rng_(seed) {
  if (!truth_.total()) throw input_error("oracle ground truth must label every vertex");
  if (!(flip_prob >= 0.0 && flip_prob < 0.5))
    throw infeasible_error("noise rate must lie in [0, 0.5)");
}

int NoisyOracle::query(int v) {
  if (v < 0 || v >= truth_.size()) throw input_error("oracle query out of range: " + std::to_string(v));
  ++count_;
  int label = truth_.label(v);
  // Draw even when flip_prob == 0 so the transcript depends only on the
  // query sequence, not on the noise level.
  return rng_.bernoulli(flip_prob_) ? -label : label;
}

std::int64_t repetitions_needed(double flip_prob, int n, double eps) {
  if (!(flip_prob >= 0.0 && flip_prob < 0.5))
    throw infeasible_error("noise rate must lie in [0, 0.5)");
  if (n < 1) throw input_error("vertex count must be positive");
  if (!(eps > 0.0 && eps <= 1.0)) throw input_error("eps must lie in (0, 1]");
  double margin = 0.5 - flip_prob;
  double r = std::log(static_cast<double>(n) / eps) / (2.0 * margin * margin);
  auto count = static_cast<std::int64_t>(std::ceil(r));
  return count < 1 ? 1 : count;
}

int majority_query(LabelOracle& oracle, int v, std::int64_t repetitions) {
  if (repetitions < 1) throw input_error("repetitions must be positive");
  std::int64_t positive = 0;
  for (std::int64_t i = 0; i < repetitions; ++i)
    if (oracle.query(v) > 0) ++positive;
  return 2 * positive >= repetitions ? 1 : -1;
}

}  // namespace s2al
