#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "s2al/graph.hpp"

namespace s2al {

/// Exact fraction, kept unreduced so reported values match raw counts
/// (e.g. 105/225 for the 15x15 grid split at column 7).
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Cut edges joining one fixed pair of homogeneous components.
struct CutComponent {
  std::pair<int, int> component_pair;  // ids into the homogeneous partition, first < second
  std::vector<Edge> edges;             // ascending
};

/// Everything a labeling induces on a graph: the cut set, its boundary, the
/// homogeneous components of g minus the cut, and the cut components.
struct CutStructure {
  std::vector<Edge> cut;                // ascending
  std::vector<int> boundary;            // ascending vertex ids
  std::vector<CutComponent> components; // ordered by component_pair
  std::vector<int> vertex_component;    // homogeneous component id per vertex
  std::vector<int> component_sizes;     // by component id

  int m() const { return static_cast<int>(components.size()); }
  int k() const { return static_cast<int>(component_sizes.size()); }
};

CutStructure cut_structure(const Graph& g, const Labeling& f);

/// Distance between two cut edges: same-signed endpoint distances in g minus
/// the cut, plus one. nullopt when the edges sit in different cut components.
/// delta(e, e) == 0.
std::optional<int> delta(const Graph& g, const Labeling& f, Edge e1, Edge e2);

/// Minimal r >= 1 such that linking cut edges at delta <= r yields exactly
/// m connected groups (one per cut component). Union-find sweep over the
/// sorted finite delta values. Requires a nonempty cut set.
int kappa_star(const Graph& g, const Labeling& f);

/// min_i |V_i| / n over homogeneous components, as an exact fraction.
Rational balancedness(const Graph& g, const Labeling& f);

/// ceil(ln(1/(beta*alpha)) / ln(1/(1-beta))): vertices to sample so a uniform
/// set hits every homogeneous component with probability >= 1 - alpha.
std::int64_t witness_size(double beta, double alpha);

/// Does the vertex set touch every homogeneous component?
bool is_witness(const Graph& g, const Labeling& f, std::span<const int> vertices);

/// Query budget sufficient for exact cut recovery with probability 1 - eps:
/// ceil(ln(1/(beta*eps))/ln(1/(1-beta))) + m(ceil_log2(n) - ceil_log2(kappa))
///   + boundary_size(ceil_log2(kappa) + 1).
/// With m = 0 only the first (random-phase) term applies.
std::int64_t budget_bound(std::int64_t n, int m, std::int64_t kappa,
                          std::int64_t boundary_size, double beta, double eps);

struct ComplexitySummary {
  std::size_t cut_size = 0;
  std::size_t boundary_size = 0;
  int m = 0;
  std::optional<int> kappa_star;  // nullopt when the cut is empty
  Rational beta;
  int k = 0;
  friend bool operator==(const ComplexitySummary&, const ComplexitySummary&) = default;
};

ComplexitySummary summarize(const Graph& g, const Labeling& f);

/// JSON object with beta rendered as {num, den, value}; kappa_star null when
/// undefined.
std::string summary_to_json(const ComplexitySummary& s);

}  // namespace s2al
