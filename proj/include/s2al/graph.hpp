#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace s2al {

/// Undirected edge, always stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Normalizes endpoint order; rejects self-loops.
Edge make_edge(int a, int b);

/// Simple undirected graph on vertices 0..n-1. Immutable once built;
/// neighbor lists are kept sorted ascending so every traversal in the
/// library is deterministic.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::span<const Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const;
  bool has_edge(int a, int b) const;

  /// All edges with u < v, sorted ascending.
  std::vector<Edge> edges() const;

  void check_vertex(int v) const;  // throws input_error when out of range

 private:
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<int>> adj_;
};

/// Vertex labels in {-1, +1}; may cover only part of the vertex set.
class Labeling {
 public:
  Labeling() = default;
  explicit Labeling(int n);
  static Labeling constant(int n, int label);

  int size() const { return static_cast<int>(values_.size()); }
  bool has(int v) const;
  int label(int v) const;          // requires has(v)
  void set(int v, int label);      // label in {-1, +1}
  int assigned_count() const { return assigned_; }
  bool total() const { return assigned_ == size(); }

  /// Assigned vertices, ascending.
  std::vector<int> assigned_vertices() const;

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<signed char> values_;  // 0 = unset
  int assigned_ = 0;
};

struct Path {
  std::vector<int> vertices;  // endpoints included
  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

/// BFS shortest path. Among equal-length paths returns the one found by
/// scanning neighbor lists in ascending id order. nullopt when unreachable.
std::optional<Path> shortest_path(const Graph& g, int from, int to);

/// Connected components as vertex blocks; blocks ordered by smallest member,
/// members ascending.
std::vector<std::vector<int>> connected_components(const Graph& g);

/// Component index per vertex, numbering components by smallest member.
std::vector<int> component_ids(const Graph& g);

/// Copy of g without the given edges. Every dropped edge must be present.
Graph remove_edges(const Graph& g, std::span<const Edge> drop);

}  // namespace s2al
