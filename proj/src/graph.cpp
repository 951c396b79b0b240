#include "s2al/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "s2al/errors.hpp"

namespace s2al {

Edge make_edge(int a, int b) {
  if (a == b) throw input_error("edge endpoints must differ: " + std::to_string(a));
  if (a > b) std::swap(a, b);
  return Edge{a, b};
}

Graph::Graph(int n, std::span<const Edge> edges) : n_(n), m_(edges.size()) {
  if (n < 0) throw input_error("vertex count must be non-negative");
  adj_.resize(static_cast<std::size_t>(n));
  for (const Edge& e : edges) {
    if (e.u >= e.v) throw input_error("edge not normalized: " + std::to_string(e.u) + " " + std::to_string(e.v));
    if (e.u < 0 || e.v >= n)
      throw input_error("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
    adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw input_error("duplicate edge in edge list");
  }
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw input_error("vertex out of range: " + std::to_string(v));
}

const std::vector<int>& Graph::neighbors(int v) const {
  check_vertex(v);
  return adj_[static_cast<std::size_t>(v)];
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

bool Graph::has_edge(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  const auto& nb = adj_[static_cast<std::size_t>(a)];
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[static_cast<std::size_t>(u)])
      if (u < v) out.push_back(Edge{u, v});
  return out;
}

Labeling::Labeling(int n) {
  if (n < 0) throw input_error("labeling size must be non-negative");
  values_.assign(static_cast<std::size_t>(n), 0);
}

Labeling Labeling::constant(int n, int label) {
  Labeling l(n);
  for (int v = 0; v < n; ++v) l.set(v, label);
  return l;
}

bool Labeling::has(int v) const {
  if (v < 0 || v >= size()) throw input_error("vertex out of range: " + std::to_string(v));
  return values_[static_cast<std::size_t>(v)] != 0;
}

int Labeling::label(int v) const {
  if (!has(v)) throw input_error("vertex has no label: " + std::to_string(v));
  return values_[static_cast<std::size_t>(v)];
}

void Labeling::set(int v, int label) {
  if (v < 0 || v >= size()) throw input_error("vertex out of range: " + std::to_string(v));
  if (label != -1 && label != 1) throw input_error("label must be -1 or +1");
  auto& slot = values_[static_cast<std::size_t>(v)];
  if (slot == 0) ++assigned_;
  slot = static_cast<signed char>(label);
}

std::vector<int> Labeling::assigned_vertices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(assigned_));
  for (int v = 0; v < size(); ++v)
    if (values_[static_cast<std::size_t>(v)] != 0) out.push_back(v);
  return out;
}

std::optional<Path> shortest_path(const Graph& g, int from, int to) {
  g.check_vertex(from);
  g.check_vertex(to);
  if (from == to) return Path{{from}};
  std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()), -2);
  std::queue<int> q;
  parent[static_cast<std::size_t>(from)] = -1;
  q.push(from);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.neighbors(u)) {
      if (parent[static_cast<std::size_t>(w)] != -2) continue;
      parent[static_cast<std::size_t>(w)] = u;
      if (w == to) {
        std::vector<int> rev;
        for (int x = to; x != -1; x = parent[static_cast<std::size_t>(x)]) rev.push_back(x);
        std::reverse(rev.begin(), rev.end());
        return Path{std::move(rev)};
      }
      q.push(w);
    }
  }
  return std::nullopt;
}

std::vector<int> component_ids(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] != -1) continue;
    comp[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(u)) {
        if (comp[static_cast<std::size_t>(w)] == -1) {
          comp[static_cast<std::size_t>(w)] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> comp = component_ids(g);
  int count = 0;
  for (int c : comp) count = std::max(count, c + 1);
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(count));
  for (int v = 0; v < g.vertex_count(); ++v)
    blocks[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
  return blocks;  // already ordered: component ids follow smallest members
}

Graph remove_edges(const Graph& g, std::span<const Edge> drop) {
  std::vector<Edge> dropped(drop.begin(), drop.end());
  std::sort(dropped.begin(), dropped.end());
  for (const Edge& e : dropped) {
    if (!g.has_edge(e.u, e.v))
      throw input_error("cannot remove absent edge: " + std::to_string(e.u) + " " + std::to_string(e.v));
  }
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    if (!std::binary_search(dropped.begin(), dropped.end(), e)) kept.push_back(e);
  }
  if (kept.size() + dropped.size() != g.edge_count())
    throw input_error("duplicate edges in removal list");
  return Graph(g.vertex_count(), kept);
}

}  // namespace s2al
