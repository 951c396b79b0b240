#include "s2al/complexity.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>

#include "json.hpp"

#include "s2al/errors.hpp"

namespace s2al {

namespace {

std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::vector<int> queue;
  queue.reserve(g.vertex_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

void require_total(const Graph& g, const Labeling& f) {
  if (f.size() != g.vertex_count()) {
    throw input_error("labeling size does not match graph");
  }
  if (!f.total()) throw input_error("labeling must assign every vertex");
}

Edge normalized(Edge e) { return make_edge(e.u, e.v); }

std::int64_t ceil_log2(std::int64_t x) {
  assert(x >= 1);
  return std::bit_width(static_cast<std::uint64_t>(x - 1));
}

}  // namespace

CutStructure cut_structure(const Graph& g, const Labeling& f) {
  require_total(g, f);
  CutStructure cs;
  for (const Edge& e : g.edges()) {
    if (f.label(e.u) != f.label(e.v)) cs.cut.push_back(e);
  }
  for (const Edge& e : cs.cut) {
    cs.boundary.push_back(e.u);
    cs.boundary.push_back(e.v);
  }
  std::sort(cs.boundary.begin(), cs.boundary.end());
  cs.boundary.erase(std::unique(cs.boundary.begin(), cs.boundary.end()), cs.boundary.end());

  Graph reduced = remove_edges(g, cs.cut);
  cs.vertex_component = component_ids(reduced);
  int k = cs.vertex_component.empty()
              ? 0
              : *std::max_element(cs.vertex_component.begin(), cs.vertex_component.end()) + 1;
  cs.component_sizes.assign(k, 0);
  for (int c : cs.vertex_component) ++cs.component_sizes[c];

  std::map<std::pair<int, int>, std::vector<Edge>> groups;
  for (const Edge& e : cs.cut) {
    int a = cs.vertex_component[e.u];
    int b = cs.vertex_component[e.v];
    groups[{std::min(a, b), std::max(a, b)}].push_back(e);
  }
  for (auto& [pair, edges] : groups) {
    cs.components.push_back(CutComponent{pair, std::move(edges)});
  }
  return cs;
}

std::optional<int> delta(const Graph& g, const Labeling& f, Edge e1, Edge e2) {
  CutStructure cs = cut_structure(g, f);
  e1 = normalized(e1);
  e2 = normalized(e2);
  for (const Edge& e : {e1, e2}) {
    if (!std::binary_search(cs.cut.begin(), cs.cut.end(), e)) {
      throw input_error("delta requires cut edges");
    }
  }
  if (e1 == e2) return 0;

  // Orient both edges so x carries the +1 label.
  auto oriented = [&](Edge e) {
    return f.label(e.u) > 0 ? std::pair{e.u, e.v} : std::pair{e.v, e.u};
  };
  auto [x1, y1] = oriented(e1);
  auto [x2, y2] = oriented(e2);

  Graph reduced = remove_edges(g, cs.cut);
  std::vector<int> from_x = bfs_distances(reduced, x1);
  std::vector<int> from_y = bfs_distances(reduced, y1);
  if (from_x[x2] < 0 || from_y[y2] < 0) return std::nullopt;
  return from_x[x2] + from_y[y2] + 1;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  int groups;
  explicit UnionFind(int n) : parent(n), groups(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --groups;
    }
  }
};

}  // namespace

int kappa_star(const Graph& g, const Labeling& f) {
  CutStructure cs = cut_structure(g, f);
  int c = static_cast<int>(cs.cut.size());
  if (c == 0) throw input_error("kappa_star is undefined for an empty cut");
  if (c == cs.m()) return 1;

  Graph reduced = remove_edges(g, cs.cut);
  std::vector<int> xs(c), ys(c);
  for (int i = 0; i < c; ++i) {
    const Edge& e = cs.cut[i];
    xs[i] = f.label(e.u) > 0 ? e.u : e.v;
    ys[i] = f.label(e.u) > 0 ? e.v : e.u;
  }
  std::vector<std::vector<int>> from_x(c), from_y(c);
  for (int i = 0; i < c; ++i) {
    from_x[i] = bfs_distances(reduced, xs[i]);
    from_y[i] = bfs_distances(reduced, ys[i]);
  }

  // (delta, i, j) over pairs in the same cut component.
  std::vector<std::array<int, 3>> links;
  for (int i = 0; i < c; ++i) {
    for (int j = i + 1; j < c; ++j) {
      int dx = from_x[i][xs[j]];
      int dy = from_y[i][ys[j]];
      if (dx < 0 || dy < 0) continue;
      links.push_back({dx + dy + 1, i, j});
    }
  }
  std::sort(links.begin(), links.end());

  UnionFind uf(c);
  std::size_t pos = 0;
  while (pos < links.size()) {
    int d = links[pos][0];
    while (pos < links.size() && links[pos][0] == d) {
      uf.merge(links[pos][1], links[pos][2]);
      ++pos;
    }
    if (uf.groups == cs.m()) return d;
  }
  assert(false && "all intra-component pairs merged, count must reach m");
  return links.empty() ? 1 : links.back()[0];
}

Rational balancedness(const Graph& g, const Labeling& f) {
  CutStructure cs = cut_structure(g, f);
  std::int64_t smallest =
      *std::min_element(cs.component_sizes.begin(), cs.component_sizes.end());
  return Rational{smallest, g.vertex_count()};
}

std::int64_t witness_size(double beta, double alpha) {
  if (!(beta > 0.0 && beta < 1.0)) throw input_error("witness_size needs beta in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw input_error("witness_size needs alpha in (0, 1)");
  double raw = std::log(1.0 / (beta * alpha)) / std::log(1.0 / (1.0 - beta));
  auto size = static_cast<std::int64_t>(std::ceil(raw));
  return std::max<std::int64_t>(size, 1);
}

bool is_witness(const Graph& g, const Labeling& f, std::span<const int> vertices) {
  CutStructure cs = cut_structure(g, f);
  std::vector<char> hit(cs.k(), 0);
  for (int v : vertices) {
    g.check_vertex(v);
    hit[cs.vertex_component[v]] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

std::int64_t budget_bound(std::int64_t n, int m, std::int64_t kappa,
                          std::int64_t boundary_size, double beta, double eps) {
  if (n < 1) throw input_error("budget_bound needs n >= 1");
  if (m < 0) throw input_error("budget_bound needs m >= 0");
  if (kappa < 1) throw input_error("budget_bound needs kappa >= 1");
  if (boundary_size < 0) throw input_error("budget_bound needs boundary_size >= 0");
  if (!(beta > 0.0 && beta < 1.0)) throw input_error("budget_bound needs beta in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0)) throw input_error("budget_bound needs eps in (0, 1)");

  double raw = std::log(1.0 / (beta * eps)) / std::log(1.0 / (1.0 - beta));
  auto random_phase = static_cast<std::int64_t>(std::ceil(raw));
  if (m == 0) return random_phase;
  return random_phase + m * (ceil_log2(n) - ceil_log2(kappa)) +
         boundary_size * (ceil_log2(kappa) + 1);
}

ComplexitySummary summarize(const Graph& g, const Labeling& f) {
  CutStructure cs = cut_structure(g, f);
  ComplexitySummary s;
  s.cut_size = cs.cut.size();
  s.boundary_size = cs.boundary.size();
  s.m = cs.m();
  if (!cs.cut.empty()) s.kappa_star = kappa_star(g, f);
  std::int64_t smallest =
      *std::min_element(cs.component_sizes.begin(), cs.component_sizes.end());
  s.beta = Rational{smallest, g.vertex_count()};
  s.k = cs.k();
  return s;
}

std::string summary_to_json(const ComplexitySummary& s) {
  nlohmann::json j;
  j["cut_size"] = s.cut_size;
  j["boundary_size"] = s.boundary_size;
  j["m"] = s.m;
  if (s.kappa_star) {
    j["kappa_star"] = *s.kappa_star;
  } else {
    j["kappa_star"] = nullptr;
  }
  j["beta"] = {{"num", s.beta.num}, {"den", s.beta.den}, {"value", s.beta.value()}};
  j["k"] = s.k;
  return j.dump(2);
}

}  // namespace s2al
