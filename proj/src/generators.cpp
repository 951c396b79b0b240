#include "s2al/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "s2al/complexity.hpp"
#include "s2al/errors.hpp"

namespace s2al {

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw input_error("grid_graph needs rows, cols >= 1");
  if (static_cast<std::int64_t>(rows) * cols > (1 << 30)) {
    throw input_error("grid_graph dimensions too large");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(rows) * cols * 2);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back(make_edge(id(r, c), id(r, c + 1)));
      if (r + 1 < rows) edges.push_back(make_edge(id(r, c), id(r + 1, c)));
    }
  }
  return Graph(rows * cols, edges);
}

Labeling half_split_labeling(int rows, int cols, int split_col) {
  if (rows < 1 || cols < 1) throw input_error("half_split_labeling needs rows, cols >= 1");
  if (split_col < 0 || split_col > cols) {
    throw input_error("half_split_labeling needs split_col in [0, cols]");
  }
  Labeling f(rows * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      f.set(r * cols + c, c < split_col ? 1 : -1);
    }
  }
  return f;
}

std::pair<Graph, Labeling> dithered_core(int side, int core_side, double dither_prob,
                                         std::uint64_t seed) {
  if (side < 3) throw input_error("dithered_core needs side >= 3");
  if (core_side < 1 || core_side >= side) {
    throw input_error("dithered_core needs core_side in [1, side)");
  }
  if ((side - core_side) % 2 != 0) {
    throw input_error("dithered_core needs side - core_side even, so the core centers");
  }
  if (!(dither_prob >= 0.0 && dither_prob <= 1.0)) {
    throw input_error("dithered_core needs dither_prob in [0, 1]");
  }

  Graph g = grid_graph(side, side);
  int offset = (side - core_side) / 2;
  auto in_core = [&](int r, int c) {
    return r >= offset && r < offset + core_side && c >= offset && c < offset + core_side;
  };
  auto on_ring = [&](int r, int c) {
    return in_core(r, c) && (r == offset || r == offset + core_side - 1 || c == offset ||
                             c == offset + core_side - 1);
  };

  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(attempt)));
    Labeling f(side * side);
    for (int r = 0; r < side; ++r) {
      for (int c = 0; c < side; ++c) {
        bool positive = in_core(r, c);
        if (on_ring(r, c) && rng.bernoulli(dither_prob)) positive = false;
        f.set(r * side + c, positive ? 1 : -1);
      }
    }
    if (cut_structure(g, f).k() == 2) return {std::move(g), std::move(f)};
  }
  throw infeasible_error("dithered_core: no draw with two components in 10000 attempts");
}

std::int64_t LatticeGeometry::vertex_count() const {
  std::int64_t n = 1;
  for (int a = 0; a < d; ++a) n *= w;
  return n;
}

std::vector<int> LatticeGeometry::coords(std::int64_t v) const {
  std::vector<int> c(d);
  for (int a = d - 1; a >= 0; --a) {
    c[a] = static_cast<int>(v % w);
    v /= w;
  }
  return c;
}

std::int64_t LatticeGeometry::vertex_at(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != d) {
    throw input_error("coordinate count does not match lattice dimension");
  }
  std::int64_t v = 0;
  for (int a = 0; a < d; ++a) {
    if (coords[a] < 0 || coords[a] >= w) throw input_error("lattice coordinate out of range");
    v = v * w + coords[a];
  }
  return v;
}

double LatticeGeometry::cell_volume() const { return std::pow(1.0 / w, d); }

LatticeGraph lattice_graph(int w, int d) {
  if (w < 2) throw input_error("lattice_graph needs w >= 2");
  if (d < 1) throw input_error("lattice_graph needs d >= 1");
  std::int64_t n = 1;
  for (int a = 0; a < d; ++a) {
    n *= w;
    if (n > (1 << 30)) throw input_error("lattice_graph dimensions too large");
  }

  LatticeGeometry geom{w, d};
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * d);
  // Stride of axis a is w^(d-1-a); a vertex has a neighbor along a whenever
  // its a-th coordinate is below w - 1.
  std::vector<std::int64_t> stride(d, 1);
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * w;
  for (std::int64_t v = 0; v < n; ++v) {
    std::vector<int> c = geom.coords(v);
    for (int a = 0; a < d; ++a) {
      if (c[a] + 1 < w) {
        edges.push_back(make_edge(static_cast<int>(v), static_cast<int>(v + stride[a])));
      }
    }
  }
  return LatticeGraph{Graph(static_cast<int>(n), edges), geom};
}

double GeometricTruth::volume() const {
  double vol = 1.0;
  for (const auto& [a, b] : box) vol *= b - a;
  return vol;
}

bool GeometricTruth::contains(std::span<const double> point) const {
  for (std::size_t a = 0; a < box.size(); ++a) {
    if (point[a] < box[a].first || point[a] > box[a].second) return false;
  }
  return true;
}

double GeometricTruth::cell_overlap(const LatticeGeometry& geom, std::int64_t v) const {
  std::vector<int> c = geom.coords(v);
  double vol = 1.0;
  for (int a = 0; a < geom.d; ++a) {
    double lo = std::max(box[a].first, geom.cell_low(c[a]));
    double hi = std::min(box[a].second, geom.cell_high(c[a]));
    vol *= std::max(0.0, hi - lo);
  }
  return vol;
}

void validate(const GeometricTruth& truth) {
  if (truth.box.empty()) throw input_error("truth region needs at least one axis");
  for (const auto& [a, b] : truth.box) {
    if (!(a >= 0.0 && a < b && b <= 1.0)) {
      throw input_error("truth region axes must satisfy 0 <= a < b <= 1");
    }
  }
  if (!(truth.margin > 0.0 && truth.margin <= 0.5)) {
    throw input_error("truth margin must lie in (0, 0.5]");
  }
}

Labeling lattice_truth_labeling(const LatticeGeometry& geom, const GeometricTruth& truth) {
  validate(truth);
  if (truth.dim() != geom.d) throw input_error("truth dimension does not match lattice");
  std::int64_t n = geom.vertex_count();
  Labeling f(static_cast<int>(n));
  double half_cell = geom.cell_volume() / 2.0;
  for (std::int64_t v = 0; v < n; ++v) {
    f.set(static_cast<int>(v), truth.cell_overlap(geom, v) >= half_cell ? 1 : -1);
  }
  return f;
}

GeometricOracle::GeometricOracle(GeometricTruth truth, LatticeGeometry geom,
                                 std::uint64_t seed)
    : truth_(std::move(truth)), geom_(geom), rng_(seed) {
  validate(truth_);
  if (truth_.dim() != geom_.d) throw input_error("truth dimension does not match lattice");
}

int GeometricOracle::query(int v) {
  if (v < 0 || v >= vertex_count()) throw input_error("oracle query out of range");
  std::vector<int> c = geom_.coords(v);
  std::vector<double> point(geom_.d);
  for (int a = 0; a < geom_.d; ++a) {
    double lo = geom_.cell_low(c[a]);
    double hi = geom_.cell_high(c[a]);
    point[a] = lo + rng_.next_double() * (hi - lo);
  }
  int label = truth_.contains(point) ? 1 : -1;
  if (rng_.bernoulli(0.5 - truth_.margin)) label = -label;
  ++queries_;
  return label;
}

std::int64_t chain_block_size(const ChainFamilySpec& spec) {
  return static_cast<std::int64_t>(spec.paths) * ((spec.kappa - 1) / 2) + 2;
}

namespace {

void validate_chain_spec(const ChainFamilySpec& spec) {
  if (spec.paths < 1) throw input_error("chain family needs paths >= 1");
  if (spec.kappa < 3 || spec.kappa % 2 == 0) {
    throw input_error("chain family needs odd kappa >= 3");
  }
  if (spec.blocks < 1) throw input_error("chain family needs blocks >= 1");
  if (spec.n < static_cast<std::int64_t>(spec.blocks) * chain_block_size(spec)) {
    throw input_error("chain family needs n >= blocks * block size");
  }
  if (spec.n > (1 << 30)) throw input_error("chain family too large");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) {
    throw infeasible_error("chain labeling count overflows 64 bits");
  }
  return a * b;
}

std::uint64_t binomial_checked(int p, int m) {
  std::uint64_t result = 1;
  // Multiply before dividing; the running value C(p, i) keeps division exact.
  for (int i = 1; i <= m; ++i) {
    result = checked_mul(result, static_cast<std::uint64_t>(p - m + i));
    result /= static_cast<std::uint64_t>(i);
  }
  return result;
}

}  // namespace

Graph chain_family_graph(const ChainFamilySpec& spec) {
  validate_chain_spec(spec);
  int h = (spec.kappa - 1) / 2;
  auto bs = static_cast<int>(chain_block_size(spec));
  auto n = static_cast<int>(spec.n);
  std::vector<Edge> edges;

  for (int b = 0; b < spec.blocks; ++b) {
    int base = b * bs;
    int hub_in = base;
    int hub_out = base + 1;
    for (int j = 0; j < spec.paths; ++j) {
      int first = base + 2 + j * h;
      edges.push_back(make_edge(hub_in, first));
      for (int s = 1; s < h; ++s) edges.push_back(make_edge(first + s - 1, first + s));
      edges.push_back(make_edge(first + h - 1, hub_out));
    }
    if (b > 0) edges.push_back(make_edge(base - bs + 1, hub_in));
  }

  int chain_end = spec.blocks * bs;
  if (chain_end < n) {
    int last_hub = chain_end - bs + 1;
    edges.push_back(make_edge(last_hub, chain_end));
    for (int u = chain_end; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) edges.push_back(make_edge(u, v));
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph(n, edges);
}

std::uint64_t chain_labeling_count(const ChainFamilySpec& spec, int m) {
  validate_chain_spec(spec);
  if (m < 0 || m > spec.blocks) throw input_error("m must lie in [0, blocks]");
  std::uint64_t count = binomial_checked(spec.blocks, m);
  auto positions = static_cast<std::uint64_t>((spec.kappa + 1) / 2);
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m) * spec.paths; ++i) {
    count = checked_mul(count, positions);
  }
  return count;
}

std::vector<Labeling> enumerate_chain_labelings(const ChainFamilySpec& spec, int m) {
  std::uint64_t count = chain_labeling_count(spec, m);
  if (count > 1000000) throw input_error("labeling family too large to enumerate");

  Graph g = chain_family_graph(spec);
  int h = (spec.kappa - 1) / 2;
  auto bs = static_cast<int>(chain_block_size(spec));
  auto n = static_cast<int>(spec.n);

  std::vector<Labeling> out;
  out.reserve(count);

  // Fill one block given its entry sign; a cut position t in [0, h+1) for a
  // path cuts the edge after the t-th vertex of the hub-to-hub sequence.
  auto fill_block = [&](Labeling& f, int b, int sign, const int* cuts) {
    int base = b * bs;
    f.set(base, sign);
    f.set(base + 1, cuts ? -sign : sign);
    for (int j = 0; j < spec.paths; ++j) {
      int first = base + 2 + j * h;
      for (int s = 1; s <= h; ++s) {
        int value = cuts && s > cuts[j] ? -sign : sign;
        f.set(first + s - 1, value);
      }
    }
  };

  auto emit = [&](const std::vector<int>& chosen, const std::vector<int>& cuts) {
    Labeling f(n);
    int sign = 1;
    std::size_t next = 0;
    for (int b = 0; b < spec.blocks; ++b) {
      bool picked = next < chosen.size() && chosen[next] == b;
      fill_block(f, b, sign, picked ? cuts.data() + next * spec.paths : nullptr);
      if (picked) {
        sign = -sign;
        ++next;
      }
    }
    for (int v = spec.blocks * bs; v < n; ++v) f.set(v, sign);

    CutStructure cs = cut_structure(g, f);
    bool ok = cs.m() == m &&
              cs.cut.size() == static_cast<std::size_t>(m) * spec.paths &&
              (m == 0 || kappa_star(g, f) <= spec.kappa);
    if (!ok) throw std::logic_error("enumerated chain labeling failed validation");
    out.push_back(std::move(f));
  };

  std::vector<int> chosen(m);
  for (int i = 0; i < m; ++i) chosen[i] = i;
  int positions = h + 1;
  while (true) {
    std::vector<int> cuts(static_cast<std::size_t>(m) * spec.paths, 0);
    while (true) {
      emit(chosen, cuts);
      int digit = static_cast<int>(cuts.size()) - 1;
      while (digit >= 0 && cuts[digit] == positions - 1) cuts[digit--] = 0;
      if (digit < 0) break;
      ++cuts[digit];
    }
    // Advance the block combination in lexicographic order.
    int i = m - 1;
    while (i >= 0 && chosen[i] == spec.blocks - m + i) --i;
    if (i < 0) break;
    ++chosen[i];
    for (int j = i + 1; j < m; ++j) chosen[j] = chosen[j - 1] + 1;
  }
  return out;
}

}  // namespace s2al
