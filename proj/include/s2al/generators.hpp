#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "s2al/graph.hpp"
#include "s2al/oracle.hpp"
#include "s2al/rng.hpp"

namespace s2al {

/// 4-neighbor grid, row-major vertex ids (id = row * cols + col).
Graph grid_graph(int rows, int cols);

/// +1 on columns < split_col, -1 on the rest. split_col in [0, cols].
Labeling half_split_labeling(int rows, int cols, int split_col);

/// side x side grid with a +1 core square of core_side centered in it. Each
/// cell on the core's outermost ring leaves the core independently with
/// probability dither_prob. Draws are rejected until the labeling has exactly
/// two homogeneous components; gives up after 10^4 attempts.
std::pair<Graph, Labeling> dithered_core(int side, int core_side, double dither_prob,
                                         std::uint64_t seed);

/// Coordinate bookkeeping for the w^d lattice over [0,1]^d. Vertex v owns the
/// axis-aligned cell [c_a/w, (c_a+1)/w] per axis, where c = coords(v).
struct LatticeGeometry {
  int w = 0;
  int d = 0;

  std::int64_t vertex_count() const;
  std::vector<int> coords(std::int64_t v) const;
  std::int64_t vertex_at(std::span<const int> coords) const;
  double cell_low(int coord) const { return static_cast<double>(coord) / w; }
  double cell_high(int coord) const { return static_cast<double>(coord + 1) / w; }
  double cell_volume() const;
};

struct LatticeGraph {
  Graph graph;
  LatticeGeometry geometry;
};

/// w^d vertices, edges between coordinate neighbors (2d-regular interior).
LatticeGraph lattice_graph(int w, int d);

/// Axis-aligned positive region with a constant label-noise margin: points
/// inside the box lean +1, outside lean -1, both by probability 0.5 + margin.
struct GeometricTruth {
  std::vector<std::pair<double, double>> box;  // [a_i, b_i] per axis
  double margin = 0.25;

  int dim() const { return static_cast<int>(box.size()); }
  double volume() const;
  bool contains(std::span<const double> point) const;
  /// Volume of the intersection of v's cell with the box.
  double cell_overlap(const LatticeGeometry& geom, std::int64_t v) const;
};

void validate(const GeometricTruth& truth);

/// Majority label of each cell: +1 when at least half the cell lies in the
/// box. This is the Bayes-optimal labeling at the lattice resolution.
Labeling lattice_truth_labeling(const LatticeGeometry& geom, const GeometricTruth& truth);

/// Query draws a uniform point from the vertex's cell and returns the region
/// indicator flipped with probability exactly 0.5 - margin.
class GeometricOracle final : public LabelOracle {
 public:
  GeometricOracle(GeometricTruth truth, LatticeGeometry geom, std::uint64_t seed);

  int query(int v) override;
  int vertex_count() const override { return static_cast<int>(geom_.vertex_count()); }
  std::uint64_t query_count() const override { return queries_; }

 private:
  GeometricTruth truth_;
  LatticeGeometry geom_;
  Rng rng_;
  std::uint64_t queries_ = 0;
};

struct ChainFamilySpec {
  int paths = 1;   // r: vertex-disjoint paths per block
  int kappa = 3;   // k: odd, (k-1)/2 internal vertices per path
  int blocks = 1;  // p
  std::int64_t n = 0;  // total vertices; surplus becomes an attached clique
};

/// Vertices taken by one block: r(k-1)/2 internals plus two hubs.
std::int64_t chain_block_size(const ChainFamilySpec& spec);

/// p blocks of two hubs joined by r internally disjoint paths, consecutive
/// blocks linked hub to hub, leftover vertices forming a clique hung off the
/// last hub by a single edge.
Graph chain_family_graph(const ChainFamilySpec& spec);

/// C(p, m) * ((k+1)/2)^(m*r); throws infeasible_error on uint64 overflow.
std::uint64_t chain_labeling_count(const ChainFamilySpec& spec, int m);

/// All labelings that cut every path of m chosen blocks exactly once, with
/// the leftmost vertex labeled +1. Requires chain_labeling_count <= 10^6.
std::vector<Labeling> enumerate_chain_labelings(const ChainFamilySpec& spec, int m);

}  // namespace s2al
