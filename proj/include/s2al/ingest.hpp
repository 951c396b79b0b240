#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "s2al/graph.hpp"

namespace s2al {

struct FeatureMatrix {
  int rows = 0;
  int cols = 0;                // feature dimensions, class column excluded
  std::vector<double> data;    // row-major, rows * cols entries
  std::vector<int> classes;    // empty, or one entry per row

  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  bool has_classes() const { return !classes.empty(); }
};

/// Comma-separated reals, one item per row. A first line with any
/// non-numeric cell is skipped as a header. With last_column_class the final
/// column is read as an integer class instead of a feature.
FeatureMatrix read_features_csv(std::istream& in, bool last_column_class);
FeatureMatrix read_features_csv_file(const std::string& path, bool last_column_class);

/// Two distinct class values become labels: the larger value maps to +1.
/// A single class value maps every row to +1.
Labeling class_labels(const FeatureMatrix& features);

/// Edge {i, j} when j is among i's k nearest rows by Euclidean distance or
/// vice versa. Equal distances are ranked by lower row index.
Graph knn_graph(const FeatureMatrix& features, int k);

/// Edge {i, j} when the Euclidean distance is at most t.
Graph threshold_graph(const FeatureMatrix& features, double t);

struct ExtractedComponent {
  Graph graph;
  std::vector<int> original_ids;  // ascending; position = new vertex id
};

/// Largest connected component, re-indexed to 0..size-1 preserving vertex
/// order. Size ties keep the component containing the smallest original id.
ExtractedComponent largest_component(const Graph& g);

/// Restriction of a labeling to the listed original ids.
Labeling subset_labels(const Labeling& f, std::span<const int> original_ids);

}  // namespace s2al
