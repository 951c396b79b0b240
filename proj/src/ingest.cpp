#include "s2al/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

#include "s2al/errors.hpp"

namespace s2al {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_int(const std::string& cell, int& out) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trimmed(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

FeatureMatrix read_features_csv(std::istream& in, bool last_column_class) {
  FeatureMatrix fm;
  std::string line;
  int line_no = 0;
  bool first_content = true;
  int expected_cells = -1;

  while (std::getline(in, line)) {
    ++line_no;
    std::string content = trimmed(line);
    if (content.empty()) continue;
    std::vector<std::string> cells = split_cells(content);
    int feature_cells = static_cast<int>(cells.size()) - (last_column_class ? 1 : 0);
    if (feature_cells < 1) {
      throw input_error("line " + std::to_string(line_no) + ": too few columns");
    }

    std::vector<double> values(cells.size());
    bool all_numeric = true;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!parse_double(cells[j], values[j])) {
        all_numeric = false;
        break;
      }
    }
    if (!all_numeric) {
      if (first_content) {
        first_content = false;  // header line
        continue;
      }
      throw input_error("line " + std::to_string(line_no) + ": non-numeric cell");
    }
    first_content = false;

    if (expected_cells < 0) {
      expected_cells = static_cast<int>(cells.size());
      fm.cols = feature_cells;
    } else if (static_cast<int>(cells.size()) != expected_cells) {
      throw input_error("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(expected_cells) + " columns, got " +
                        std::to_string(cells.size()));
    }

    for (int j = 0; j < fm.cols; ++j) {
      if (!std::isfinite(values[j])) {
        throw input_error("line " + std::to_string(line_no) + ": non-finite value");
      }
      fm.data.push_back(values[j]);
    }
    if (last_column_class) {
      int cls = 0;
      if (!parse_int(cells.back(), cls)) {
        throw input_error("line " + std::to_string(line_no) + ": class column must be integer");
      }
      fm.classes.push_back(cls);
    }
    ++fm.rows;
  }
  if (fm.rows == 0) throw input_error("feature file has no data rows");
  return fm;
}

FeatureMatrix read_features_csv_file(const std::string& path, bool last_column_class) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  return read_features_csv(in, last_column_class);
}

Labeling class_labels(const FeatureMatrix& features) {
  if (!features.has_classes()) throw input_error("feature matrix has no class column");
  std::set<int> distinct(features.classes.begin(), features.classes.end());
  if (distinct.size() > 2) {
    throw input_error("labels need at most two distinct classes, found " +
                      std::to_string(distinct.size()));
  }
  int positive = *distinct.rbegin();
  Labeling f(features.rows);
  for (int i = 0; i < features.rows; ++i) {
    f.set(i, features.classes[i] == positive ? 1 : -1);
  }
  return f;
}

namespace {

double squared_distance(const FeatureMatrix& fm, int i, int j) {
  double sum = 0.0;
  for (int a = 0; a < fm.cols; ++a) {
    double diff = fm.at(i, a) - fm.at(j, a);
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

Graph knn_graph(const FeatureMatrix& features, int k) {
  if (k < 1) throw input_error("knn_graph needs k >= 1");
  int n = features.rows;
  std::vector<Edge> edges;
  std::vector<std::pair<double, int>> order;
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) order.emplace_back(squared_distance(features, i, j), j);
    }
    int take = std::min<int>(k, n - 1);
    std::partial_sort(order.begin(), order.begin() + take, order.end());
    for (int s = 0; s < take; ++s) edges.push_back(make_edge(i, order[s].second));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, edges);
}

Graph threshold_graph(const FeatureMatrix& features, double t) {
  if (!(t >= 0.0)) throw input_error("threshold_graph needs t >= 0");
  int n = features.rows;
  double limit = t * t;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (squared_distance(features, i, j) <= limit) edges.push_back(make_edge(i, j));
    }
  }
  return Graph(n, edges);
}

ExtractedComponent largest_component(const Graph& g) {
  if (g.vertex_count() == 0) throw input_error("graph has no vertices");
  std::vector<int> comp = component_ids(g);
  int k = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<int> sizes(k, 0);
  for (int c : comp) ++sizes[c];
  // Component ids rise with their smallest vertex, so the first maximum also
  // holds the smallest original id among tied components.
  int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  ExtractedComponent out;
  std::vector<int> new_id(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (comp[v] == best) {
      new_id[v] = static_cast<int>(out.original_ids.size());
      out.original_ids.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (comp[e.u] == best) edges.push_back(make_edge(new_id[e.u], new_id[e.v]));
  }
  out.graph = Graph(static_cast<int>(out.original_ids.size()), edges);
  return out;
}

Labeling subset_labels(const Labeling& f, std::span<const int> original_ids) {
  Labeling out(static_cast<int>(original_ids.size()));
  for (std::size_t i = 0; i < original_ids.size(); ++i) {
    int v = original_ids[i];
    if (v < 0 || v >= f.size()) throw input_error("subset id out of range");
    if (f.has(v)) out.set(static_cast<int>(i), f.label(v));
  }
  return out;
}

}  // namespace s2al
