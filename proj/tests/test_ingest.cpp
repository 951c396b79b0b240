#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "s2al/errors.hpp"
#include "s2al/graph.hpp"
#include "s2al/ingest.hpp"

using namespace s2al;

namespace {

FeatureMatrix features_from(const char* text, bool last_column_class = false) {
  std::istringstream in(text);
  return read_features_csv(in, last_column_class);
}

// Rows at fixed 1-d positions make neighbor ranks easy to reason about.
FeatureMatrix line_points(std::vector<double> xs) {
  FeatureMatrix fm;
  fm.rows = static_cast<int>(xs.size());
  fm.cols = 1;
  fm.data = std::move(xs);
  return fm;
}

}  // namespace

TEST_CASE("csv reader parses plain numeric tables") {
  FeatureMatrix fm = features_from("1.5,2\n-3,0.25\n0,1e2\n");
  CHECK(fm.rows == 3);
  CHECK(fm.cols == 2);
  CHECK_FALSE(fm.has_classes());
  CHECK(fm.at(0, 0) == doctest::Approx(1.5));
  CHECK(fm.at(1, 0) == doctest::Approx(-3.0));
  CHECK(fm.at(2, 1) == doctest::Approx(100.0));
}

TEST_CASE("csv reader skips a header and blank lines") {
  FeatureMatrix fm = features_from("x, y\n\n1,2\n\n3,4\n");
  CHECK(fm.rows == 2);
  CHECK(fm.at(1, 1) == doctest::Approx(4.0));
  // A second non-numeric line is data corruption, not a header.
  CHECK_THROWS_AS(features_from("x,y\n1,2\noops,4\n"), input_error);
}

TEST_CASE("csv reader separates the class column on request") {
  FeatureMatrix fm = features_from("0.5,1.5,7\n2.5,3.5,9\n", true);
  CHECK(fm.rows == 2);
  CHECK(fm.cols == 2);
  CHECK(fm.classes == std::vector<int>{7, 9});
  // Class cells must be integers.
  CHECK_THROWS_AS(features_from("0.5,1.5,7.5\n", true), input_error);
}

TEST_CASE("csv reader rejects malformed tables") {
  CHECK_THROWS_AS(features_from(""), input_error);
  CHECK_THROWS_AS(features_from("# nothing\n"), input_error);   // non-numeric only line
  CHECK_THROWS_AS(features_from("1,2\n3\n"), input_error);      // ragged
  CHECK_THROWS_AS(features_from("1,2\n3,4,5\n"), input_error);  // ragged the other way
  CHECK_THROWS_AS(features_from("1,2\n3,inf\n"), input_error);  // non-finite
  CHECK_THROWS_AS(features_from("1,2\n3,nan\n"), input_error);
  CHECK_THROWS_AS(features_from("5,3\n1,\n"), input_error);     // empty cell
  std::istringstream only_class("7\n9\n");
  CHECK_THROWS_AS(read_features_csv(only_class, true), input_error);  // no feature columns
  CHECK_THROWS_AS(read_features_csv_file("/nonexistent/points.csv", false), input_error);
}

TEST_CASE("class labels map the larger class value to +1") {
  FeatureMatrix fm = features_from("0,1\n0,2\n0,1\n", true);
  Labeling f = class_labels(fm);
  CHECK(f.label(0) == -1);
  CHECK(f.label(1) == 1);
  CHECK(f.label(2) == -1);

  FeatureMatrix negatives = features_from("0,-5\n0,3\n", true);
  Labeling g = class_labels(negatives);
  CHECK(g.label(0) == -1);
  CHECK(g.label(1) == 1);

  FeatureMatrix single = features_from("0,4\n1,4\n", true);
  Labeling h = class_labels(single);
  CHECK(h == Labeling::constant(2, 1));

  FeatureMatrix three = features_from("0,1\n0,2\n0,3\n", true);
  CHECK_THROWS_AS(class_labels(three), input_error);
  CHECK_THROWS_AS(class_labels(features_from("1,2\n")), input_error);  // no class column
}

TEST_CASE("knn graph joins mutual and one-sided nearest neighbors") {
  // Points at 0, 1, 2.5: with k = 1, 0 and 1 pick each other and 2.5
  // picks 1, so the result is the path 0-1-2.
  FeatureMatrix fm = line_points({0.0, 1.0, 2.5});
  Graph g = knn_graph(fm, 1);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});

  // k >= n - 1 gives the complete graph.
  Graph complete = knn_graph(fm, 2);
  CHECK(complete.edge_count() == 3);
  Graph clamped = knn_graph(fm, 10);
  CHECK(clamped.edge_count() == 3);

  CHECK_THROWS_AS(knn_graph(fm, 0), input_error);
}

TEST_CASE("knn edge sets grow with k") {
  FeatureMatrix fm = line_points({0.0, 0.3, 1.1, 1.2, 2.9, 3.0, 3.05});
  for (int k = 2; k <= 6; ++k) {
    auto smaller = knn_graph(fm, k - 1).edges();
    auto larger = knn_graph(fm, k).edges();
    CHECK(std::includes(larger.begin(), larger.end(), smaller.begin(), smaller.end()));
  }
}

TEST_CASE("knn distance ties rank the lower row index first") {
  // Vertex 0 sees 1 and 2 at the same distance; k = 1 must take row 1.
  // The other rows pull in {0,2} (from 2) and {1,3} (from 3) one-sidedly.
  FeatureMatrix fm;
  fm.rows = 4;
  fm.cols = 2;
  fm.data = {0, 0, 1, 0, -1, 0, 5, 0};
  Graph g = knn_graph(fm, 1);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}});
}

TEST_CASE("threshold graph connects points within distance t") {
  FeatureMatrix fm = line_points({0.0, 1.0, 2.5});
  CHECK(threshold_graph(fm, 0.0).edge_count() == 0);
  CHECK(threshold_graph(fm, 1.0).edges() == std::vector<Edge>{{0, 1}});   // inclusive
  CHECK(threshold_graph(fm, 1.5).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(threshold_graph(fm, 100.0).edge_count() == 3);
  CHECK_THROWS_AS(threshold_graph(fm, -0.5), input_error);

  FeatureMatrix coincident = line_points({2.0, 2.0});
  CHECK(threshold_graph(coincident, 0.0).edges() == std::vector<Edge>{{0, 1}});
}

TEST_CASE("largest component extraction re-indexes in id order") {
  // Components {0,2,4,6} (path) and {1,3} plus isolated 5.
  Graph g(7, std::vector<Edge>{{0, 2}, {2, 4}, {4, 6}, {1, 3}});
  ExtractedComponent ex = largest_component(g);
  CHECK(ex.original_ids == std::vector<int>{0, 2, 4, 6});
  CHECK(ex.graph.vertex_count() == 4);
  CHECK(ex.graph.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
}

TEST_CASE("largest component ties keep the smallest original id") {
  Graph g(6, std::vector<Edge>{{3, 4}, {0, 1}});  // two 2-vertex components, two isolated
  ExtractedComponent ex = largest_component(g);
  CHECK(ex.original_ids == std::vector<int>{0, 1});

  CHECK_THROWS_AS(largest_component(Graph(0, std::vector<Edge>{})), input_error);
}

TEST_CASE("subset labels restrict a labeling to chosen rows") {
  Labeling f(5);
  f.set(0, 1);
  f.set(2, -1);
  f.set(4, 1);
  Labeling sub = subset_labels(f, std::vector<int>{0, 2, 3});
  CHECK(sub.size() == 3);
  CHECK(sub.label(0) == 1);
  CHECK(sub.label(1) == -1);
  CHECK_FALSE(sub.has(2));  // original vertex 3 was unlabeled
  CHECK_THROWS_AS(subset_labels(f, std::vector<int>{5}), input_error);
}
