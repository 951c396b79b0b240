#pragma once

#include <iosfwd>
#include <string>

#include "s2al/graph.hpp"

namespace s2al {

/// Edge-list text format: first line "n m", then m lines "u v" with u < v.
/// Everything after '#' on a line is a comment; blank lines are skipped.
/// ASCII decimal, LF line endings.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

/// Label file: one "v ±1" line per labeled vertex. Vertex count comes from
/// the caller (labels may be partial). Same comment rules as edge lists.
Labeling read_labels(std::istream& in, int n);
Labeling read_labels_file(const std::string& path, int n);
void write_labels(const Labeling& l, std::ostream& out);
void write_labels_file(const Labeling& l, const std::string& path);

}  // namespace s2al
