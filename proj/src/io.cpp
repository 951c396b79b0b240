#include "s2al/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "s2al/errors.hpp"

namespace s2al {
namespace {

// Pulls the next line that still has content after comment stripping.
// Returns false at end of stream.
bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void bad_line(const char* what, std::size_t lineno) {
  throw input_error(std::string(what) + " at line " + std::to_string(lineno));
}

long parse_long(std::istringstream& ss, const char* what, std::size_t lineno) {
  long value = 0;
  if (!(ss >> value)) bad_line(what, lineno);
  return value;
}

void expect_line_end(std::istringstream& ss, std::size_t lineno) {
  std::string rest;
  if (ss >> rest) bad_line("trailing tokens", lineno);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write file: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read file: " + path);
  return in;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw input_error("empty edge-list input");
  std::istringstream header(line);
  long n = parse_long(header, "malformed header", lineno);
  long m = parse_long(header, "malformed header", lineno);
  expect_line_end(header, lineno);
  if (n < 0 || m < 0) bad_line("negative counts in header", lineno);

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, lineno)) throw input_error("edge list ends early: expected " + std::to_string(m) + " edges");
    std::istringstream ss(line);
    long u = parse_long(ss, "malformed edge", lineno);
    long v = parse_long(ss, "malformed edge", lineno);
    expect_line_end(ss, lineno);
    if (u >= v) bad_line("edge must satisfy u < v", lineno);
    if (u < 0 || v >= n) bad_line("edge endpoint out of range", lineno);
    edges.push_back(Edge{static_cast<int>(u), static_cast<int>(v)});
  }
  if (next_content_line(in, line, lineno)) bad_line("unexpected content after edge list", lineno);
  return Graph(static_cast<int>(n), edges);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Labeling read_labels(std::istream& in, int n) {
  Labeling l(n);
  std::string line;
  std::size_t lineno = 0;
  while (next_content_line(in, line, lineno)) {
    std::istringstream ss(line);
    long v = parse_long(ss, "malformed label line", lineno);
    std::string tok;
    if (!(ss >> tok)) bad_line("malformed label line", lineno);
    expect_line_end(ss, lineno);
    int label;
    if (tok == "+1")
      label = 1;
    else if (tok == "-1")
      label = -1;
    else
      bad_line("label must be +1 or -1", lineno);
    if (v < 0 || v >= n) bad_line("labeled vertex out of range", lineno);
    if (l.has(static_cast<int>(v))) bad_line("vertex labeled twice", lineno);
    l.set(static_cast<int>(v), label);
  }
  return l;
}

void write_labels(const Labeling& l, std::ostream& out) {
  for (int v : l.assigned_vertices()) out << v << ' ' << (l.label(v) > 0 ? "+1" : "-1") << '\n';
}

Graph read_edge_list_file(const std::string& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  auto out = open_out(path);
  write_edge_list(g, out);
}

Labeling read_labels_file(const std::string& path, int n) {
  auto in = open_in(path);
  return read_labels(in, n);
}

void write_labels_file(const Labeling& l, const std::string& path) {
  auto out = open_out(path);
  write_labels(l, out);
}

}  // namespace s2al
