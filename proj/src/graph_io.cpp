#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "twlab/graph.hpp"

namespace twlab {

namespace {

bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

Vertex parse_vertex(const std::string& token, std::size_t line_no) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != token.size() || token.empty() || token[0] == '-' ||
      value > std::numeric_limits<Vertex>::max()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad vertex '" + token + "'");
  }
  return static_cast<Vertex>(value);
}

}  // namespace

MultiGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::vector<Edge> draws;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    if (b.empty() || (fields >> extra)) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected two fields");
    }
    if (!have_header) {
      if (a != "n") {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'n <count>' header");
      }
      n = parse_vertex(b, line_no);
      have_header = true;
      continue;
    }
    const Vertex u = parse_vertex(a, line_no);
    const Vertex v = parse_vertex(b, line_no);
    if (u >= n || v >= n) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("line " + std::to_string(line_no) + ": self-loop");
    draws.emplace_back(u, v);
  }
  if (!have_header) throw std::invalid_argument("missing 'n <count>' header");
  return MultiGraph(n, std::move(draws));
}

SimpleGraph read_simple_graph(std::istream& in) {
  MultiGraph mg = read_edge_list(in);
  return SimpleGraph(mg.num_vertices(), mg.draws());
}

void write_edge_list(std::ostream& out, const SimpleGraph& g) {
  out << "n " << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(std::ostream& out, const MultiGraph& g) {
  out << "n " << g.num_vertices() << '\n';
  for (const Edge& e : g.draws()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace twlab
