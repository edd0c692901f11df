#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace twlab {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Subset of {0..n-1} backed by a dense bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe);
  static VertexSet from_members(std::size_t universe, std::span<const Vertex> members);
  static VertexSet full(std::size_t universe);

  std::size_t universe() const { return universe_; }
  bool contains(Vertex v) const;
  void insert(Vertex v);
  void erase(Vertex v);
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// Members in increasing order.
  std::vector<Vertex> members() const;

  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator-=(const VertexSet& other);
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  bool intersects(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;

 private:
  void check_same_universe(const VertexSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Undirected simple graph on vertices 0..n-1. Immutable after construction.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range
  /// endpoints.
  SimpleGraph(std::size_t n, std::vector<Edge> edges);

  static SimpleGraph complete(std::size_t n);
  static SimpleGraph path(std::size_t n);
  static SimpleGraph cycle(std::size_t n);
  static SimpleGraph grid(std::size_t rows, std::size_t cols);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  /// Sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  /// Sorted neighbor list.
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool has_edge(Vertex u, Vertex v) const;

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

/// Multigraph as the ordered list of edge draws; parallel edges allowed,
/// self-loops are not.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(std::size_t n, std::vector<Edge> draws);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_draws() const { return draws_.size(); }
  const std::vector<Edge>& draws() const { return draws_; }

  /// Copy with draw i replaced; the single-coordinate change of the product
  /// space of draws.
  MultiGraph with_draw(std::size_t i, Edge replacement) const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> draws_;
};

struct InducedSubgraph {
  SimpleGraph graph;
  /// original[new_label] = old_label, increasing.
  std::vector<Vertex> original;
};

InducedSubgraph induced_subgraph(const SimpleGraph& g, const VertexSet& u);

/// Components ordered by their smallest vertex.
std::vector<VertexSet> connected_components(const SimpleGraph& g);

/// Components U with |U| <= d that are trees (|E(G[U])| = |U| - 1).
std::vector<VertexSet> tree_components_up_to(const SimpleGraph& g, std::size_t d);

SimpleGraph simplify(const MultiGraph& mg);
MultiGraph as_multigraph(const SimpleGraph& g);

/// Number of vertex pairs, n(n-1)/2.
std::uint64_t pair_count(std::uint64_t n);

// Edge-list text format: `n <count>` header, then one `u v` pair per line.
// Lines starting with '#' and blank lines are ignored.
MultiGraph read_edge_list(std::istream& in);
SimpleGraph read_simple_graph(std::istream& in);
void write_edge_list(std::ostream& out, const SimpleGraph& g);
void write_edge_list(std::ostream& out, const MultiGraph& g);

}  // namespace twlab
