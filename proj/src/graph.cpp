#include "twlab/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace twlab {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t universe) { return (universe + kWordBits - 1) / kWordBits; }

void check_endpoint(std::size_t n, Vertex v) {
  if (v >= n) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for n=" +
                                std::to_string(n));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// VertexSet

VertexSet::VertexSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

VertexSet VertexSet::from_members(std::size_t universe, std::span<const Vertex> members) {
  VertexSet s(universe);
  for (Vertex v : members) s.insert(v);
  return s;
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  for (Vertex v = 0; v < universe; ++v) s.insert(v);
  return s;
}

bool VertexSet::contains(Vertex v) const {
  if (v >= universe_) return false;
  return (words_[v / kWordBits] >> (v % kWordBits)) & 1u;
}

void VertexSet::insert(Vertex v) {
  check_endpoint(universe_, v);
  words_[v / kWordBits] |= std::uint64_t{1} << (v % kWordBits);
}

void VertexSet::erase(Vertex v) {
  check_endpoint(universe_, v);
  words_[v / kWordBits] &= ~(std::uint64_t{1} << (v % kWordBits));
}

std::size_t VertexSet::size() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      const int bit = std::countr_zero(w);
      out.push_back(static_cast<Vertex>(i * kWordBits + static_cast<std::size_t>(bit)));
      w &= w - 1;
    }
  }
  return out;
}

void VertexSet::check_same_universe(const VertexSet& other) const {
  if (universe_ != other.universe_) {
    throw std::invalid_argument("vertex sets over different universes");
  }
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool VertexSet::intersects(const VertexSet& other) const {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// SimpleGraph

SimpleGraph::SimpleGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    check_endpoint(n_, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw std::invalid_argument("duplicate edge " + std::to_string(dup->u) + " " +
                                std::to_string(dup->v));
  }

  std::vector<std::size_t> degree(n_, 0);
  for (const Edge& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n_; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

SimpleGraph SimpleGraph::complete(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::path(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return SimpleGraph(rows * cols, std::move(edges));
}

std::span<const Vertex> SimpleGraph::neighbors(Vertex v) const {
  check_endpoint(n_, v);
  return std::span<const Vertex>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_ || u == v) return false;
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

// ---------------------------------------------------------------------------
// MultiGraph

MultiGraph::MultiGraph(std::size_t n, std::vector<Edge> draws) : n_(n), draws_(std::move(draws)) {
  for (const Edge& e : draws_) {
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    check_endpoint(n_, e.v);
  }
}

MultiGraph MultiGraph::with_draw(std::size_t i, Edge replacement) const {
  if (i >= draws_.size()) throw std::invalid_argument("draw index out of range");
  std::vector<Edge> draws = draws_;
  draws[i] = replacement;
  return MultiGraph(n_, std::move(draws));
}

// ---------------------------------------------------------------------------
// Structural queries

InducedSubgraph induced_subgraph(const SimpleGraph& g, const VertexSet& u) {
  if (u.universe() > g.num_vertices()) {
    for (Vertex v : u.members()) check_endpoint(g.num_vertices(), v);
  }
  InducedSubgraph out;
  out.original = u.members();
  std::vector<Vertex> relabel(g.num_vertices(), 0);
  for (std::size_t i = 0; i < out.original.size(); ++i) {
    relabel[out.original[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (Vertex old_u : out.original) {
    for (Vertex old_v : g.neighbors(old_u)) {
      if (old_v > old_u && u.contains(old_v)) edges.emplace_back(relabel[old_u], relabel[old_v]);
    }
  }
  out.graph = SimpleGraph(out.original.size(), std::move(edges));
  return out;
}

std::vector<VertexSet> connected_components(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> seen(n, false);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    VertexSet comp(n);
    seen[root] = true;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      comp.insert(v);
      for (Vertex w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<VertexSet> tree_components_up_to(const SimpleGraph& g, std::size_t d) {
  if (d == 0) throw std::invalid_argument("tree component size bound d must be >= 1");
  std::vector<VertexSet> out;
  for (auto& comp : connected_components(g)) {
    const std::size_t size = comp.size();
    if (size > d) continue;
    std::size_t degree_sum = 0;
    for (Vertex v : comp.members()) degree_sum += g.degree(v);
    if (degree_sum / 2 == size - 1) out.push_back(std::move(comp));
  }
  return out;
}

SimpleGraph simplify(const MultiGraph& mg) {
  std::vector<Edge> edges = mg.draws();
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return SimpleGraph(mg.num_vertices(), std::move(edges));
}

MultiGraph as_multigraph(const SimpleGraph& g) { return MultiGraph(g.num_vertices(), g.edges()); }

std::uint64_t pair_count(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace twlab
