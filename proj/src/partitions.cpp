#include "twlab/partitions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "twlab/errors.hpp"

namespace twlab {

// ---------------------------------------------------------------------------
// TriPartition

TriPartition::TriPartition(VertexSet s, VertexSet a, VertexSet b)
    : s_(std::move(s)), a_(std::move(a)), b_(std::move(b)) {
  const std::size_t n = s_.universe();
  if (a_.universe() != n || b_.universe() != n) {
    throw std::invalid_argument("malformed partition: sets over different universes");
  }
  if (s_.intersects(a_) || s_.intersects(b_) || a_.intersects(b_)) {
    throw std::invalid_argument("malformed partition: S, A, B are not pairwise disjoint");
  }
  if (s_.size() + a_.size() + b_.size() != n) {
    throw std::invalid_argument("malformed partition: S, A, B do not cover all vertices");
  }
  if (b_.size() < a_.size()) std::swap(a_, b_);
}

TriPartition TriPartition::contiguous(std::size_t separator, std::size_t a_size, std::size_t b_size) {
  const std::size_t n = separator + a_size + b_size;
  VertexSet s(n), a(n), b(n);
  Vertex v = 0;
  for (std::size_t i = 0; i < separator; ++i) s.insert(v++);
  for (std::size_t i = 0; i < a_size; ++i) a.insert(v++);
  for (std::size_t i = 0; i < b_size; ++i) b.insert(v++);
  return TriPartition(std::move(s), std::move(a), std::move(b));
}

WeightedCountParams::WeightedCountParams(std::size_t d_value) : d(d_value) {
  if (d < 2) throw std::invalid_argument("weighted count needs d >= 2 (epsilon = 1/(d-1))");
}

double WeightedCountParams::weight(std::size_t size) const {
  return 1.0 - static_cast<double>(size - 1) * epsilon();
}

// ---------------------------------------------------------------------------
// Predicates

BalanceBounds balance_bounds(std::size_t n, std::size_t l) {
  if (l + 1 > n) throw std::invalid_argument("separator size l+1 exceeds n");
  const std::size_t r = n - l - 1;
  return {(r + 2) / 3, (2 * r) / 3};
}

bool is_balanced(const TriPartition& w, std::size_t l) {
  if (w.s().size() != l + 1) {
    throw std::invalid_argument("|S|=" + std::to_string(w.s().size()) + " but l+1=" + std::to_string(l + 1));
  }
  const auto [lo, hi] = balance_bounds(w.num_vertices(), l);
  const std::size_t a = w.a().size();
  const std::size_t b = w.b().size();
  return lo <= a && a <= hi && lo <= b && b <= hi;
}

bool is_l_partition(const SimpleGraph& g, const TriPartition& w) {
  if (w.num_vertices() != g.num_vertices()) {
    throw std::invalid_argument("partition and graph disagree on vertex count");
  }
  for (const Edge& e : g.edges()) {
    if ((w.a().contains(e.u) && w.b().contains(e.v)) || (w.b().contains(e.u) && w.a().contains(e.v))) {
      return false;
    }
  }
  return true;
}

bool is_d_rigid(const SimpleGraph& g, const TriPartition& w, std::size_t d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (w.b().size() <= w.a().size() + d) return false;
  const InducedSubgraph sub = induced_subgraph(g, w.b());
  for (const auto& comp : connected_components(sub.graph)) {
    if (comp.size() <= d) return false;
  }
  return true;
}

TriPartition rigidify(const SimpleGraph& g, const TriPartition& w, std::size_t d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (w.s().empty()) throw std::invalid_argument("rigidify needs a nonempty separator");
  if (!is_balanced(w, w.s().size() - 1) || !is_l_partition(g, w)) {
    throw std::invalid_argument("rigidify needs a balanced l-partition");
  }
  TriPartition current = w;
  while (current.b().size() > current.a().size() + d) {
    const InducedSubgraph sub = induced_subgraph(g, current.b());
    const VertexSet* smallest = nullptr;
    const auto comps = connected_components(sub.graph);
    // Components come ordered by lowest vertex, so the first of minimum size wins ties.
    for (const auto& comp : comps) {
      if (comp.size() <= d && (smallest == nullptr || comp.size() < smallest->size())) smallest = &comp;
    }
    if (smallest == nullptr) break;
    VertexSet moved(g.num_vertices());
    for (Vertex v : smallest->members()) moved.insert(sub.original[v]);
    current = TriPartition(current.s(), current.a() | moved, current.b() - moved);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Weighted tree-component count

double weighted_count_I(const SimpleGraph& g, const VertexSet& b, const WeightedCountParams& p) {
  const InducedSubgraph sub = induced_subgraph(g, b);
  double total = 0.0;
  for (const auto& comp : tree_components_up_to(sub.graph, p.d)) total += p.weight(comp.size());
  return total;
}

double weighted_count_I(const MultiGraph& g, const VertexSet& b, const WeightedCountParams& p) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&parent](Vertex v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const Edge& e : g.draws()) {
    if (b.contains(e.u) && b.contains(e.v)) parent[find(e.u)] = find(e.v);
  }
  std::vector<std::size_t> size(n, 0), draws(n, 0);
  for (Vertex v : b.members()) {
    if (v >= n) throw std::invalid_argument("vertex set exceeds graph");
    ++size[find(v)];
  }
  for (const Edge& e : g.draws()) {
    if (b.contains(e.u) && b.contains(e.v)) ++draws[find(e.u)];
  }
  double total = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    if (size[v] != 0 && size[v] <= p.d && draws[v] + 1 == size[v]) total += p.weight(size[v]);
  }
  return total;
}

double edge_swap_delta(const SimpleGraph& g, const VertexSet& b, const WeightedCountParams& p,
                       Edge remove, Edge add) {
  if (!g.has_edge(remove.u, remove.v)) throw std::invalid_argument("edge to remove is not in the graph");
  if (add.u == add.v || add.v >= g.num_vertices()) throw std::invalid_argument("edge to add is not a valid pair");
  std::vector<Edge> edges;
  edges.reserve(g.num_edges() + 1);
  for (const Edge& e : g.edges()) {
    if (e != remove) edges.push_back(e);
  }
  if (std::find(edges.begin(), edges.end(), add) == edges.end()) edges.push_back(add);
  const SimpleGraph swapped(g.num_vertices(), std::move(edges));
  return weighted_count_I(swapped, b, p) - weighted_count_I(g, b, p);
}

// ---------------------------------------------------------------------------
// Exhaustive partition search

namespace {

constexpr std::size_t kMaxMaskVertices = 64;

std::vector<std::uint64_t> adjacency_masks(const SimpleGraph& g) {
  std::vector<std::uint64_t> adj(g.num_vertices(), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  return adj;
}

// Components of G[rest], ordered by lowest vertex.
std::vector<std::uint64_t> mask_components(const std::vector<std::uint64_t>& adj, std::uint64_t rest) {
  std::vector<std::uint64_t> comps;
  while (rest != 0) {
    std::uint64_t comp = rest & (~rest + 1);
    std::uint64_t frontier = comp;
    while (frontier != 0) {
      std::uint64_t reach = 0;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1) reach |= adj[static_cast<std::size_t>(std::countr_zero(f))];
      frontier = reach & rest & ~comp;
      comp |= frontier;
    }
    comps.push_back(comp);
    rest &= ~comp;
  }
  return comps;
}

VertexSet to_vertex_set(std::size_t n, std::uint64_t mask) {
  VertexSet s(n);
  for (; mask != 0; mask &= mask - 1) s.insert(static_cast<Vertex>(std::countr_zero(mask)));
  return s;
}

void check_search(std::size_t n, std::size_t l, const SearchLimits& limits) {
  if (l + 1 > n) throw std::invalid_argument("separator size l+1 exceeds n");
  if (n > kMaxMaskVertices) {
    throw ResourceLimitError("exhaustive partition search is limited to n <= 64 (n=" + std::to_string(n) + ")");
  }
  const double work = partition_search_work(n, l);
  if (work > limits.max_work) {
    std::ostringstream msg;
    msg << "exhaustive partition search needs C(n,l+1)*2^(n-l-1) = " << work << " steps, cap is "
        << limits.max_work;
    throw ResourceLimitError(msg.str());
  }
}

// Calls visit(S, A, B) for every balanced l-partition (each unordered split
// once) until visit returns false.
template <typename Visit>
void for_each_balanced_partition(const SimpleGraph& g, std::size_t l, Visit&& visit) {
  const std::size_t n = g.num_vertices();
  const auto adj = adjacency_masks(g);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  const auto [lo, hi] = balance_bounds(n, l);
  const std::size_t r = n - l - 1;
  const std::size_t k = l + 1;

  std::uint64_t s = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  for (;;) {
    const std::uint64_t rest = all & ~s;
    const auto comps = mask_components(adj, rest);
    std::vector<std::size_t> sizes(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) sizes[i] = static_cast<std::size_t>(std::popcount(comps[i]));
    const std::uint64_t subsets = std::uint64_t{1} << comps.size();
    for (std::uint64_t sub = 0; sub < subsets; ++sub) {
      std::size_t b_size = 0;
      for (std::uint64_t t = sub; t != 0; t &= t - 1) b_size += sizes[static_cast<std::size_t>(std::countr_zero(t))];
      const std::size_t a_size = r - b_size;
      if (b_size < a_size || a_size < lo || b_size > hi) continue;
      // Equal split: the component holding the lowest free vertex goes to A.
      if (b_size == a_size && (sub & 1u) != 0) continue;
      std::uint64_t b_mask = 0;
      for (std::uint64_t t = sub; t != 0; t &= t - 1) b_mask |= comps[static_cast<std::size_t>(std::countr_zero(t))];
      if (!visit(s, rest & ~b_mask, b_mask, sub, comps, sizes)) return;
    }
    if (k == 0 || k == n) return;
    // Gosper's hack: next mask with the same popcount.
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t next = s + c;
    if (next == 0 || (next & ~all) != 0) return;
    s = (((next ^ s) >> 2) / c) | next;
    if ((s & ~all) != 0) return;
  }
}

}  // namespace

double partition_search_work(std::size_t n, std::size_t l) {
  if (l + 1 > n) return 0.0;
  const double k = static_cast<double>(l + 1);
  const double nn = static_cast<double>(n);
  const double log_binom = std::lgamma(nn + 1) - std::lgamma(k + 1) - std::lgamma(nn - k + 1);
  return std::exp(log_binom + (nn - k) * std::log(2.0));
}

PartitionCounts count_balanced_partitions(const SimpleGraph& g, std::size_t l, std::size_t d,
                                          const SearchLimits& limits) {
  check_search(g.num_vertices(), l, limits);
  PartitionCounts counts;
  for_each_balanced_partition(
      g, l,
      [&](std::uint64_t, std::uint64_t a_mask, std::uint64_t b_mask, std::uint64_t sub,
          const std::vector<std::uint64_t>&, const std::vector<std::size_t>& sizes) {
        const auto a_size = static_cast<std::size_t>(std::popcount(a_mask));
        const auto b_size = static_cast<std::size_t>(std::popcount(b_mask));
        if (b_size <= a_size + d) {
          ++counts.j1;
          return true;
        }
        for (std::uint64_t t = sub; t != 0; t &= t - 1) {
          if (sizes[static_cast<std::size_t>(std::countr_zero(t))] <= d) return true;
        }
        ++counts.j2;
        return true;
      });
  return counts;
}

std::optional<TriPartition> find_balanced_partition(const SimpleGraph& g, std::size_t l,
                                                    const SearchLimits& limits) {
  check_search(g.num_vertices(), l, limits);
  std::optional<TriPartition> found;
  const std::size_t n = g.num_vertices();
  for_each_balanced_partition(
      g, l,
      [&](std::uint64_t s, std::uint64_t a, std::uint64_t b, std::uint64_t, const std::vector<std::uint64_t>&,
          const std::vector<std::size_t>&) {
        found.emplace(to_vertex_set(n, s), to_vertex_set(n, a), to_vertex_set(n, b));
        return false;
      });
  return found;
}

// ---------------------------------------------------------------------------
// Text form

TriPartition read_partition(std::istream& in, std::size_t n) {
  std::optional<VertexSet> parts[3];
  const std::string labels = "SAB";
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto colon = line.find(':');
    const std::string label = colon == std::string::npos ? "" : line.substr(first, colon - first);
    const auto which = label.size() == 1 ? labels.find(label[0]) : std::string::npos;
    if (which == std::string::npos) throw std::invalid_argument("partition line must start with S:, A: or B:");
    if (parts[which]) throw std::invalid_argument("partition set " + label + " given twice");
    VertexSet set(n);
    std::istringstream fields(line.substr(colon + 1));
    long long v = 0;
    while (fields >> v) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::invalid_argument("partition vertex out of range");
      set.insert(static_cast<Vertex>(v));
    }
    if (!fields.eof()) throw std::invalid_argument("bad vertex in partition set " + label);
    parts[which] = std::move(set);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (!parts[i]) parts[i] = VertexSet(n);
  }
  return TriPartition(std::move(*parts[0]), std::move(*parts[1]), std::move(*parts[2]));
}

void write_partition(std::ostream& out, const TriPartition& w) {
  auto line = [&out](const char* label, const VertexSet& set) {
    out << label << ':';
    for (Vertex v : set.members()) out << ' ' << v;
    out << '\n';
  };
  line("S", w.s());
  line("A", w.a());
  line("B", w.b());
}

}  // namespace twlab
