#include "twlab/treewidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "twlab/errors.hpp"

namespace twlab {

namespace {

constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();
// The subset table is indexed by 32-bit masks and holds 2^n entries.
constexpr std::size_t kExactHardCap = 28;

std::vector<std::set<Vertex>> adjacency_sets(const SimpleGraph& g) {
  std::vector<std::set<Vertex>> adj(g.num_vertices());
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  return adj;
}

// Eliminates v: its remaining neighbours become a clique, then v leaves.
void eliminate(std::vector<std::set<Vertex>>& adj, Vertex v) {
  const std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
  for (std::size_t i = 0; i < nb.size(); ++i) {
    adj[nb[i]].erase(v);
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      adj[nb[i]].insert(nb[j]);
      adj[nb[j]].insert(nb[i]);
    }
  }
  adj[v].clear();
}

std::size_t fill_in(const std::vector<std::set<Vertex>>& adj, Vertex v) {
  std::size_t missing = 0;
  for (auto it = adj[v].begin(); it != adj[v].end(); ++it) {
    for (auto jt = std::next(it); jt != adj[v].end(); ++jt) {
      if (!adj[*it].contains(*jt)) ++missing;
    }
  }
  return missing;
}

}  // namespace

int TreeDecomposition::width() const {
  std::size_t largest = 0;
  for (const auto& bag : bags) largest = std::max(largest, bag.size());
  return largest == 0 ? 0 : static_cast<int>(largest) - 1;
}

// ---------------------------------------------------------------------------
// Elimination orders and decompositions

TreeDecomposition decomposition_from_order(const SimpleGraph& g, const std::vector<Vertex>& order) {
  const std::size_t n = g.num_vertices();
  if (order.size() != n) throw std::invalid_argument("elimination order must list every vertex once");
  std::vector<std::size_t> pos(n, kNoParent);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || pos[order[i]] != kNoParent) {
      throw std::invalid_argument("elimination order must list every vertex once");
    }
    pos[order[i]] = i;
  }

  auto adj = adjacency_sets(g);
  TreeDecomposition td;
  td.bags.resize(n);
  std::vector<std::size_t> parent(n, kNoParent);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = order[i];
    auto& bag = td.bags[i];
    bag.assign(adj[v].begin(), adj[v].end());
    std::size_t first_later = kNoParent;
    for (Vertex u : bag) first_later = std::min(first_later, pos[u]);
    parent[i] = first_later;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    eliminate(adj, v);
  }
  std::size_t previous_root = kNoParent;
  for (std::size_t i = 0; i < n; ++i) {
    if (parent[i] != kNoParent) {
      td.tree_edges.emplace_back(i, parent[i]);
    } else {
      // Roots of a disconnected graph are chained; they share no vertices.
      if (previous_root != kNoParent) td.tree_edges.emplace_back(previous_root, i);
      previous_root = i;
    }
  }
  return td;
}

std::vector<Vertex> greedy_elimination_order(const SimpleGraph& g, EliminationRule rule) {
  const std::size_t n = g.num_vertices();
  auto adj = adjacency_sets(g);
  std::vector<Vertex> order;
  order.reserve(n);

  if (rule == EliminationRule::min_degree) {
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) queue.emplace(adj[v].size(), v);
    while (!queue.empty()) {
      const Vertex v = queue.begin()->second;
      queue.erase(queue.begin());
      const std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
      for (Vertex u : nb) queue.erase({adj[u].size(), u});
      eliminate(adj, v);
      for (Vertex u : nb) queue.emplace(adj[u].size(), u);
      order.push_back(v);
    }
    return order;
  }

  std::vector<bool> alive(n, true);
  for (std::size_t step = 0; step < n; ++step) {
    Vertex best = 0;
    std::size_t best_fill = std::numeric_limits<std::size_t>::max();
    for (Vertex v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      const std::size_t f = fill_in(adj, v);
      if (f < best_fill) {
        best_fill = f;
        best = v;
        if (f == 0) break;
      }
    }
    eliminate(adj, best);
    alive[best] = false;
    order.push_back(best);
  }
  return order;
}

TreewidthResult heuristic_upper(const SimpleGraph& g, EliminationRule rule) {
  TreewidthResult out;
  out.decomposition = decomposition_from_order(g, greedy_elimination_order(g, rule));
  out.width = out.decomposition.width();
  return out;
}

// ---------------------------------------------------------------------------
// Exact solver

TreewidthResult exact_treewidth(const SimpleGraph& g, const ExactOptions& options) {
  const std::size_t n = g.num_vertices();
  const std::size_t cap = std::min(options.max_vertices, kExactHardCap);
  if (n > cap) {
    throw ResourceLimitError("exact treewidth is limited to n <= " + std::to_string(cap) +
                             " vertices (graph has n=" + std::to_string(n) + ")");
  }
  if (n == 0) return {};

  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= std::uint32_t{1} << e.v;
    adj[e.v] |= std::uint32_t{1} << e.u;
  }

  // width_of[S]: best width of eliminating exactly S first; last_of[S]: the
  // vertex of S eliminated last in that best prefix.
  const std::uint32_t subsets = std::uint32_t{1} << n;
  std::vector<std::uint8_t> width_of(subsets, 0), last_of(subsets, 0);

  // Vertices outside prefix+v reachable from v through the prefix.
  auto later_neighbourhood = [&adj](std::uint32_t prefix, std::uint32_t v) {
    const std::uint32_t v_bit = std::uint32_t{1} << v;
    std::uint32_t reached = v_bit;
    std::uint32_t frontier = v_bit;
    std::uint32_t touched = 0;
    while (frontier != 0) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f != 0; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
      touched |= next;
      frontier = next & prefix & ~reached;
      reached |= frontier;
    }
    return std::popcount(touched & ~prefix & ~v_bit);
  };

  for (std::uint32_t s = 1; s < subsets; ++s) {
    int best = std::numeric_limits<int>::max();
    std::uint32_t best_v = 0;
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<std::uint32_t>(std::countr_zero(rest));
      const std::uint32_t prefix = s & ~(std::uint32_t{1} << v);
      const int before = width_of[prefix];
      if (before >= best) continue;
      const int value = std::max(before, later_neighbourhood(prefix, v));
      if (value < best) {
        best = value;
        best_v = v;
      }
    }
    width_of[s] = static_cast<std::uint8_t>(best);
    last_of[s] = static_cast<std::uint8_t>(best_v);
  }

  std::vector<Vertex> order(n);
  std::uint32_t s = subsets - 1;
  for (std::size_t i = n; i-- > 0;) {
    order[i] = last_of[s];
    s &= ~(std::uint32_t{1} << last_of[s]);
  }

  TreewidthResult out;
  out.width = width_of[subsets - 1];
  out.decomposition = decomposition_from_order(g, order);
  if (out.decomposition.width() != out.width) {
    throw std::logic_error("exact treewidth: reconstructed order does not attain the optimum");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

DecompositionCheck validate_decomposition(const SimpleGraph& g, const TreeDecomposition& td) {
  DecompositionCheck check;
  check.width = td.width();
  auto fail = [&check](const char* what) {
    check.valid = false;
    check.violation = what;
    return check;
  };

  const std::size_t bags = td.bags.size();
  const std::size_t n = g.num_vertices();
  if (bags == 0) {
    if (n != 0) return fail("vertex-coverage");
    check.valid = true;
    return check;
  }

  if (td.tree_edges.size() != bags - 1) return fail("tree-structure");
  std::vector<std::size_t> root(bags);
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&root](std::size_t x) {
    while (root[x] != x) {
      root[x] = root[root[x]];
      x = root[x];
    }
    return x;
  };
  for (const auto& [x, y] : td.tree_edges) {
    if (x >= bags || y >= bags) return fail("tree-structure");
    const std::size_t rx = find(x), ry = find(y);
    if (rx == ry) return fail("tree-structure");
    root[rx] = ry;
  }

  std::vector<std::vector<std::size_t>> holders(n);
  for (std::size_t i = 0; i < bags; ++i) {
    for (Vertex v : td.bags[i]) {
      if (v >= n) return fail("bag-range");
      if (holders[v].empty() || holders[v].back() != i) holders[v].push_back(i);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (holders[v].empty()) return fail("vertex-coverage");
  }

  std::vector<std::size_t> common;
  for (const Edge& e : g.edges()) {
    common.clear();
    std::set_intersection(holders[e.u].begin(), holders[e.u].end(), holders[e.v].begin(), holders[e.v].end(),
                          std::back_inserter(common));
    if (common.empty()) return fail("edge-coverage");
  }

  // In a tree, a vertex's bags are connected iff they span |bags(v)| - 1 tree edges.
  std::vector<std::size_t> spanned(n, 0);
  for (const auto& [x, y] : td.tree_edges) {
    for (Vertex v : td.bags[x]) {
      if (std::binary_search(holders[v].begin(), holders[v].end(), y)) ++spanned[v];
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (spanned[v] + 1 != holders[v].size()) return fail("connectivity");
  }

  check.valid = true;
  return check;
}

// ---------------------------------------------------------------------------
// Lower bounds

int lower_bound_degeneracy(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<std::size_t> degree(n);
  std::size_t max_degree = 0;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    max_degree = std::max(max_degree, degree[v]);
  }
  std::vector<std::vector<Vertex>> buckets(max_degree + 1);
  for (Vertex v = 0; v < n; ++v) buckets[degree[v]].push_back(v);
  std::vector<bool> removed(n, false);
  std::size_t best = 0;
  std::size_t low = 0;
  for (std::size_t done = 0; done < n;) {
    while (buckets[low].empty()) ++low;
    const Vertex v = buckets[low].back();
    buckets[low].pop_back();
    if (removed[v] || degree[v] != low) continue;
    removed[v] = true;
    ++done;
    best = std::max(best, low);
    for (Vertex u : g.neighbors(v)) {
      if (removed[u]) continue;
      --degree[u];
      buckets[degree[u]].push_back(u);
      low = std::min(low, degree[u]);
    }
  }
  return static_cast<int>(best);
}

SeparatorCertificate lower_bound_separator(const SimpleGraph& g, std::size_t l, const SearchLimits& limits) {
  if (l <= 4) throw std::invalid_argument("separator lower bound needs l > 4");
  return {find_balanced_partition(g, l, limits)};
}

// ---------------------------------------------------------------------------
// Text form

void write_decomposition(std::ostream& out, const TreeDecomposition& td) {
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "bag " << i << ':';
    for (Vertex v : td.bags[i]) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [x, y] : td.tree_edges) out << "td-edge " << x << ' ' << y << '\n';
}

TreeDecomposition read_decomposition(std::istream& in) {
  TreeDecomposition td;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind[0] == '#') continue;
    if (kind == "bag") {
      std::string id;
      fields >> id;
      if (id.empty() || id.back() != ':' || std::stoul(id) != td.bags.size()) {
        throw std::invalid_argument("bags must be numbered 0,1,2,... in order");
      }
      std::vector<Vertex> bag;
      long long v = 0;
      while (fields >> v) {
        if (v < 0) throw std::invalid_argument("negative vertex in bag");
        bag.push_back(static_cast<Vertex>(v));
      }
      std::sort(bag.begin(), bag.end());
      td.bags.push_back(std::move(bag));
    } else if (kind == "td-edge") {
      std::size_t x = 0, y = 0;
      if (!(fields >> x >> y)) throw std::invalid_argument("td-edge needs two bag ids");
      td.tree_edges.emplace_back(x, y);
    } else {
      throw std::invalid_argument("unknown decomposition line '" + kind + "'");
    }
  }
  return td;
}

}  // namespace twlab
