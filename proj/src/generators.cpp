#include "twlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace twlab {

std::uint64_t pair_index(Edge e) {
  const std::uint64_t v = e.v;
  return v * (v - 1) / 2 + e.u;
}

Edge pair_from_index(std::uint64_t index) {
  auto v = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0);
  while (v > 1 && v * (v - 1) / 2 > index) --v;
  while ((v + 1) * v / 2 <= index) ++v;
  const std::uint64_t u = index - v * (v - 1) / 2;
  return Edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
}

SimpleGraph gen_gnm(const GnmParams& p, Seed seed) {
  const std::uint64_t total = pair_count(p.n);
  if (p.m > total) {
    throw std::invalid_argument("m=" + std::to_string(p.m) + " exceeds C(n,2)=" + std::to_string(total));
  }
  Rng rng(seed);
  // Floyd's sampling of an m-subset of pair indices.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(p.m * 2);
  for (std::uint64_t j = total - p.m; j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> sorted(chosen.begin(), chosen.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Edge> edges;
  edges.reserve(sorted.size());
  for (auto idx : sorted) edges.push_back(pair_from_index(idx));
  return SimpleGraph(p.n, std::move(edges));
}

MultiGraph gen_gnm_replacement(const GnmParams& p, Seed seed) {
  const std::uint64_t total = pair_count(p.n);
  if (total == 0 && p.m > 0) throw std::invalid_argument("no vertex pairs to draw from");
  Rng rng(seed);
  std::vector<Edge> draws;
  draws.reserve(p.m);
  for (std::size_t i = 0; i < p.m; ++i) draws.push_back(pair_from_index(rng.below(total)));
  return MultiGraph(p.n, std::move(draws));
}

RigSample gen_rig(const RigParams& p, Seed seed) {
  if (!(p.p >= 0.0 && p.p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  if (p.universe < 1) throw std::invalid_argument("universe size must be >= 1");
  Rng rng(seed);
  RigSample out;
  out.element_sets.resize(p.n);
  std::vector<std::vector<Vertex>> holders(p.universe);
  for (std::size_t v = 0; v < p.n; ++v) {
    for (std::size_t e = 0; e < p.universe; ++e) {
      if (rng.bernoulli(p.p)) {
        out.element_sets[v].push_back(static_cast<std::uint32_t>(e));
        holders[e].push_back(static_cast<Vertex>(v));
      }
    }
  }
  std::vector<Edge> edges;
  for (const auto& members : holders) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) edges.emplace_back(members[i], members[j]);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.graph = SimpleGraph(p.n, std::move(edges));
  return out;
}

MultiGraph gen_ba(const BaParams& p, Seed seed) {
  if (p.m < 1) throw std::invalid_argument("attachment count m must be >= 1");
  if (p.n < p.m + 1) {
    throw std::invalid_argument("n=" + std::to_string(p.n) + " must be at least m+1=" +
                                std::to_string(p.m + 1));
  }
  Rng rng(seed);
  std::vector<Edge> draws;
  // Vertex w appears deg(w) times in `endpoints`.
  std::vector<Vertex> endpoints;
  endpoints.reserve(2 * (pair_count(p.m + 1) + p.m * (p.n - p.m - 1)));
  for (Vertex u = 0; u <= p.m; ++u) {
    for (Vertex v = u + 1; v <= p.m; ++v) {
      draws.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<Vertex> picks;
  picks.reserve(p.m);
  for (auto i = static_cast<Vertex>(p.m + 1); i < p.n; ++i) {
    picks.clear();
    for (std::size_t j = 0; j < p.m; ++j) {
      const std::uint64_t idx = rng.below(endpoints.size() + picks.size());
      picks.push_back(idx < endpoints.size() ? endpoints[idx] : picks[idx - endpoints.size()]);
    }
    for (Vertex w : picks) {
      draws.emplace_back(w, i);
      endpoints.push_back(w);
      endpoints.push_back(i);
    }
  }
  return MultiGraph(p.n, std::move(draws));
}

SimpleGraph gen_ktree(std::size_t k, std::size_t n, Seed seed) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (n < k + 1) {
    throw std::invalid_argument("n=" + std::to_string(n) + " must be at least k+1=" + std::to_string(k + 1));
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u <= k; ++u) {
    for (Vertex v = u + 1; v <= k; ++v) edges.emplace_back(u, v);
  }
  // Every k-clique of the k-tree: the k-subsets of the seed clique, plus for
  // each later vertex v and each x in its attachment clique C, C - x + v.
  std::vector<std::vector<Vertex>> cliques;
  for (Vertex skip = 0; skip <= k; ++skip) {
    std::vector<Vertex> c;
    for (Vertex u = 0; u <= k; ++u) {
      if (u != skip) c.push_back(u);
    }
    cliques.push_back(std::move(c));
  }
  for (auto v = static_cast<Vertex>(k + 1); v < n; ++v) {
    const std::vector<Vertex> target = cliques[rng.below(cliques.size())];
    for (Vertex u : target) edges.emplace_back(u, v);
    for (std::size_t x = 0; x < target.size(); ++x) {
      std::vector<Vertex> c = target;
      c[x] = v;
      cliques.push_back(std::move(c));
    }
  }
  return SimpleGraph(n, std::move(edges));
}

std::uint64_t conditional_pair_count(const TriPartition& w) {
  return pair_count(w.num_vertices()) - static_cast<std::uint64_t>(w.a().size()) * w.b().size();
}

Edge draw_conditional_edge(const TriPartition& w, Rng& rng) {
  const std::uint64_t total = pair_count(w.num_vertices());
  if (conditional_pair_count(w) == 0) throw std::invalid_argument("E_W is empty");
  for (;;) {
    const Edge e = pair_from_index(rng.below(total));
    const bool crosses = (w.a().contains(e.u) && w.b().contains(e.v)) ||
                         (w.b().contains(e.u) && w.a().contains(e.v));
    if (!crosses) return e;
  }
}

MultiGraph gen_conditional(std::size_t n, std::size_t m, const TriPartition& w, Seed seed) {
  if (w.num_vertices() != n) {
    throw std::invalid_argument("partition covers " + std::to_string(w.num_vertices()) +
                                " vertices, expected " + std::to_string(n));
  }
  if (m > 0 && conditional_pair_count(w) == 0) throw std::invalid_argument("E_W is empty");
  Rng rng(seed);
  std::vector<Edge> draws;
  draws.reserve(m);
  for (std::size_t i = 0; i < m; ++i) draws.push_back(draw_conditional_edge(w, rng));
  return MultiGraph(n, std::move(draws));
}

}  // namespace twlab
