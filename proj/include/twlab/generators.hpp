#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "twlab/graph.hpp"
#include "twlab/partitions.hpp"
#include "twlab/rng.hpp"

namespace twlab {

struct GnmParams {
  std::size_t n = 0;
  std::size_t m = 0;
};

struct RigParams {
  std::size_t n = 0;
  std::size_t universe = 1;  // |M|
  double p = 0.0;
};

struct BaParams {
  std::size_t n = 0;
  std::size_t m = 1;  // edges attached per new vertex
};

/// Pair index <-> (u, v), u < v: index = v(v-1)/2 + u.
std::uint64_t pair_index(Edge e);
Edge pair_from_index(std::uint64_t index);

/// m distinct edges, uniform over m-subsets of the C(n,2) pairs.
SimpleGraph gen_gnm(const GnmParams& p, Seed seed);

/// m independent uniform draws over the C(n,2) pairs.
MultiGraph gen_gnm_replacement(const GnmParams& p, Seed seed);

struct RigSample {
  SimpleGraph graph;
  /// element_sets[v] = sorted members of S_v within 0..universe-1.
  std::vector<std::vector<std::uint32_t>> element_sets;
};

RigSample gen_rig(const RigParams& p, Seed seed);

/// Preferential attachment from K_{m+1}. Vertex i >= m+1 draws m neighbours
/// one at a time; step j picks w with probability proportional to
/// deg_{G_{i-1}}(w) + (times w was already picked for i).
MultiGraph gen_ba(const BaParams& p, Seed seed);

/// Random k-tree on n vertices grown from K_{k+1}; every new vertex joins a
/// uniformly chosen k-clique of the current k-tree.
SimpleGraph gen_ktree(std::size_t k, std::size_t n, Seed seed);

/// Size of E_W: every pair except those joining A to B.
std::uint64_t conditional_pair_count(const TriPartition& w);

/// m draws, each uniform over E_W, with replacement. `w` must partition
/// 0..n-1.
MultiGraph gen_conditional(std::size_t n, std::size_t m, const TriPartition& w, Seed seed);

/// One draw uniform over E_W (rejection from all pairs).
Edge draw_conditional_edge(const TriPartition& w, Rng& rng);

}  // namespace twlab
