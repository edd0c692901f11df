#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "twlab/graph.hpp"

namespace twlab {

/// Triple (S, A, B) of disjoint vertex sets covering 0..n-1 with |B| >= |A|.
/// Construction swaps A and B when needed.
class TriPartition {
 public:
  TriPartition() = default;
  /// Throws std::invalid_argument unless the sets are pairwise disjoint and
  /// cover the common universe.
  TriPartition(VertexSet s, VertexSet a, VertexSet b);

  /// S = first `separator` vertices, then A, then B, all as contiguous ranges.
  static TriPartition contiguous(std::size_t separator, std::size_t a_size, std::size_t b_size);

  const VertexSet& s() const { return s_; }
  const VertexSet& a() const { return a_; }
  const VertexSet& b() const { return b_; }
  std::size_t num_vertices() const { return s_.universe(); }

  friend bool operator==(const TriPartition&, const TriPartition&) = default;

 private:
  VertexSet s_, a_, b_;
};

struct WeightedCountParams {
  std::size_t d = 2;

  /// Throws std::invalid_argument for d < 2 (epsilon = 1/(d-1) undefined).
  explicit WeightedCountParams(std::size_t d_value);
  double epsilon() const { return 1.0 / static_cast<double>(d - 1); }
  /// Weight 1 - (size-1)*epsilon of a tree component with `size` vertices.
  double weight(std::size_t size) const;
};

/// Integer balance window [ceil(r/3), floor(2r/3)] for r = n - l - 1.
struct BalanceBounds {
  std::size_t lo = 0;
  std::size_t hi = 0;
};
BalanceBounds balance_bounds(std::size_t n, std::size_t l);

bool is_balanced(const TriPartition& w, std::size_t l);
bool is_l_partition(const SimpleGraph& g, const TriPartition& w);
bool is_d_rigid(const SimpleGraph& g, const TriPartition& w, std::size_t d);

/// Moves small components of G[B] to A until |B| <= |A| + d or the triple is
/// d-rigid. Requires a balanced l-partition with l = |S| - 1.
TriPartition rigidify(const SimpleGraph& g, const TriPartition& w, std::size_t d);

/// Weighted tree-component count of G[b]: sum over tree components U with
/// |U| <= d of 1 - (|U|-1)/(d-1).
double weighted_count_I(const SimpleGraph& g, const VertexSet& b, const WeightedCountParams& p);

/// Same count on the draw list of a multigraph. A component is a tree when it
/// holds exactly |U| - 1 draws, so a repeated draw closes a cycle. Agrees with
/// the SimpleGraph overload whenever the draws are distinct.
double weighted_count_I(const MultiGraph& g, const VertexSet& b, const WeightedCountParams& p);

/// I(g - remove + add) - I(g).
double edge_swap_delta(const SimpleGraph& g, const VertexSet& b, const WeightedCountParams& p,
                       Edge remove, Edge add);

struct PartitionCounts {
  std::uint64_t j1 = 0;  // balanced l-partitions with |B| <= |A| + d
  std::uint64_t j2 = 0;  // balanced l-partitions with |B| > |A| + d that are d-rigid
};

struct SearchLimits {
  /// Cap on C(n, l+1) * 2^(n-l-1).
  double max_work = 1e8;
};

/// Exhaustive count over every separator S of size l+1 and every split of
/// the rest into A and B. Unordered: an equal-size split is counted once.
/// Throws ResourceLimitError when the search exceeds `limits`.
PartitionCounts count_balanced_partitions(const SimpleGraph& g, std::size_t l, std::size_t d,
                                          const SearchLimits& limits = {});

/// Estimated exhaustive work C(n, l+1) * 2^(n-l-1).
double partition_search_work(std::size_t n, std::size_t l);

/// Some balanced l-partition of g, if one exists.
std::optional<TriPartition> find_balanced_partition(const SimpleGraph& g, std::size_t l,
                                                    const SearchLimits& limits = {});

// Text form: three lines `S: ...`, `A: ...`, `B: ...`.
TriPartition read_partition(std::istream& in, std::size_t n);
void write_partition(std::ostream& out, const TriPartition& w);

}  // namespace twlab
