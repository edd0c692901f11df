#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twlab/graph.hpp"
#include "twlab/partitions.hpp"

namespace twlab {

/// Bags (each a sorted vertex list) joined by tree edges over bag indices.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

  /// Largest bag size minus one, and 0 for a decomposition without vertices.
  int width() const;
};

struct TreewidthResult {
  int width = 0;
  TreeDecomposition decomposition;
};

struct ExactOptions {
  std::size_t max_vertices = 20;
};

enum class EliminationRule { min_degree, min_fill };

/// Exact treewidth by dynamic programming over vertex subsets.
/// Throws ResourceLimitError above `options.max_vertices`.
TreewidthResult exact_treewidth(const SimpleGraph& g, const ExactOptions& options = {});

/// Greedy elimination; ties go to the lowest vertex index.
TreewidthResult heuristic_upper(const SimpleGraph& g, EliminationRule rule);
std::vector<Vertex> greedy_elimination_order(const SimpleGraph& g, EliminationRule rule);

/// Decomposition whose bags are {v} plus v's later neighbours in the graph
/// filled in by eliminating `order` front to back.
TreeDecomposition decomposition_from_order(const SimpleGraph& g, const std::vector<Vertex>& order);

struct DecompositionCheck {
  bool valid = false;
  int width = 0;
  /// First violated axiom: "tree-structure", "bag-range", "vertex-coverage",
  /// "edge-coverage" or "connectivity".
  std::optional<std::string> violation;
};

DecompositionCheck validate_decomposition(const SimpleGraph& g, const TreeDecomposition& td);

int lower_bound_degeneracy(const SimpleGraph& g);

/// Result of the exhaustive separator search for a given l (> 4).
/// `witness` is empty when no balanced l-partition exists, which certifies
/// tw(g) > l.
struct SeparatorCertificate {
  std::optional<TriPartition> witness;
  bool certifies_above() const { return !witness.has_value(); }
};

SeparatorCertificate lower_bound_separator(const SimpleGraph& g, std::size_t l, const SearchLimits& limits = {});

// Text form: `bag <id>: v1 v2 ...` lines, then `td-edge <id1> <id2>` lines.
void write_decomposition(std::ostream& out, const TreeDecomposition& td);
TreeDecomposition read_decomposition(std::istream& in);

}  // namespace twlab
