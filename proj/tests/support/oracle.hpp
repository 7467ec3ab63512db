#pragma once

// Test-side reference implementations. Nothing here uses the search engine:
// partitions come from plain assignment enumeration and energies are
// recomputed from scratch.

#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "districtor/graph.hpp"

namespace districtor::testing {

using Rng = std::mt19937_64;
using Labels = std::vector<std::uint32_t>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct GraphShape {
  std::size_t min_vertices = 3;
  std::size_t max_vertices = 7;
  double min_weight = 0.5;
  double max_weight = 10.0;
  /// Chance of each non-tree pair becoming an edge.
  double extra_edge_probability = 0.3;
  /// Round masses and weights to this many decimals (negative: no rounding).
  int decimals = -1;
};

/// Random spanning tree over a shuffled vertex order plus random extra edges.
WeightedGraph random_connected_graph(Rng& rng, const GraphShape& shape = {});

/// Every labelling of the vertices with exactly `blocks` labels whose blocks
/// are connected, in restricted-growth form, found by trying all
/// blocks^|V| assignments.
std::set<Labels> naive_partitions(const WeightedGraph& graph, std::size_t blocks);

bool naive_block_connected(const WeightedGraph& graph, const Labels& labels, std::uint32_t block);

struct NaiveEnergy {
  double cut;
  double deviation;
};

/// p == kInf selects the max norm.
NaiveEnergy naive_energy(const WeightedGraph& graph, const Labels& labels, double p);

struct NaiveArgmin {
  double value = kInf;
  std::set<Labels> minimizers;
};

NaiveArgmin naive_argmin(const WeightedGraph& graph, std::size_t blocks, double lambda, double p,
                         double tol = kDefaultTolerance);

Labels canonical(const Labels& labels);

}  // namespace districtor::testing
