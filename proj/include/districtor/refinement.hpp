#pragma once

#include <vector>

#include "districtor/energy.hpp"
#include "districtor/graph.hpp"
#include "districtor/partition.hpp"
#include "districtor/solver.hpp"

namespace districtor {

/// True iff every block of `fine` lies inside a block of `coarse` and every
/// coarse block contains exactly `j` fine blocks. Throws std::invalid_argument
/// unless fine has j times as many blocks as coarse over the same vertices.
bool is_j_refining(const Partition& fine, const Partition& coarse, std::size_t j);

/// One coarse block of a refining pair, solved as a standalone j-partition
/// problem on its induced subgraph (mean mass = block mass / j).
struct InducedBlockCheck {
  BlockLabel coarse_block;
  std::vector<VertexIndex> vertices;
  /// The fine blocks inside this coarse block, as a partition of the induced
  /// subgraph (vertex indices local to `vertices`).
  Partition induced;
  double induced_energy;
  double optimal_energy;
  std::vector<Partition> optimal;
  bool minimal;
};

struct RefiningPair {
  Partition fine;
  Partition coarse;
  std::vector<InducedBlockCheck> blocks;
  /// All induced j-partitions are minimal on their blocks.
  bool induced_minimality;
};

/// Whether a coarse minimizer has at least j vertices in every block, which a
/// j-refining needs.
struct CoarseEligibility {
  Partition coarse;
  bool every_block_has_j_vertices;
};

struct RefinementReport {
  std::size_t blocks = 0;
  std::size_t j = 0;
  double lambda = 0.0;
  DeviationNorm p = DeviationNorm::finite(2.0);
  MinimizerSet coarse;
  MinimizerSet fine;
  std::vector<CoarseEligibility> eligibility;
  std::vector<RefiningPair> refining_pairs;
};

/// Cross-checks the minimal N-partitions against the minimal jN-partitions.
/// Throws std::invalid_argument unless 1 <= N, j and j * N <= |V|.
RefinementReport refinement_gap(const WeightedGraph& graph, std::size_t blocks, std::size_t j, double lambda,
                                 DeviationNorm p, const SolveOptions& options = {});

}  // namespace districtor
