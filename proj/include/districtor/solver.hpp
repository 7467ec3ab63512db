#pragma once

#include <cstdint>
#include <vector>

#include "districtor/energy.hpp"
#include "districtor/graph.hpp"
#include "districtor/partition.hpp"

namespace districtor {

struct SolveOptions {
  /// Absolute tie tolerance on energies.
  double tolerance = kDefaultTolerance;
  /// Threads used by the search; the result does not depend on it.
  unsigned workers = 1;
};

struct Minimizer {
  Partition partition;
  double cut;
  double deviation;
  double total;
};

/// Every partition whose energy is within tolerance of the optimum, in
/// canonical order.
struct MinimizerSet {
  double optimal_value = 0.0;
  std::vector<Minimizer> minimizers;
  double lambda = 0.0;
  DeviationNorm p = DeviationNorm::finite(2.0);
  std::size_t blocks = 0;
  /// Leaves reached by the branch-and-bound search. Diagnostic only: with
  /// several workers it depends on scheduling.
  std::uint64_t partitions_examined = 0;

  bool contains(const Partition& partition) const;
  std::vector<Partition> partitions() const;
};

/// Exact minimization of lambda * cut + (1 - lambda) * deviation over all
/// connected `blocks`-partitions, returning all tied minimizers.
MinimizerSet minimize(const WeightedGraph& graph, std::size_t blocks, double lambda, DeviationNorm p,
                      const SolveOptions& options = {});

/// Minimum cut over connected partitions (lambda = 1). Deviation is still
/// reported for each minimizer, measured with `p`.
MinimizerSet minimize_cut(const WeightedGraph& graph, std::size_t blocks, const SolveOptions& options = {},
                          DeviationNorm p = DeviationNorm::finite(2.0));

/// Minimum deviation (lambda = 0).
MinimizerSet minimize_deviation(const WeightedGraph& graph, std::size_t blocks, DeviationNorm p,
                                const SolveOptions& options = {});

}  // namespace districtor
