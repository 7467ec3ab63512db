#include "districtor/refinement.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace districtor {

bool is_j_refining(const Partition& fine, const Partition& coarse, std::size_t j) {
  if (fine.vertex_count() != coarse.vertex_count()) {
    throw std::invalid_argument("partitions cover different vertex sets");
  }
  if (j == 0 || fine.block_count() != j * coarse.block_count()) {
    throw std::invalid_argument("fine partition must have j times as many blocks as the coarse one");
  }
  // Containment: all vertices of a fine block share one coarse block.
  std::vector<std::optional<BlockLabel>> parent(fine.block_count());
  for (VertexIndex v = 0; v < fine.vertex_count(); ++v) {
    auto& slot = parent[fine.block_of(v)];
    if (!slot) {
      slot = coarse.block_of(v);
    } else if (*slot != coarse.block_of(v)) {
      return false;
    }
  }
  std::vector<std::size_t> children(coarse.block_count(), 0);
  for (const auto& slot : parent) ++children[*slot];
  return std::all_of(children.begin(), children.end(), [j](std::size_t c) { return c == j; });
}

RefinementReport refinement_gap(const WeightedGraph& graph, std::size_t blocks, std::size_t j, double lambda,
                                DeviationNorm p, const SolveOptions& options) {
  if (blocks < 1 || j < 1 || j * blocks > graph.vertex_count()) {
    throw std::invalid_argument("refinement needs N >= 1, j >= 1 and j * N <= |V|");
  }
  RefinementReport report;
  report.blocks = blocks;
  report.j = j;
  report.lambda = lambda;
  report.p = p;
  report.coarse = minimize(graph, blocks, lambda, p, options);
  report.fine = minimize(graph, j * blocks, lambda, p, options);

  for (const auto& c : report.coarse.minimizers) {
    const auto parts = c.partition.blocks();
    const bool ok = std::all_of(parts.begin(), parts.end(), [j](const auto& b) { return b.size() >= j; });
    report.eligibility.push_back({c.partition, ok});
  }

  for (const auto& f : report.fine.minimizers) {
    for (const auto& c : report.coarse.minimizers) {
      if (!is_j_refining(f.partition, c.partition, j)) continue;
      RefiningPair pair{f.partition, c.partition, {}, true};
      const auto coarse_blocks = c.partition.blocks();
      for (std::size_t b = 0; b < coarse_blocks.size(); ++b) {
        const auto& vertices = coarse_blocks[b];
        const auto sub = graph.induced_subgraph(vertices);
        std::vector<BlockLabel> local;
        local.reserve(vertices.size());
        for (auto v : vertices) local.push_back(f.partition.block_of(v));
        Partition induced(std::move(local));
        const auto best = minimize(sub, j, lambda, p, options);
        const auto energy = total_energy(sub, induced, lambda, p);
        InducedBlockCheck check{static_cast<BlockLabel>(b), vertices, induced, energy.total,
                                best.optimal_value, best.partitions(), best.contains(induced)};
        pair.induced_minimality = pair.induced_minimality && check.minimal;
        pair.blocks.push_back(std::move(check));
      }
      report.refining_pairs.push_back(std::move(pair));
    }
  }
  return report;
}

}  // namespace districtor
