#pragma once

#include <optional>
#include <string_view>

#include "districtor/energy.hpp"
#include "districtor/graph.hpp"
#include "districtor/lambda_analysis.hpp"
#include "districtor/solver.hpp"

namespace districtor {

/// Split of the N-partitions by whether they keep the endpoints of one edge
/// in a common block.
///
/// `together_min` is the least energy among partitions keeping the pair
/// together; it does not depend on the edge weight. Every separating partition
/// has energy lambda * g(edge) + rest, and `apart_min` is the least such rest.
/// The threshold (together_min - apart_min) / lambda is the edge weight above
/// which every minimizer keeps the pair together. At exactly the threshold the
/// two classes tie, so callers wanting a strict outcome add a margin.
struct ForcingAnalysis {
  EdgeIndex edge = 0;
  std::size_t blocks = 0;
  double lambda = 0.0;
  DeviationNorm p = DeviationNorm::finite(2.0);
  bool feasible_together = false;
  bool feasible_apart = false;
  std::optional<double> together_min;
  std::optional<double> apart_min;
  /// Present only when both classes are non-empty.
  std::optional<double> threshold;
};

/// Throws std::invalid_argument for lambda == 0 or outside [0, 1] and
/// std::out_of_range if `edge` is not an edge of the graph.
ForcingAnalysis force_together_threshold(const WeightedGraph& graph, std::size_t blocks, double lambda,
                                         DeviationNorm p, EdgeIndex edge, const SolveOptions& options = {});

enum class SeparationVerdict {
  /// A weight strictly below the threshold makes some minimizer separate the pair.
  kPossible,
  /// The threshold is not positive: no positive weight separates the pair.
  kImpossible,
  /// No N-partition separates the endpoints at all.
  kNoSeparatingPartition,
  /// No N-partition keeps them together, so every minimizer separates them.
  kAlwaysSeparated,
};

std::string_view to_string(SeparationVerdict verdict);

struct SeparationAnalysis {
  ForcingAnalysis forcing;
  SeparationVerdict verdict = SeparationVerdict::kImpossible;
};

/// A threshold within the tolerance of zero counts as non-positive.
SeparationAnalysis separation_feasibility(const WeightedGraph& graph, std::size_t blocks, double lambda,
                                          DeviationNorm p, EdgeIndex edge, const SolveOptions& options = {});

/// A set of lambda values [low, high] with each end open or closed.
struct LambdaRange {
  double low;
  double high;
  bool low_closed;
  bool high_closed;
};

/// Whether a vertex can be made a district of its own in a 2-partition by
/// shrinking the weights of its incident edges.
struct IsolationAnalysis {
  VertexIndex vertex = 0;
  double boundary_weight = 0.0;
  /// True iff removing the vertex leaves a connected graph.
  bool feasible = false;
  /// Lambdas at which {vertex, rest} is minimal with the current weights.
  /// Absent when not feasible or when it is minimal for no lambda.
  std::optional<LambdaRange> lambda_interval;
  /// Largest t such that scaling every incident edge weight by any t' <= t
  /// keeps {vertex, rest} minimal on some (lambda_bar, 1]. +inf when every
  /// scale works. Absent when not feasible.
  std::optional<double> scale_threshold;
};

/// Relative precision of the bisection behind IsolationAnalysis::scale_threshold.
inline constexpr double kScaleThresholdPrecision = 1e-6;

/// 2-partitions only. Throws std::invalid_argument when the graph has a single vertex.
IsolationAnalysis isolation_analysis(const WeightedGraph& graph, VertexIndex vertex, DeviationNorm p,
                                     const SolveOptions& options = {});

/// Component count of the graph with `vertex` removed, and whether some
/// connected N-partition has {vertex} as a block. That requires the
/// components to fit into N - 1 blocks, which fails as soon as there are N or
/// more of them.
struct PigeonholeVerdict {
  VertexIndex vertex = 0;
  std::size_t blocks = 0;
  std::size_t components = 0;
  bool feasible = false;
};

PigeonholeVerdict isolation_pigeonhole(const WeightedGraph& graph, VertexIndex vertex, std::size_t blocks);

/// Connected components of the graph minus one vertex.
std::size_t components_without(const WeightedGraph& graph, VertexIndex vertex);

}  // namespace districtor
