#include "districtor/weight_engineering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "search.hpp"

namespace districtor {

std::string_view to_string(SeparationVerdict verdict) {
  switch (verdict) {
    case SeparationVerdict::kPossible: return "possible";
    case SeparationVerdict::kImpossible: return "impossible";
    case SeparationVerdict::kNoSeparatingPartition: return "no-separating-partition";
    case SeparationVerdict::kAlwaysSeparated: return "always-separated";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class PairVisitor {
 public:
  PairVisitor(VertexIndex a, VertexIndex b, double weight, double lambda, DeviationNorm p, double mean)
      : a_(a), b_(b), weight_(weight), lambda_(lambda), p_(p), mean_(mean) {}

  static constexpr bool admits(double) noexcept { return true; }

  void visit(std::span<const BlockLabel> labels, double cut, std::span<const double> block_mass) {
    const double deviation = p_.of_deviations(block_mass, mean_);
    if (labels[a_] == labels[b_]) {
      together_ = std::min(together_, combine(lambda_, cut, deviation));
    } else {
      apart_ = std::min(apart_, combine(lambda_, cut - weight_, deviation));
    }
  }

  double together() const noexcept { return together_; }
  double apart() const noexcept { return apart_; }

 private:
  VertexIndex a_;
  VertexIndex b_;
  double weight_;
  double lambda_;
  DeviationNorm p_;
  double mean_;
  double together_ = kInf;
  double apart_ = kInf;
};

}  // namespace

ForcingAnalysis force_together_threshold(const WeightedGraph& graph, std::size_t blocks, double lambda,
                                         DeviationNorm p, EdgeIndex edge, const SolveOptions& options) {
  check_lambda(lambda);
  if (lambda == 0.0) throw std::invalid_argument("edge-weight forcing needs lambda > 0");
  const auto& e = graph.edge(edge);
  const detail::SearchSpace space(graph, blocks);
  const double mean = graph.total_mass() / static_cast<double>(blocks);

  auto visitors = detail::run_search<PairVisitor>(
      space, options.workers, [&] { return PairVisitor(e.u, e.v, e.weight, lambda, p, mean); });

  double together = kInf;
  double apart = kInf;
  for (const auto& v : visitors) {
    together = std::min(together, v.together());
    apart = std::min(apart, v.apart());
  }

  ForcingAnalysis out;
  out.edge = edge;
  out.blocks = blocks;
  out.lambda = lambda;
  out.p = p;
  out.feasible_together = together < kInf;
  out.feasible_apart = apart < kInf;
  if (out.feasible_together) out.together_min = together;
  if (out.feasible_apart) out.apart_min = apart;
  if (out.feasible_together && out.feasible_apart) out.threshold = (together - apart) / lambda;
  return out;
}

SeparationAnalysis separation_feasibility(const WeightedGraph& graph, std::size_t blocks, double lambda,
                                          DeviationNorm p, EdgeIndex edge, const SolveOptions& options) {
  SeparationAnalysis out;
  out.forcing = force_together_threshold(graph, blocks, lambda, p, edge, options);
  const auto& f = out.forcing;
  if (!f.feasible_apart) {
    out.verdict = SeparationVerdict::kNoSeparatingPartition;
  } else if (!f.feasible_together) {
    out.verdict = SeparationVerdict::kAlwaysSeparated;
  } else if (*f.together_min - *f.apart_min > options.tolerance) {
    out.verdict = SeparationVerdict::kPossible;
  } else {
    out.verdict = SeparationVerdict::kImpossible;
  }
  return out;
}

std::size_t components_without(const WeightedGraph& graph, VertexIndex vertex) {
  const auto n = graph.vertex_count();
  if (vertex >= n) throw std::out_of_range("vertex index out of range");
  std::vector<bool> seen(n, false);
  seen[vertex] = true;
  std::size_t components = 0;
  for (VertexIndex start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++components;
    std::queue<VertexIndex> frontier;
    frontier.push(start);
    seen[start] = true;
    while (!frontier.empty()) {
      const auto v = frontier.front();
      frontier.pop();
      for (const auto& inc : graph.incident(v)) {
        if (!seen[inc.neighbor]) {
          seen[inc.neighbor] = true;
          frontier.push(inc.neighbor);
        }
      }
    }
  }
  return components;
}

PigeonholeVerdict isolation_pigeonhole(const WeightedGraph& graph, VertexIndex vertex, std::size_t blocks) {
  PigeonholeVerdict out;
  out.vertex = vertex;
  out.blocks = blocks;
  out.components = components_without(graph, vertex);
  // Each component can be cut into anywhere from 1 to |component| connected
  // blocks, so N - 1 blocks are reachable iff components <= N - 1 <= |V| - 1.
  out.feasible = blocks >= 1 && blocks <= graph.vertex_count() && out.components + 1 <= blocks;
  return out;
}

namespace {

Partition singleton_partition(std::size_t vertex_count, VertexIndex vertex) {
  std::vector<BlockLabel> labels(vertex_count, 0);
  labels[vertex] = 1;
  return Partition(std::move(labels));
}

WeightedGraph scale_boundary(const WeightedGraph& graph, VertexIndex vertex, double t) {
  GraphSpec spec = graph.to_spec();
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    const auto& edge = graph.edge(e);
    if (edge.u == vertex || edge.v == vertex) spec.edges[e].weight *= t;
  }
  return WeightedGraph::from_spec(spec);
}

bool contains(const std::vector<Partition>& set, const Partition& p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

}  // namespace

IsolationAnalysis isolation_analysis(const WeightedGraph& graph, VertexIndex vertex, DeviationNorm p,
                                     const SolveOptions& options) {
  if (graph.vertex_count() < 2) throw std::invalid_argument("isolation needs at least two vertices");
  if (vertex >= graph.vertex_count()) throw std::out_of_range("vertex index out of range");

  IsolationAnalysis out;
  out.vertex = vertex;
  for (const auto& inc : graph.incident(vertex)) out.boundary_weight += graph.edge(inc.edge).weight;
  out.feasible = components_without(graph, vertex) == 1;
  if (!out.feasible) return out;

  const Partition singleton = singleton_partition(graph.vertex_count(), vertex);

  // Walk points and open intervals in lambda order; by concavity of the
  // envelope the lambdas where one fixed line is minimal form one interval.
  const auto diagram = lower_envelope(graph, 2, p, options);
  std::optional<LambdaRange> range;
  auto extend = [&](double low, double high, bool closed) {
    if (!range) range = LambdaRange{low, high, closed, closed};
    range->high = high;
    range->high_closed = closed;
  };
  for (std::size_t i = 0; i < diagram.points.size(); ++i) {
    const auto& point = diagram.points[i];
    if (contains(point.minimizers, singleton)) extend(point.lambda, point.lambda, true);
    if (i < diagram.intervals.size() && contains(diagram.intervals[i].minimizers, singleton)) {
      extend(diagram.intervals[i].low, diagram.intervals[i].high, false);
    }
  }
  out.lambda_interval = range;

  auto minimal_near_one = [&](double t) {
    const auto scaled = lower_envelope(scale_boundary(graph, vertex, t), 2, p, options);
    return contains(scaled.intervals.back().minimizers, singleton);
  };

  constexpr double kCeiling = 1e15;
  constexpr double kFloor = 1e-15;
  double lo = 0.0;
  double hi = 0.0;
  if (minimal_near_one(1.0)) {
    lo = 1.0;
    hi = 2.0;
    while (minimal_near_one(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > kCeiling) {
        out.scale_threshold = std::numeric_limits<double>::infinity();
        return out;
      }
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (!minimal_near_one(lo)) {
      hi = lo;
      lo *= 0.5;
      if (lo < kFloor) {
        out.scale_threshold = 0.0;
        return out;
      }
    }
  }
  while (hi - lo > kScaleThresholdPrecision * hi) {
    const double mid = 0.5 * (lo + hi);
    (minimal_near_one(mid) ? lo : hi) = mid;
  }
  out.scale_threshold = lo;
  return out;
}

}  // namespace districtor
