#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "districtor/fixtures.hpp"
#include "districtor/lambda_analysis.hpp"
#include "districtor/solver.hpp"
#include "districtor/weight_engineering.hpp"
#include "oracle.hpp"

using namespace districtor;
namespace dt = districtor::testing;

namespace {

constexpr double kTol = 1e-9;
const auto kP2 = DeviationNorm::finite(2);

WeightedGraph star(std::size_t leaves, double weight) {
  std::string text = "v c 1\n";
  for (std::size_t i = 0; i < leaves; ++i) text += "v l" + std::to_string(i) + " 1\n";
  for (std::size_t i = 0; i < leaves; ++i) text += "e c l" + std::to_string(i) + " " + std::to_string(weight) + "\n";
  return parse_graph(text);
}

WeightedGraph path3() { return parse_graph("v a 1\nv b 1\nv c 1\ne a b 1\ne b c 1\n"); }

bool keeps_together(const MinimizerSet& set, const WeightedGraph::Edge& e) {
  for (const auto& m : set.minimizers) {
    if (m.partition.block_of(e.u) != m.partition.block_of(e.v)) return false;
  }
  return true;
}

bool some_separates(const MinimizerSet& set, const WeightedGraph::Edge& e) {
  for (const auto& m : set.minimizers) {
    if (m.partition.block_of(e.u) != m.partition.block_of(e.v)) return true;
  }
  return false;
}

WeightedGraph scale_edges(const WeightedGraph& g, VertexIndex v, double t, bool boundary) {
  auto spec = g.to_spec();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const bool touches = g.edge(e).u == v || g.edge(e).v == v;
    if (touches == boundary) spec.edges[e].weight *= t;
  }
  return WeightedGraph::from_spec(spec);
}

// Largest t keeping the singleton minimal just below lambda = 1: it must be a
// minimum cut, so t * boundary <= rest + t * cut_boundary for every other
// 2-partition.
double closed_form_scale_threshold(const WeightedGraph& g, VertexIndex v) {
  double boundary = 0.0;
  for (const auto& inc : g.incident(v)) boundary += g.edge(inc.edge).weight;
  std::vector<BlockLabel> labels(g.vertex_count(), 0);
  labels[v] = 1;
  const Partition singleton(labels);
  double best = dt::kInf;
  for_each_partition(g, 2, [&](const Partition& part) {
    if (part == singleton) return;
    double cut_boundary = 0.0;
    double rest = 0.0;
    for (auto e : cut_set(g, part)) {
      const auto& edge = g.edge(e);
      (edge.u == v || edge.v == v ? cut_boundary : rest) += edge.weight;
    }
    const double t = rest / (boundary - cut_boundary);
    best = std::min(best, t);
  });
  return best;
}

}  // namespace

TEST_CASE("FIG3 force-together threshold at lambda = 0.8") {
  const auto f = load_fixture("FIG3");
  const auto a = force_together_threshold(f.graph, 2, 0.8, kP2, 0);
  REQUIRE(a.threshold.has_value());
  CHECK(std::abs(*a.threshold - (1 - std::sqrt(2.0) / 4)) <= kTol);
  CHECK(std::abs(*a.together_min - (0.8 + 0.2 * std::sqrt(2.0))) <= kTol);
  CHECK(std::abs(*a.apart_min - 0.4 * std::sqrt(2.0)) <= kTol);
  CHECK(a.feasible_together);
  CHECK(a.feasible_apart);
}

TEST_CASE("path with N = 3 cannot keep a pair together") {
  const auto a = force_together_threshold(path3(), 3, 0.5, kP2, 0);
  CHECK_FALSE(a.feasible_together);
  CHECK(a.feasible_apart);
  CHECK_FALSE(a.threshold.has_value());
  CHECK(separation_feasibility(path3(), 3, 0.5, kP2, 0).verdict == SeparationVerdict::kAlwaysSeparated);
  CHECK(separation_feasibility(path3(), 1, 0.5, kP2, 0).verdict == SeparationVerdict::kNoSeparatingPartition);
}

TEST_CASE("forcing parameter errors") {
  const auto g = path3();
  CHECK_THROWS_AS(force_together_threshold(g, 2, 0.0, kP2, 0), std::invalid_argument);
  CHECK_THROWS_AS(separation_feasibility(g, 2, 0.0, kP2, 0), std::invalid_argument);
  CHECK_THROWS_AS(force_together_threshold(g, 2, 1.5, kP2, 0), std::invalid_argument);
  CHECK_THROWS_AS(force_together_threshold(g, 2, 0.5, kP2, 9), std::out_of_range);
}

TEST_CASE("FIG3 separation verdicts") {
  for (auto [m, eps] : {std::pair{2.0, 0.1}, std::pair{10.0, 0.001}}) {
    const auto f = load_fixture("FIG3", {.M = m, .eps = eps});
    CHECK(separation_feasibility(f.graph, 2, 0.4, kP2, 0).verdict == SeparationVerdict::kImpossible);
    const double edge = std::sqrt(2.0) / (1 + std::sqrt(2.0));
    CHECK(separation_feasibility(f.graph, 2, edge, kP2, 0).verdict == SeparationVerdict::kImpossible);
    const auto high = separation_feasibility(f.graph, 2, 0.9, kP2, 0);
    REQUIRE(high.verdict == SeparationVerdict::kPossible);
    const double threshold = *high.forcing.threshold;
    CHECK(std::abs(threshold - (0.9 - 0.1 * std::sqrt(2.0)) / 0.9) <= kTol);
    const auto below = f.graph.with_edge_weight(0, threshold * 0.5);
    CHECK(some_separates(minimize(below, 2, 0.9, kP2), f.graph.edge(0)));
  }
  CHECK(to_string(SeparationVerdict::kImpossible) == "impossible");
}

TEST_CASE("threshold soundness on fixtures and random graphs") {
  std::vector<WeightedGraph> graphs;
  for (const auto& name : fixture_names()) graphs.push_back(load_fixture(name).graph);
  dt::Rng rng(61);
  for (int i = 0; i < 20; ++i) graphs.push_back(dt::random_connected_graph(rng, {.min_vertices = 3, .max_vertices = 7}));

  std::size_t checked = 0;
  for (const auto& g : graphs) {
    if (g.edge_count() == 0) continue;
    std::uniform_int_distribution<std::size_t> nb(2, std::min<std::size_t>(g.vertex_count(), 4));
    std::uniform_int_distribution<EdgeIndex> eb(0, g.edge_count() - 1);
    for (int k = 0; k < 10; ++k) {
      const std::size_t n = nb(rng);
      const EdgeIndex edge = eb(rng);
      const double lambda = k % 2 == 0 ? 0.3 : 0.7;
      const auto a = force_together_threshold(g, n, lambda, kP2, edge);
      if (!a.threshold) continue;
      const double t = *a.threshold;
      CAPTURE(serialize(g));
      CAPTURE(n);
      CAPTURE(edge);
      CAPTURE(t);
      const double above = t > 0 ? t * (1 + 1e-6) : 1e-6;
      const auto heavy = g.with_edge_weight(edge, above);
      CHECK(keeps_together(minimize(heavy, n, lambda, kP2, {.tolerance = 0.0}), g.edge(edge)));
      if (t > 0) {
        const auto light = g.with_edge_weight(edge, t * (1 - 1e-6));
        CHECK(some_separates(minimize(light, n, lambda, kP2), g.edge(edge)));
      }
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("separating energies split into the edge term and the D-part") {
  dt::Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 3, .max_vertices = 7});
    std::uniform_int_distribution<EdgeIndex> eb(0, g.edge_count() - 1);
    const EdgeIndex edge = eb(rng);
    const auto& e = g.edge(edge);
    const auto a = force_together_threshold(g, 2, 0.6, kP2, edge);
    double together = dt::kInf;
    double apart = dt::kInf;
    for_each_partition(g, 2, [&](const Partition& part) {
      const double f = total_energy(g, part, 0.6, kP2).total;
      if (part.block_of(e.u) == part.block_of(e.v)) {
        together = std::min(together, f);
      } else {
        apart = std::min(apart, f - 0.6 * e.weight);
      }
    });
    CHECK(a.feasible_together == (together < dt::kInf));
    if (a.together_min) CHECK(std::abs(*a.together_min - together) <= kTol);
    if (a.apart_min) CHECK(std::abs(*a.apart_min - apart) <= kTol);
    CHECK(*a.together_min >= minimize(g, 2, 0.6, kP2).optimal_value - kTol);
  }
}

TEST_CASE("weak star leaf is isolated near lambda = 1") {
  // Every 2-partition of a star isolates one leaf, so the three leaves tie.
  const auto g = star(3, 0.01);
  const auto a = isolation_analysis(g, g.index_of("l0"), kP2);
  CHECK(a.feasible);
  CHECK(std::abs(a.boundary_weight - 0.01) <= kTol);
  REQUIRE(a.lambda_interval.has_value());
  CHECK(a.lambda_interval->low == 0.0);
  CHECK(a.lambda_interval->high == 1.0);
  CHECK(a.lambda_interval->low_closed);
  CHECK(a.lambda_interval->high_closed);
  REQUIRE(a.scale_threshold.has_value());
  CHECK(std::abs(*a.scale_threshold - 1.0) <= 2 * kScaleThresholdPrecision);

  // Make the leaf strictly the weakest: its singleton is then the unique
  // minimum cut and stays minimal on an interval ending at 1.
  const auto weak = g.with_edge_weight(0, 0.005);
  const auto b = isolation_analysis(weak, weak.index_of("l0"), kP2);
  REQUIRE(b.lambda_interval.has_value());
  CHECK(b.lambda_interval->low < 1.0);
  CHECK(b.lambda_interval->high == 1.0);
  CHECK(b.lambda_interval->high_closed);
  CHECK(std::abs(*b.scale_threshold - 2.0) <= 4 * kScaleThresholdPrecision);
}

TEST_CASE("cut vertex cannot be isolated") {
  const auto g = path3();
  const auto a = isolation_analysis(g, g.index_of("b"), kP2);
  CHECK_FALSE(a.feasible);
  CHECK(a.boundary_weight == 2.0);
  CHECK_FALSE(a.lambda_interval.has_value());
  CHECK_FALSE(a.scale_threshold.has_value());
  CHECK_THROWS_AS(isolation_analysis(parse_graph("v a 1"), 0, kP2), std::invalid_argument);
  CHECK_THROWS_AS(isolation_analysis(g, 7, kP2), std::out_of_range);
}

TEST_CASE("scale threshold matches the closed form") {
  dt::Rng rng(71);
  std::size_t finite = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 3, .max_vertices = 6});
    std::uniform_int_distribution<VertexIndex> vb(0, g.vertex_count() - 1);
    const VertexIndex v = vb(rng);
    const auto a = isolation_analysis(g, v, kP2);
    if (!a.feasible) continue;
    const double expected = closed_form_scale_threshold(g, v);
    CAPTURE(serialize(g));
    CAPTURE(v);
    REQUIRE(a.scale_threshold.has_value());
    if (std::isinf(expected)) {
      CHECK(std::isinf(*a.scale_threshold));
    } else {
      ++finite;
      CHECK(std::abs(*a.scale_threshold - expected) <= 2 * kScaleThresholdPrecision * expected);
      // Just below the threshold the singleton is minimal near lambda = 1.
      const auto below = lower_envelope(scale_edges(g, v, *a.scale_threshold * (1 - 1e-4), true), 2, kP2);
      std::vector<BlockLabel> labels(g.vertex_count(), 0);
      labels[v] = 1;
      const auto& last = below.intervals.back().minimizers;
      CHECK(std::find(last.begin(), last.end(), Partition(labels)) != last.end());
    }
  }
  CHECK(finite > 5);
}

TEST_CASE("isolation interval is an up-set when the singleton is the unique minimum cut") {
  dt::Rng rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 3, .max_vertices = 6});
    std::uniform_int_distribution<VertexIndex> vb(0, g.vertex_count() - 1);
    const VertexIndex v = vb(rng);
    const auto weak = scale_edges(g, v, 1e-3, true);
    const auto a = isolation_analysis(weak, v, kP2);
    if (!a.feasible) continue;
    const auto cut = minimize_cut(weak, 2);
    std::vector<BlockLabel> labels(weak.vertex_count(), 0);
    labels[v] = 1;
    if (cut.minimizers.size() != 1 || cut.minimizers[0].partition != Partition(labels)) continue;
    REQUIRE(a.lambda_interval.has_value());
    CHECK(a.lambda_interval->high == 1.0);
    CHECK(a.lambda_interval->high_closed);
  }
}

TEST_CASE("dilating the other weights matches shrinking the boundary") {
  dt::Rng rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 3, .max_vertices = 6});
    std::uniform_int_distribution<VertexIndex> vb(0, g.vertex_count() - 1);
    const VertexIndex v = vb(rng);
    if (components_without(g, v) != 1) continue;
    const double m = 1e3;
    // Dilating non-boundary weights and masses by m equals shrinking the
    // boundary weights by 1/m, up to a global factor m.
    auto dilated = scale_edges(g, v, m, false);
    auto spec = dilated.to_spec();
    for (auto& vert : spec.vertices) vert.mass *= m;
    dilated = WeightedGraph::from_spec(spec);
    const auto shrunk = scale_edges(g, v, 1 / m, true);
    const auto a = isolation_analysis(dilated, v, kP2);
    const auto b = isolation_analysis(shrunk, v, kP2);
    CHECK(a.lambda_interval.has_value() == b.lambda_interval.has_value());
    if (a.lambda_interval && b.lambda_interval) {
      CHECK(a.lambda_interval->low == doctest::Approx(b.lambda_interval->low).epsilon(1e-9));
      CHECK(a.lambda_interval->high == doctest::Approx(b.lambda_interval->high).epsilon(1e-9));
    }
    for (double lambda : {0.1, 0.5, 0.9}) {
      CHECK(minimize(dilated, 2, lambda, kP2).partitions() == minimize(shrunk, 2, lambda, kP2).partitions());
    }
  }
}

TEST_CASE("pigeonhole examples") {
  const auto s = star(4, 1.0);
  const auto centre = isolation_pigeonhole(s, s.index_of("c"), 3);
  CHECK(centre.components == 4);
  CHECK_FALSE(centre.feasible);
  const auto leaf = isolation_pigeonhole(path3(), 0, 2);
  CHECK(leaf.components == 1);
  CHECK(leaf.feasible);
  const auto f = load_fixture("FIG1");
  const auto c = isolation_pigeonhole(f.graph, f.graph.index_of("c"), 2);
  CHECK(c.components == 1);
  CHECK(c.feasible);
}

TEST_CASE("pigeonhole agrees with enumeration") {
  dt::Rng rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 2, .max_vertices = 8, .extra_edge_probability = 0.1});
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      for (std::size_t n = 1; n <= g.vertex_count(); ++n) {
        bool isolated = false;
        for_each_partition(g, n, [&](const Partition& part) {
          isolated |= part.block(part.block_of(v)).size() == 1 && n > 1;
        });
        CAPTURE(serialize(g));
        CAPTURE(v);
        CAPTURE(n);
        CHECK(isolation_pigeonhole(g, v, n).feasible == isolated);
      }
    }
  }
}
