#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "districtor/fixtures.hpp"
#include "districtor/solver.hpp"
#include "oracle.hpp"

using namespace districtor;
namespace dt = districtor::testing;

namespace {

constexpr double kTol = 1e-9;
const auto kP2 = DeviationNorm::finite(2);

std::set<dt::Labels> label_set(const MinimizerSet& set) {
  std::set<dt::Labels> out;
  for (const auto& m : set.minimizers) out.emplace(m.partition.labels().begin(), m.partition.labels().end());
  return out;
}

std::vector<Partition> sorted(std::vector<Partition> v) {
  std::sort(v.begin(), v.end());
  return v;
}

double enumerated_minimum(const WeightedGraph& g, std::size_t n, double lambda, DeviationNorm p) {
  double best = dt::kInf;
  for_each_partition(g, n, [&](const Partition& part) { best = std::min(best, total_energy(g, part, lambda, p).total); });
  return best;
}

}  // namespace

TEST_CASE("FIG1 below the transition: D and its mirror") {
  const auto f = load_fixture("FIG1");
  const auto set = minimize(f.graph, 2, 0.3, kP2);
  CHECK(set.partitions() == sorted({f.partition("D"), f.partition("D'")}));
  CHECK(std::abs(set.optimal_value - 1.5) <= kTol);
  CHECK(set.lambda == 0.3);
  CHECK(set.blocks == 2);
}

TEST_CASE("FIG1 at the transition: D, M and C tie") {
  const auto f = load_fixture("FIG1");
  const auto set = minimize(f.graph, 2, 2 - std::sqrt(2.0), kP2);
  std::vector<Partition> expected;
  for (const char* key : {"D", "D'", "C", "C'", "M", "M'", "M''", "M'''"}) expected.push_back(f.partition(key));
  CHECK(set.partitions() == sorted(expected));
  for (const auto& m : set.minimizers) CHECK(std::abs(m.total - set.optimal_value) <= kTol);
}

TEST_CASE("FIG2-HAT 3-partitions on either side of 3 - sqrt6") {
  const auto f = load_fixture("FIG2-HAT");
  const auto high = minimize(f.graph, 3, 0.9, kP2);
  CHECK(high.partitions() == std::vector{f.partition("left")});
  CHECK(std::abs(high.optimal_value - (0.9 * 2 + 0.1 * std::sqrt(6.0))) <= kTol);
  const auto low = minimize(f.graph, 3, 0.3, kP2);
  CHECK(low.partitions() == std::vector{f.partition("right")});
  CHECK(std::abs(low.optimal_value - 1.2) <= kTol);
}

TEST_CASE("minimum cuts") {
  const auto fig4 = load_fixture("FIG4");
  const auto rows = minimize_cut(fig4.graph, 2);
  CHECK(rows.partitions() == std::vector{fig4.partition("rows")});
  CHECK(rows.optimal_value == 2.0);
  CHECK(rows.lambda == 1.0);

  const auto fig5 = load_fixture("FIG5");
  const auto four = minimize_cut(fig5.graph, 4);
  CHECK(four.optimal_value == 36.0);
  REQUIRE(four.minimizers.size() == 2);
  CHECK(four.contains(fig5.partition("C4")));
  for (const auto& m : four.minimizers) {
    // Every edge but one weight-16 edge is cut.
    const auto cut = cut_set(fig5.graph, m.partition);
    REQUIRE(cut.size() == 4);
    std::size_t kept = 0;
    for (EdgeIndex e = 0; e < fig5.graph.edge_count(); ++e) {
      if (std::find(cut.begin(), cut.end(), e) == cut.end()) {
        ++kept;
        CHECK(fig5.graph.edge(e).weight == 16.0);
      }
    }
    CHECK(kept == 1);
  }

  CHECK(minimize_cut(fig5.graph, 1).optimal_value == 0.0);
}

TEST_CASE("minimum deviation") {
  const auto hat = load_fixture("FIG1-HAT");
  const auto two = minimize_deviation(hat.graph, 2, kP2);
  CHECK(two.optimal_value == 0.0);
  CHECK(two.partitions() == sorted({hat.partition("columns"), hat.partition("rows")}));

  const auto fig7 = load_fixture("FIG7");
  const auto mid = minimize_deviation(fig7.graph, 2, DeviationNorm::infinity());
  CHECK(mid.partitions() == std::vector{fig7.partition("D2")});
  CHECK(mid.optimal_value == 0.0);

  const auto path = parse_graph("v a 1\nv b 1\nv c 1\ne a b 1\ne b c 1\n");
  const auto singletons = minimize_deviation(path, 3, kP2);
  REQUIRE(singletons.minimizers.size() == 1);
  CHECK(singletons.minimizers[0].partition.block_count() == 3);
  CHECK(singletons.optimal_value == 0.0);
}

TEST_CASE("parameter errors") {
  const auto g = load_fixture("FIG1").graph;
  CHECK_THROWS_AS(minimize(g, 0, 0.5, kP2), std::invalid_argument);
  CHECK_THROWS_AS(minimize(g, 6, 0.5, kP2), std::invalid_argument);
  CHECK_THROWS_AS(minimize(g, 2, -0.5, kP2), std::invalid_argument);
  CHECK_THROWS_AS(minimize(g, 2, 1.5, kP2), std::invalid_argument);
  CHECK_THROWS_AS(minimize(g, 2, 0.5, kP2, {.tolerance = -1.0}), std::invalid_argument);
}

TEST_CASE("minimize matches the brute-force argmin") {
  dt::Rng rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ps[] = {1.0, 2.0, dt::kInf};
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 1, .max_vertices = 8});
    std::uniform_int_distribution<std::size_t> nb(1, g.vertex_count());
    const std::size_t n = nb(rng);
    const double lambda = trial % 10 == 0 ? (trial % 20 == 0 ? 0.0 : 1.0) : unit(rng);
    const double p = ps[trial % 3];
    CAPTURE(serialize(g));
    CAPTURE(n);
    CAPTURE(lambda);
    CAPTURE(p);
    const auto set = minimize(g, n, lambda, DeviationNorm::finite(p));
    const auto naive = dt::naive_argmin(g, n, lambda, p);
    CHECK(std::abs(set.optimal_value - naive.value) <= kTol);
    CHECK(label_set(set) == naive.minimizers);
  }
}

TEST_CASE("pruned optimum equals the unpruned minimum on every fixture") {
  for (const auto& name : fixture_names()) {
    const auto g = load_fixture(name).graph;
    for (std::size_t n = 1; n <= g.vertex_count(); ++n) {
      for (double lambda : {0.0, 0.25, 0.6, 1.0}) {
        for (auto p : {DeviationNorm::finite(1), kP2, DeviationNorm::infinity()}) {
          CAPTURE(name);
          CAPTURE(n);
          CAPTURE(lambda);
          CHECK(std::abs(minimize(g, n, lambda, p).optimal_value - enumerated_minimum(g, n, lambda, p)) <= kTol);
        }
      }
    }
  }
}

TEST_CASE("every minimizer is within tolerance and none is missed") {
  dt::Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 2, .max_vertices = 8});
    std::uniform_int_distribution<std::size_t> nb(1, g.vertex_count());
    const std::size_t n = nb(rng);
    const auto set = minimize(g, n, 0.4, kP2);
    for (const auto& m : set.minimizers) {
      const auto e = total_energy(g, m.partition, 0.4, kP2);
      CHECK(std::abs(e.total - set.optimal_value) <= kTol);
      CHECK(e.cut == doctest::Approx(m.cut));
      CHECK(e.deviation == doctest::Approx(m.deviation));
    }
    for_each_partition(g, n, [&](const Partition& part) {
      CHECK(total_energy(g, part, 0.4, kP2).total >= set.optimal_value - kTol);
    });
  }
}

TEST_CASE("monotone sandwich") {
  dt::Rng rng(41);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 2, .max_vertices = 8});
    std::uniform_int_distribution<std::size_t> nb(1, g.vertex_count());
    const std::size_t n = nb(rng);
    const double min_cut = minimize_cut(g, n).optimal_value;
    const double min_dev = minimize_deviation(g, n, kP2).optimal_value;
    const auto mid = minimize(g, n, unit(rng), kP2);
    for (const auto& m : mid.minimizers) {
      CHECK(min_cut <= m.cut + kTol);
      CHECK(min_dev <= m.deviation + kTol);
    }
  }
}

TEST_CASE("scaling leaves the minimizers unchanged") {
  dt::Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 2, .max_vertices = 8});
    std::uniform_int_distribution<std::size_t> nb(1, g.vertex_count());
    const std::size_t n = nb(rng);
    for (double theta : {0.5, 3.0}) {
      for (double lambda : {0.2, 0.7}) {
        CHECK(minimize(g, n, lambda, kP2).partitions() == minimize(scale_weights(g, theta), n, lambda, kP2).partitions());
      }
    }
  }
}

TEST_CASE("worker count does not change the result") {
  dt::Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 8, .max_vertices = 12});
    const auto one = minimize(g, 3, 0.5, kP2, {.workers = 1});
    for (unsigned workers : {2u, 3u, 8u}) {
      const auto many = minimize(g, 3, 0.5, kP2, {.workers = workers});
      CHECK(many.optimal_value == one.optimal_value);
      REQUIRE(many.minimizers.size() == one.minimizers.size());
      for (std::size_t i = 0; i < one.minimizers.size(); ++i) {
        CHECK(many.minimizers[i].partition == one.minimizers[i].partition);
        CHECK(many.minimizers[i].total == one.minimizers[i].total);
      }
    }
  }
}

TEST_CASE("tolerance widens the tie set") {
  const auto f = load_fixture("FIG1");
  CHECK(minimize(f.graph, 2, 0.3, kP2).minimizers.size() == 2);
  CHECK(minimize(f.graph, 2, 0.3, kP2, {.tolerance = 10.0}).minimizers.size() == count_partitions(f.graph, 2));
}
