#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "districtor/fixtures.hpp"
#include "districtor/lambda_analysis.hpp"
#include "districtor/solver.hpp"
#include "oracle.hpp"

using namespace districtor;
namespace dt = districtor::testing;

namespace {

constexpr double kTol = 1e-9;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

DeviationNorm norm_for(const std::string& name) {
  return name == "FIG7" ? DeviationNorm::infinity() : DeviationNorm::finite(2);
}

// Recomputes an expected value from the graph alone, or returns nullopt for
// keys that are not a direct function of one partition or the graph.
std::optional<double> recompute(const Fixture& f, const std::string& key) {
  const auto p = norm_for(f.name);
  if (key == "total_mass") return mass(f.graph);
  if (key == "total_edge_weight") {
    double total = 0.0;
    for (const auto& e : f.graph.edges()) total += e.weight;
    return total;
  }
  if (key == "min_cut") return minimize_cut(f.graph, f.name == "FIG2" ? 3 : 2).optimal_value;
  if (key == "min_deviation") return minimize_deviation(f.graph, 2, p).optimal_value;
  if (key == "middle_edge") return f.graph.edge(cut_set(f.graph, f.partition("D2")).at(0)).weight;
  const auto dot = key.find('.');
  if (dot == std::string::npos) return std::nullopt;
  const auto part_key = key.substr(0, dot);
  const auto field = key.substr(dot + 1);
  if (!f.partitions.contains(part_key)) return std::nullopt;
  const auto& part = f.partition(part_key);
  if (field == "cut") return cut_energy(f.graph, part);
  if (field == "deviation") return deviation_energy(f.graph, part, p);
  if (field == "slope") return energy_line(f.graph, part, p).slope;
  if (field == "half") return total_energy(f.graph, part, 0.5, p).total;
  return std::nullopt;
}

}  // namespace

TEST_CASE("fixture names") {
  const auto names = fixture_names();
  CHECK(names == std::vector<std::string>{"FIG1", "FIG1-HAT", "FIG2", "FIG2-HAT", "FIG3", "FIG4", "FIG5", "FIG6", "FIG7"});
  CHECK(load_fixture("fig1").name == "FIG1");
  CHECK_THROWS_AS(load_fixture("FIG8"), std::invalid_argument);
  CHECK_THROWS_AS(load_fixture("FIG1").value("nope"), std::out_of_range);
}

TEST_CASE("fixture totals") {
  const auto fig4 = load_fixture("FIG4");
  CHECK(mass(fig4.graph) == 8.0);
  CHECK(fig4.value("total_edge_weight") == 34.0);
  const auto fig7 = load_fixture("FIG7");
  CHECK(mass(fig7.graph) == 24.0);
  CHECK(fig7.value("middle_edge") == 4.0);
}

TEST_CASE("fixture parameter domains") {
  CHECK_THROWS_AS(load_fixture("FIG3", {.M = 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(load_fixture("FIG3", {.eps = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(load_fixture("FIG6", {.p = 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(fig6_alpha(dt::kInf), std::invalid_argument);
  const auto f = load_fixture("FIG3", {.M = 10, .eps = 0.001});
  CHECK(f.graph.vertex(2).mass == 20.0);
  CHECK(f.graph.edge(0).weight == 0.001);
}

TEST_CASE("data files match the builders") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto path = std::string(DISTRICTOR_DATA_DIR) + "/fixtures/" + lower(name) + ".graph";
    const auto file = parse_graph(read_file(path));
    const auto built = load_fixture(name).graph;
    REQUIRE(file.vertex_count() == built.vertex_count());
    REQUIRE(file.edge_count() == built.edge_count());
    for (VertexIndex v = 0; v < built.vertex_count(); ++v) {
      CHECK(file.vertex(v).id == built.vertex(v).id);
      CHECK(file.vertex(v).mass == doctest::Approx(built.vertex(v).mass).epsilon(1e-8));
    }
    for (EdgeIndex e = 0; e < built.edge_count(); ++e) {
      CHECK(file.edge(e).u == built.edge(e).u);
      CHECK(file.edge(e).v == built.edge(e).v);
      CHECK(file.edge(e).weight == doctest::Approx(built.edge(e).weight).epsilon(1e-8));
    }
  }
}

TEST_CASE("named partitions are connected and have the advertised size") {
  for (const auto& name : fixture_names()) {
    const auto f = load_fixture(name);
    for (const auto& [key, part] : f.partitions) {
      CAPTURE(name);
      CAPTURE(key);
      CHECK(part.vertex_count() == f.graph.vertex_count());
      CHECK(is_connected_partition(f.graph, part));
    }
  }
}

TEST_CASE("expected values are reproduced from the graphs") {
  std::size_t reproduced = 0;
  for (const auto& name : fixture_names()) {
    const auto f = load_fixture(name);
    for (const auto& ev : f.expected) {
      const auto actual = recompute(f, ev.key);
      if (!actual) continue;
      CAPTURE(name);
      CAPTURE(ev.key);
      CHECK(std::abs(*actual - ev.value) <= kTol);
      ++reproduced;
    }
  }
  CHECK(reproduced >= 40);
}

TEST_CASE("breakpoints are the envelope knots") {
  const std::pair<const char*, std::size_t> cases[] = {{"FIG1", 2}, {"FIG2-HAT", 3}, {"FIG4", 4}};
  for (auto [name, blocks] : cases) {
    const auto f = load_fixture(name);
    const auto env = lower_envelope(f.graph, blocks, DeviationNorm::finite(2));
    REQUIRE(env.breakpoints.size() == 1);
    CHECK(std::abs(env.breakpoints[0] - f.value("breakpoint")) <= kTol);
  }
}

TEST_CASE("FIG3 separation lambda balances the two classes") {
  const auto f = load_fixture("FIG3");
  const double lambda = f.value("separation_lambda");
  // Together: cut 1; apart without the light edge: cut 0.
  const double together = combine(lambda, 1.0, f.value("together.deviation"));
  const double apart = combine(lambda, 0.0, f.value("apart.deviation"));
  CHECK(std::abs(together - apart) <= kTol);
  CHECK(std::abs(deviation_energy(f.graph, f.partition("together"), DeviationNorm::finite(2)) -
                 f.value("together.deviation")) <= kTol);
}

TEST_CASE("FIG6 alpha and interval ends") {
  for (double p : {1.0, 2.0, 3.0}) {
    const auto f = load_fixture("FIG6", {.p = p});
    const auto norm = DeviationNorm::finite(p);
    CHECK(f.value("alpha") == fig6_alpha(p));
    const auto lD = energy_line(f.graph, f.partition("D"), norm);
    const auto lI = energy_line(f.graph, f.partition("I"), norm);
    const auto lC = energy_line(f.graph, f.partition("C"), norm);
    const double d_end = f.value("D_beats_I_below");
    CHECK(std::abs(lD.at(d_end) - lI.at(d_end)) <= kTol);
    const double c_start = f.value("C_beats_I_above");
    CHECK(std::abs(lC.at(c_start) - lI.at(c_start)) <= kTol);
    CHECK(c_start < d_end);
  }
}

TEST_CASE("moving the lambda = 1/2 energies to another lambda") {
  dt::Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = dt::random_connected_graph(rng, {.min_vertices = 2, .max_vertices = 7});
    std::uniform_int_distribution<std::size_t> nb(1, g.vertex_count());
    const std::size_t n = nb(rng);
    for (double lambda : {0.2, 0.5, 0.85}) {
      const auto moved = transfer_half_to_lambda(g, lambda);
      for_each_partition(g, n, [&](const Partition& part) {
        for (auto p : {DeviationNorm::finite(1), DeviationNorm::finite(2), DeviationNorm::infinity()}) {
          const double a = total_energy(moved, part, lambda, p).total;
          const double b = total_energy(g, part, 0.5, p).total;
          CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, b));
        }
      });
    }
  }
  CHECK_THROWS_AS(transfer_half_to_lambda(load_fixture("FIG1").graph, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(transfer_half_to_lambda(load_fixture("FIG1").graph, 1.0), std::invalid_argument);
}
