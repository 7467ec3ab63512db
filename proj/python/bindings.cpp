#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "districtor/energy.hpp"
#include "districtor/fixtures.hpp"
#include "districtor/graph.hpp"
#include "districtor/lambda_analysis.hpp"
#include "districtor/partition.hpp"
#include "districtor/reference_examples.hpp"
#include "districtor/refinement.hpp"
#include "districtor/solver.hpp"
#include "districtor/weight_engineering.hpp"

namespace py = pybind11;
using namespace districtor;

namespace {

SolveOptions options(double tolerance, unsigned workers) { return SolveOptions{tolerance, workers}; }

std::vector<BlockLabel> labels_of(const Partition& p) { return {p.labels().begin(), p.labels().end()}; }

std::string range_repr(const LambdaRange& r) {
  return std::string(r.low_closed ? "[" : "(") + std::to_string(r.low) + ", " + std::to_string(r.high) +
         (r.high_closed ? "]" : ")");
}

}  // namespace

PYBIND11_MODULE(_districtor, m) {
  m.doc() = "Exact minimizers of lambda * cut + (1 - lambda) * deviation over connected graph partitions";
  m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);

  py::class_<WeightedGraph::Vertex>(m, "Vertex")
      .def_readonly("id", &WeightedGraph::Vertex::id)
      .def_readonly("mass", &WeightedGraph::Vertex::mass);
  py::class_<WeightedGraph::Edge>(m, "Edge")
      .def_readonly("u", &WeightedGraph::Edge::u)
      .def_readonly("v", &WeightedGraph::Edge::v)
      .def_readonly("weight", &WeightedGraph::Edge::weight);

  py::class_<WeightedGraph>(m, "Graph")
      .def_static("parse", [](const std::string& text) { return parse_graph(text); }, py::arg("text"),
                  "Parse the 'v <id> <mass>' / 'e <a> <b> <weight>' line format.")
      .def_property_readonly("vertex_count", &WeightedGraph::vertex_count)
      .def_property_readonly("edge_count", &WeightedGraph::edge_count)
      .def_property_readonly("vertices",
                             [](const WeightedGraph& g) {
                               return std::vector<WeightedGraph::Vertex>(g.vertices().begin(), g.vertices().end());
                             })
      .def_property_readonly("edges",
                             [](const WeightedGraph& g) {
                               return std::vector<WeightedGraph::Edge>(g.edges().begin(), g.edges().end());
                             })
      .def_property_readonly("total_mass", &WeightedGraph::total_mass)
      .def("index_of", &WeightedGraph::index_of, py::arg("id"))
      .def("find_edge",
           [](const WeightedGraph& g, const std::string& a, const std::string& b) {
             return g.find_edge(g.index_of(a), g.index_of(b));
           },
           py::arg("a"), py::arg("b"))
      .def("with_edge_weight", &WeightedGraph::with_edge_weight, py::arg("edge"), py::arg("weight"))
      .def("scaled", [](const WeightedGraph& g, double theta) { return scale_weights(g, theta); }, py::arg("theta"))
      .def("serialize", [](const WeightedGraph& g) { return serialize(g); })
      .def("__repr__", [](const WeightedGraph& g) {
        return "<Graph " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges>";
      });

  py::class_<Partition>(m, "Partition")
      .def(py::init<std::vector<BlockLabel>>(), py::arg("labels"))
      .def_static("parse", [](const WeightedGraph& g, const std::string& text) { return parse_partition(g, text); },
                  py::arg("graph"), py::arg("text"))
      .def_property_readonly("labels", &labels_of)
      .def_property_readonly("block_count", &Partition::block_count)
      .def("blocks", &Partition::blocks)
      .def("format", [](const Partition& p, const WeightedGraph& g) { return format_partition(g, p); },
           py::arg("graph"))
      .def(py::self == py::self)
      .def(py::self < py::self)
      .def("__hash__", [](const Partition& p) { return py::hash(py::tuple(py::cast(labels_of(p)))); })
      .def("__repr__", [](const Partition& p) {
        std::string s = "<Partition";
        for (auto l : p.labels()) s += " " + std::to_string(l);
        return s + ">";
      });

  py::class_<DeviationNorm>(m, "Norm")
      .def(py::init([](double p) { return DeviationNorm::finite(p); }), py::arg("p"))
      .def(py::init([](const std::string& s) { return DeviationNorm::parse(s); }), py::arg("p"))
      .def_static("infinity", &DeviationNorm::infinity)
      .def_property_readonly("exponent", &DeviationNorm::exponent)
      .def_property_readonly("is_infinite", &DeviationNorm::is_infinite)
      .def("__str__", &DeviationNorm::to_string)
      .def("__repr__", [](const DeviationNorm& p) { return "<Norm " + p.to_string() + ">"; })
      .def(py::self == py::self);
  py::implicitly_convertible<py::float_, DeviationNorm>();
  py::implicitly_convertible<py::int_, DeviationNorm>();
  py::implicitly_convertible<py::str, DeviationNorm>();

  m.def("fixture_names", &fixture_names);
  m.def(
      "load_fixture",
      [](const std::string& name, double M, double eps, double p) {
        const auto f = load_fixture(name, FixtureParams{M, eps, p});
        std::map<std::string, double> values;
        for (const auto& e : f.expected) values[e.key] = e.value;
        return py::make_tuple(f.graph, f.partitions, values);
      },
      py::arg("name"), py::arg("M") = 2.0, py::arg("eps") = 0.1, py::arg("p") = 2.0,
      "Returns (graph, named partitions, expected values).");

  m.def("is_connected_partition", &is_connected_partition, py::arg("graph"), py::arg("partition"));
  m.def("count_partitions", &count_partitions, py::arg("graph"), py::arg("blocks"));
  m.def(
      "partitions",
      [](const WeightedGraph& g, std::size_t blocks) {
        std::vector<Partition> out;
        for_each_partition(g, blocks, [&](const Partition& p) { out.push_back(p); });
        return out;
      },
      py::arg("graph"), py::arg("blocks"), "Every connected partition with the given block count.");

  py::class_<EnergyBreakdown>(m, "Energy")
      .def_readonly("cut", &EnergyBreakdown::cut)
      .def_readonly("deviation", &EnergyBreakdown::deviation)
      .def_readonly("lambda_", &EnergyBreakdown::lambda)
      .def_readonly("total", &EnergyBreakdown::total);
  m.def("cut_energy", &cut_energy, py::arg("graph"), py::arg("partition"));
  m.def("deviation_energy", &deviation_energy, py::arg("graph"), py::arg("partition"), py::arg("p") = 2.0);
  m.def("energy", &total_energy, py::arg("graph"), py::arg("partition"), py::arg("lam"), py::arg("p") = 2.0);

  py::class_<Minimizer>(m, "Minimizer")
      .def_readonly("partition", &Minimizer::partition)
      .def_readonly("cut", &Minimizer::cut)
      .def_readonly("deviation", &Minimizer::deviation)
      .def_readonly("total", &Minimizer::total);
  py::class_<MinimizerSet>(m, "MinimizerSet")
      .def_readonly("optimal_value", &MinimizerSet::optimal_value)
      .def_readonly("minimizers", &MinimizerSet::minimizers)
      .def_readonly("blocks", &MinimizerSet::blocks)
      .def_readonly("partitions_examined", &MinimizerSet::partitions_examined)
      .def("partitions", &MinimizerSet::partitions)
      .def("__contains__", &MinimizerSet::contains)
      .def("__len__", [](const MinimizerSet& s) { return s.minimizers.size(); });

  m.def(
      "minimize",
      [](const WeightedGraph& g, std::size_t n, double lam, DeviationNorm p, double tolerance, unsigned workers) {
        py::gil_scoped_release release;
        return minimize(g, n, lam, p, options(tolerance, workers));
      },
      py::arg("graph"), py::arg("blocks"), py::arg("lam"), py::arg("p") = 2.0, py::arg("tolerance") = kDefaultTolerance,
      py::arg("workers") = 1u, "All connected partitions minimizing lam * cut + (1 - lam) * deviation.");
  m.def(
      "minimize_cut",
      [](const WeightedGraph& g, std::size_t n, double tolerance, unsigned workers) {
        py::gil_scoped_release release;
        return minimize_cut(g, n, options(tolerance, workers));
      },
      py::arg("graph"), py::arg("blocks"), py::arg("tolerance") = kDefaultTolerance, py::arg("workers") = 1u);
  m.def(
      "minimize_deviation",
      [](const WeightedGraph& g, std::size_t n, DeviationNorm p, double tolerance, unsigned workers) {
        py::gil_scoped_release release;
        return minimize_deviation(g, n, p, options(tolerance, workers));
      },
      py::arg("graph"), py::arg("blocks"), py::arg("p") = 2.0, py::arg("tolerance") = kDefaultTolerance,
      py::arg("workers") = 1u);

  py::class_<AffineLine>(m, "Line")
      .def_readonly("slope", &AffineLine::slope)
      .def_readonly("intercept", &AffineLine::intercept)
      .def_readonly("partition", &AffineLine::partition)
      .def_property_readonly("cut", &AffineLine::cut)
      .def_property_readonly("deviation", &AffineLine::deviation)
      .def("at", &AffineLine::at, py::arg("lam"));
  m.def("energy_line", &energy_line, py::arg("graph"), py::arg("partition"), py::arg("p") = 2.0);

  py::class_<LambdaInterval>(m, "Interval")
      .def_readonly("low", &LambdaInterval::low)
      .def_readonly("high", &LambdaInterval::high)
      .def_readonly("cut", &LambdaInterval::cut)
      .def_readonly("deviation", &LambdaInterval::deviation)
      .def_readonly("minimizers", &LambdaInterval::minimizers);
  py::class_<LambdaPoint>(m, "Point")
      .def_readonly("lam", &LambdaPoint::lambda)
      .def_readonly("value", &LambdaPoint::value)
      .def_readonly("minimizers", &LambdaPoint::minimizers);
  py::class_<Transition>(m, "Transition")
      .def_readonly("lam", &Transition::lambda)
      .def_readonly("witnesses", &Transition::witnesses);
  py::class_<TransitionDiagram>(m, "TransitionDiagram")
      .def_readonly("breakpoints", &TransitionDiagram::breakpoints)
      .def_readonly("intervals", &TransitionDiagram::intervals)
      .def_readonly("points", &TransitionDiagram::points)
      .def_readonly("first", &TransitionDiagram::first)
      .def_readonly("last", &TransitionDiagram::last)
      .def_readonly("candidates", &TransitionDiagram::candidates)
      .def("value_at", &TransitionDiagram::value_at, py::arg("lam"))
      .def("minimizers_at", &TransitionDiagram::minimizers_at, py::arg("lam"));
  m.def(
      "lower_envelope",
      [](const WeightedGraph& g, std::size_t n, DeviationNorm p, double tolerance, unsigned workers) {
        py::gil_scoped_release release;
        return lower_envelope(g, n, p, options(tolerance, workers));
      },
      py::arg("graph"), py::arg("blocks"), py::arg("p") = 2.0, py::arg("tolerance") = kDefaultTolerance,
      py::arg("workers") = 1u);

  py::class_<ForcingAnalysis>(m, "ForcingAnalysis")
      .def_readonly("edge", &ForcingAnalysis::edge)
      .def_readonly("feasible_together", &ForcingAnalysis::feasible_together)
      .def_readonly("feasible_apart", &ForcingAnalysis::feasible_apart)
      .def_readonly("together_min", &ForcingAnalysis::together_min)
      .def_readonly("apart_min", &ForcingAnalysis::apart_min)
      .def_readonly("threshold", &ForcingAnalysis::threshold);
  m.def(
      "force_together_threshold",
      [](const WeightedGraph& g, std::size_t n, double lam, DeviationNorm p, EdgeIndex edge, double tolerance) {
        return force_together_threshold(g, n, lam, p, edge, options(tolerance, 1));
      },
      py::arg("graph"), py::arg("blocks"), py::arg("lam"), py::arg("p"), py::arg("edge"),
      py::arg("tolerance") = kDefaultTolerance);
  m.def(
      "separation_feasibility",
      [](const WeightedGraph& g, std::size_t n, double lam, DeviationNorm p, EdgeIndex edge, double tolerance) {
        const auto s = separation_feasibility(g, n, lam, p, edge, options(tolerance, 1));
        return py::make_tuple(std::string(to_string(s.verdict)), s.forcing);
      },
      py::arg("graph"), py::arg("blocks"), py::arg("lam"), py::arg("p"), py::arg("edge"),
      py::arg("tolerance") = kDefaultTolerance, "Returns (verdict, ForcingAnalysis).");

  py::class_<LambdaRange>(m, "LambdaRange")
      .def_readonly("low", &LambdaRange::low)
      .def_readonly("high", &LambdaRange::high)
      .def_readonly("low_closed", &LambdaRange::low_closed)
      .def_readonly("high_closed", &LambdaRange::high_closed)
      .def("__repr__", &range_repr);
  py::class_<IsolationAnalysis>(m, "IsolationAnalysis")
      .def_readonly("vertex", &IsolationAnalysis::vertex)
      .def_readonly("boundary_weight", &IsolationAnalysis::boundary_weight)
      .def_readonly("feasible", &IsolationAnalysis::feasible)
      .def_readonly("lambda_interval", &IsolationAnalysis::lambda_interval)
      .def_readonly("scale_threshold", &IsolationAnalysis::scale_threshold);
  m.def(
      "isolation_analysis",
      [](const WeightedGraph& g, const std::string& vertex, DeviationNorm p) {
        return isolation_analysis(g, g.index_of(vertex), p);
      },
      py::arg("graph"), py::arg("vertex"), py::arg("p") = 2.0);
  m.def(
      "isolation_pigeonhole",
      [](const WeightedGraph& g, const std::string& vertex, std::size_t n) {
        const auto v = isolation_pigeonhole(g, g.index_of(vertex), n);
        return py::make_tuple(v.components, v.feasible);
      },
      py::arg("graph"), py::arg("vertex"), py::arg("blocks"), "Returns (components, feasible).");

  m.def("is_j_refining", &is_j_refining, py::arg("fine"), py::arg("coarse"), py::arg("j"));
  py::class_<InducedBlockCheck>(m, "InducedBlockCheck")
      .def_readonly("vertices", &InducedBlockCheck::vertices)
      .def_readonly("induced_energy", &InducedBlockCheck::induced_energy)
      .def_readonly("optimal_energy", &InducedBlockCheck::optimal_energy)
      .def_readonly("minimal", &InducedBlockCheck::minimal);
  py::class_<RefiningPair>(m, "RefiningPair")
      .def_readonly("fine", &RefiningPair::fine)
      .def_readonly("coarse", &RefiningPair::coarse)
      .def_readonly("blocks", &RefiningPair::blocks)
      .def_readonly("induced_minimality", &RefiningPair::induced_minimality);
  py::class_<RefinementReport>(m, "RefinementReport")
      .def_readonly("coarse", &RefinementReport::coarse)
      .def_readonly("fine", &RefinementReport::fine)
      .def_readonly("refining_pairs", &RefinementReport::refining_pairs);
  m.def(
      "refinement_gap",
      [](const WeightedGraph& g, std::size_t n, std::size_t j, double lam, DeviationNorm p) {
        py::gil_scoped_release release;
        return refinement_gap(g, n, j, lam, p);
      },
      py::arg("graph"), py::arg("blocks"), py::arg("j"), py::arg("lam"), py::arg("p") = 2.0);

  m.def("reference_examples", [] {
    std::vector<py::dict> out;
    for (const auto& c : run_reference_examples()) {
      py::dict d;
      d["criterion"] = c.criterion;
      d["fixture"] = c.fixture;
      d["name"] = c.name;
      d["passed"] = c.passed;
      d["detail"] = c.detail;
      out.push_back(std::move(d));
    }
    return out;
  });
}
