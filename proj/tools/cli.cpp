#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "districtor/energy.hpp"
#include "districtor/fixtures.hpp"
#include "districtor/graph.hpp"
#include "districtor/lambda_analysis.hpp"
#include "districtor/partition.hpp"
#include "districtor/reference_examples.hpp"
#include "districtor/refinement.hpp"
#include "districtor/solver.hpp"
#include "districtor/weight_engineering.hpp"

namespace districtor::cli {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string fixture;
  std::string input;
  std::size_t n = 2;
  std::size_t j = 2;
  std::string lambda = "1/2";
  std::string p = "2";
  std::string format = "json";
  double tol = kDefaultTolerance;
  unsigned workers = 1;
  bool all_ties = true;
  bool stats = false;
  double M = 2.0;
  double eps = 0.1;
  double fig_p = 2.0;
  std::string edge;
  std::string vertex;
  std::size_t steps = 11;
};

/// Raised for a well-formed request whose answer is "no such partition".
struct Infeasible {
  std::string message;
};

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

Json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(std::string_view text, const char* what) {
  const auto s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("malformed ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

/// A decimal literal or a quotient `a/b` of two decimal literals.
double parse_lambda(std::string_view text) {
  const auto slash = text.find('/');
  double value;
  if (slash == std::string_view::npos) {
    value = parse_real(text, "lambda");
  } else {
    const double num = parse_real(text.substr(0, slash), "lambda numerator");
    const double den = parse_real(text.substr(slash + 1), "lambda denominator");
    if (den == 0.0) throw std::invalid_argument("lambda denominator is zero");
    value = num / den;
  }
  check_lambda(value);
  return value;
}

struct Source {
  std::string name;
  WeightedGraph graph;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require_one_source(const RunConfig& cfg) {
  if (cfg.fixture.empty() == cfg.input.empty()) {
    throw std::invalid_argument("give exactly one of --fixture and --input");
  }
}

FixtureParams fixture_params(const RunConfig& cfg) { return {cfg.M, cfg.eps, cfg.fig_p}; }

Source load_source(const RunConfig& cfg) {
  require_one_source(cfg);
  if (!cfg.fixture.empty()) {
    auto f = load_fixture(cfg.fixture, fixture_params(cfg));
    return {f.name, std::move(f.graph)};
  }
  return {cfg.input, parse_graph(read_file(cfg.input))};
}

SolveOptions solve_options(const RunConfig& cfg) { return {cfg.tol, cfg.workers}; }

EdgeIndex resolve_edge(const WeightedGraph& g, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw std::invalid_argument("--edge takes exactly one vertex pair 'a,b'");
  }
  const auto a = g.index_of(trim(std::string_view(text).substr(0, comma)));
  const auto b = g.index_of(trim(std::string_view(text).substr(comma + 1)));
  const auto e = g.find_edge(a, b);
  if (!e) throw std::out_of_range("no edge between '" + g.vertex(a).id + "' and '" + g.vertex(b).id + "'");
  return *e;
}

VertexIndex resolve_vertex(const WeightedGraph& g, const std::string& id) {
  if (id.empty()) throw std::invalid_argument("--vertex is required");
  return g.index_of(id);
}

Json edge_ids(const WeightedGraph& g, EdgeIndex e) {
  const auto& edge = g.edge(e);
  return Json::array({g.vertex(edge.u).id, g.vertex(edge.v).id});
}

Json partition_list(const WeightedGraph& g, const std::vector<Partition>& parts) {
  Json arr = Json::array();
  for (const auto& p : parts) arr.push_back(format_partition(g, p));
  return arr;
}

std::string join_partitions(const WeightedGraph& g, const std::vector<Partition>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ';';
    s += format_partition(g, parts[i]);
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

Json minimizer_json(const WeightedGraph& g, const Minimizer& m) {
  Json cut_edges = Json::array();
  for (auto e : cut_set(g, m.partition)) cut_edges.push_back(edge_ids(g, e));
  return Json{{"partition", format_partition(g, m.partition)},
              {"cut", number(m.cut)},
              {"deviation", number(m.deviation)},
              {"total", number(m.total)},
              {"cut_edges", std::move(cut_edges)}};
}

Json minimizer_set_json(const WeightedGraph& g, const MinimizerSet& set, bool all_ties, bool stats) {
  Json j{{"optimal_value", number(set.optimal_value)}, {"minimizer_count", set.minimizers.size()}};
  Json list = Json::array();
  for (const auto& m : set.minimizers) {
    list.push_back(minimizer_json(g, m));
    if (!all_ties) break;
  }
  j["minimizers"] = std::move(list);
  if (stats) j["partitions_examined"] = set.partitions_examined;
  return j;
}

std::string dot_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '\n') {
      q += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + '"';
}

/// Graphviz rendering; vertices are coloured by block and cut edges are
/// dashed and labelled.
std::string to_dot(const WeightedGraph& g, const Partition* partition, const std::string& title) {
  std::ostringstream os;
  os << "graph districtor {\n";
  os << "  graph [label=" << dot_quote(title) << "];\n";
  os << "  node [shape=circle, style=filled, colorscheme=set312];\n";
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& vx = g.vertex(v);
    os << "  " << dot_quote(vx.id) << " [label=" << dot_quote(vx.id + "\n" + fmt(vx.mass));
    if (partition) os << ", fillcolor=" << (partition->block_of(v) % 12) + 1 << ", block=" << partition->block_of(v);
    os << "];\n";
  }
  for (const auto& e : g.edges()) {
    const bool cut = partition && !partition->same_block(e.u, e.v);
    os << "  " << dot_quote(g.vertex(e.u).id) << " -- " << dot_quote(g.vertex(e.v).id) << " [label="
       << dot_quote(fmt(e.weight) + (cut ? " cut" : ""));
    if (cut) os << ", style=dashed, color=red";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int run() {
    const auto& c = cfg_.command;
    if (c == "validate") return validate_cmd();
    if (c == "solve") return solve_cmd();
    if (c == "sweep") return sweep_cmd();
    if (c == "transitions") return transitions_cmd();
    if (c == "force-together") return forcing_cmd(false);
    if (c == "separate") return forcing_cmd(true);
    if (c == "isolate") return isolate_cmd();
    if (c == "pigeonhole") return pigeonhole_cmd();
    if (c == "refine-check") return refine_cmd();
    if (c == "paper-examples") return examples_cmd();
    throw std::invalid_argument("unknown command '" + c + "'");
  }

 private:
  void unsupported_format() const {
    throw std::invalid_argument("format '" + cfg_.format + "' is not available for " + cfg_.command);
  }
  bool is(const char* f) const { return cfg_.format == f; }
  void emit(const Json& j) { out_ << j.dump(2) << '\n'; }

  Json header(const Source& src) const {
    return Json{{"command", cfg_.command}, {"graph", src.name}};
  }

  int validate_cmd() {
    require_one_source(cfg_);
    GraphSpec spec;
    std::string name;
    if (!cfg_.fixture.empty()) {
      auto f = load_fixture(cfg_.fixture, fixture_params(cfg_));
      spec = f.graph.to_spec();
      name = f.name;
    } else {
      spec = parse_graph_spec(read_file(cfg_.input));
      name = cfg_.input;
    }
    const auto violations = validate(spec);
    if (is("json")) {
      Json list = Json::array();
      for (const auto& v : violations) {
        list.push_back({{"kind", to_string(v.kind)}, {"message", v.message}, {"line", v.line}});
      }
      emit(Json{{"command", cfg_.command},
                {"graph", name},
                {"valid", violations.empty()},
                {"vertices", spec.vertices.size()},
                {"edges", spec.edges.size()},
                {"violations", std::move(list)}});
    } else if (is("csv")) {
      out_ << "kind,line,message\n";
      for (const auto& v : violations) {
        out_ << to_string(v.kind) << ',' << v.line << ',' << csv_field(v.message) << '\n';
      }
    } else if (is("dot")) {
      if (!violations.empty()) unsupported_format();
      out_ << to_dot(WeightedGraph::from_spec(spec), nullptr, name);
    } else {
      out_ << name << ": " << spec.vertices.size() << " vertices, " << spec.edges.size() << " edges, "
           << (violations.empty() ? "valid" : "invalid") << '\n';
      for (const auto& v : violations) out_ << "  " << to_string(v.kind) << ": " << v.message << '\n';
    }
    if (!violations.empty()) {
      err_ << "invalid graph: " << violations.front().message << '\n';
      return kExitInputError;
    }
    return kExitOk;
  }

  int solve_cmd() {
    const auto src = load_source(cfg_);
    const double lambda = parse_lambda(cfg_.lambda);
    const auto p = DeviationNorm::parse(cfg_.p);
    const auto set = minimize(src.graph, cfg_.n, lambda, p, solve_options(cfg_));
    const auto& g = src.graph;
    if (is("json")) {
      Json j = header(src);
      j["blocks"] = cfg_.n;
      j["lambda"] = number(lambda);
      j["p"] = p.to_string();
      j["tolerance"] = number(cfg_.tol);
      j.update(minimizer_set_json(g, set, cfg_.all_ties, cfg_.stats));
      emit(j);
    } else if (is("csv")) {
      out_ << "partition,cut,deviation,total\n";
      for (const auto& m : set.minimizers) {
        out_ << csv_field(format_partition(g, m.partition)) << ',' << fmt(m.cut) << ',' << fmt(m.deviation) << ','
             << fmt(m.total) << '\n';
        if (!cfg_.all_ties) break;
      }
    } else if (is("dot")) {
      const auto& best = set.minimizers.front();
      out_ << to_dot(g, &best.partition,
                     src.name + " N=" + std::to_string(cfg_.n) + " lambda=" + fmt(lambda) + " F=" + fmt(best.total));
    } else {
      out_ << "optimal value " << fmt(set.optimal_value) << " (" << set.minimizers.size() << " minimizer"
           << (set.minimizers.size() == 1 ? "" : "s") << ")\n";
      for (const auto& m : set.minimizers) {
        out_ << "  " << format_partition(g, m.partition) << "  cut " << fmt(m.cut) << "  deviation "
             << fmt(m.deviation) << "  total " << fmt(m.total) << '\n';
        if (!cfg_.all_ties) break;
      }
      if (cfg_.stats) out_ << "partitions examined " << set.partitions_examined << '\n';
    }
    return kExitOk;
  }

  int sweep_cmd() {
    if (cfg_.steps < 2) throw std::invalid_argument("--steps must be at least 2");
    const auto src = load_source(cfg_);
    const auto p = DeviationNorm::parse(cfg_.p);
    const auto d = lower_envelope(src.graph, cfg_.n, p, solve_options(cfg_));
    const auto& g = src.graph;
    std::vector<double> grid(cfg_.steps);
    for (std::size_t i = 0; i < cfg_.steps; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(cfg_.steps - 1);
    if (is("json")) {
      Json j = header(src);
      j["blocks"] = cfg_.n;
      j["p"] = p.to_string();
      j["tolerance"] = number(cfg_.tol);
      Json rows = Json::array();
      for (double x : grid) {
        rows.push_back({{"lambda", number(x)}, {"value", number(d.value_at(x))},
                        {"minimizers", partition_list(g, d.minimizers_at(x))}});
      }
      j["samples"] = std::move(rows);
      emit(j);
    } else if (is("csv")) {
      out_ << "lambda,value,minimizers\n";
      for (double x : grid) {
        out_ << fmt(x) << ',' << fmt(d.value_at(x)) << ',' << csv_field(join_partitions(g, d.minimizers_at(x)))
             << '\n';
      }
    } else if (is("text")) {
      for (double x : grid) {
        out_ << "lambda " << fmt(x) << "  value " << fmt(d.value_at(x)) << "  " << join_partitions(g, d.minimizers_at(x))
             << '\n';
      }
    } else {
      unsupported_format();
    }
    return kExitOk;
  }

  int transitions_cmd() {
    const auto src = load_source(cfg_);
    const auto p = DeviationNorm::parse(cfg_.p);
    const auto d = lower_envelope(src.graph, cfg_.n, p, solve_options(cfg_));
    const auto& g = src.graph;
    if (is("json")) {
      Json j = header(src);
      j["blocks"] = cfg_.n;
      j["p"] = p.to_string();
      j["tolerance"] = number(cfg_.tol);
      Json bps = Json::array();
      for (double b : d.breakpoints) bps.push_back(number(b));
      j["breakpoints"] = std::move(bps);
      j["lambda_first"] = number(d.first.lambda);
      j["first_witnesses"] = partition_list(g, d.first.witnesses);
      j["lambda_last"] = number(d.last.lambda);
      j["last_witnesses"] = partition_list(g, d.last.witnesses);
      Json intervals = Json::array();
      for (const auto& iv : d.intervals) {
        intervals.push_back({{"lambda_low", number(iv.low)},
                             {"lambda_high", number(iv.high)},
                             {"cut", number(iv.cut)},
                             {"deviation", number(iv.deviation)},
                             {"minimizers", partition_list(g, iv.minimizers)}});
      }
      j["intervals"] = std::move(intervals);
      Json points = Json::array();
      for (const auto& pt : d.points) {
        points.push_back({{"lambda", number(pt.lambda)},
                          {"value", number(pt.value)},
                          {"minimizers", partition_list(g, pt.minimizers)}});
      }
      j["points"] = std::move(points);
      emit(j);
    } else if (is("csv")) {
      out_ << "lambda_low,lambda_high,minimizers,cut,deviation\n";
      for (const auto& iv : d.intervals) {
        out_ << fmt(iv.low) << ',' << fmt(iv.high) << ',' << csv_field(join_partitions(g, iv.minimizers)) << ','
             << fmt(iv.cut) << ',' << fmt(iv.deviation) << '\n';
      }
    } else if (is("text")) {
      out_ << "breakpoints:";
      for (double b : d.breakpoints) out_ << ' ' << fmt(b);
      out_ << "\nfirst transition " << fmt(d.first.lambda) << "  " << join_partitions(g, d.first.witnesses) << '\n';
      out_ << "last transition " << fmt(d.last.lambda) << "  " << join_partitions(g, d.last.witnesses) << '\n';
      for (const auto& pt : d.points) {
        out_ << "at " << fmt(pt.lambda) << "  value " << fmt(pt.value) << "  " << join_partitions(g, pt.minimizers)
             << '\n';
      }
      for (const auto& iv : d.intervals) {
        out_ << "(" << fmt(iv.low) << ", " << fmt(iv.high) << ")  cut " << fmt(iv.cut) << "  deviation "
             << fmt(iv.deviation) << "  " << join_partitions(g, iv.minimizers) << '\n';
      }
    } else {
      unsupported_format();
    }
    return kExitOk;
  }

  int forcing_cmd(bool separate) {
    const auto src = load_source(cfg_);
    const double lambda = parse_lambda(cfg_.lambda);
    const auto p = DeviationNorm::parse(cfg_.p);
    if (cfg_.edge.empty()) throw std::invalid_argument("--edge is required");
    const auto& g = src.graph;
    const auto e = resolve_edge(g, cfg_.edge);
    std::optional<SeparationVerdict> verdict;
    ForcingAnalysis fa;
    if (separate) {
      const auto sa = separation_feasibility(g, cfg_.n, lambda, p, e, solve_options(cfg_));
      fa = sa.forcing;
      verdict = sa.verdict;
    } else {
      fa = force_together_threshold(g, cfg_.n, lambda, p, e, solve_options(cfg_));
    }
    if (is("json")) {
      Json j = header(src);
      j["edge"] = edge_ids(g, e);
      j["weight"] = number(g.edge(e).weight);
      j["blocks"] = cfg_.n;
      j["lambda"] = number(lambda);
      j["p"] = p.to_string();
      j["tolerance"] = number(cfg_.tol);
      j["feasible_together"] = fa.feasible_together;
      j["feasible_apart"] = fa.feasible_apart;
      j["K"] = optional_number(fa.together_min);
      j["D"] = optional_number(fa.apart_min);
      j["threshold"] = optional_number(fa.threshold);
      if (verdict) j["verdict"] = to_string(*verdict);
      emit(j);
    } else if (is("text")) {
      auto opt = [](const std::optional<double>& x) { return x ? fmt(*x) : std::string("none"); };
      out_ << "K " << opt(fa.together_min) << "  D " << opt(fa.apart_min) << "  threshold " << opt(fa.threshold)
           << '\n';
      if (verdict) out_ << "verdict " << to_string(*verdict) << '\n';
    } else {
      unsupported_format();
    }
    const auto& edge = g.edge(e);
    const std::string pair = "'" + g.vertex(edge.u).id + "' and '" + g.vertex(edge.v).id + "'";
    if (!separate && !fa.feasible_together) throw Infeasible{"Infeasible: no N-partition keeps " + pair + " together"};
    if (verdict == SeparationVerdict::kImpossible) throw Infeasible{"Impossible: threshold non-positive"};
    if (verdict == SeparationVerdict::kNoSeparatingPartition) {
      throw Infeasible{"Infeasible: no N-partition separates " + pair};
    }
    return kExitOk;
  }

  int isolate_cmd() {
    if (cfg_.n != 2) {
      throw std::invalid_argument(
          "isolation is analysed for 2-partitions only; isolating a vertex in an N-partition is an open problem");
    }
    const auto src = load_source(cfg_);
    const auto p = DeviationNorm::parse(cfg_.p);
    const auto& g = src.graph;
    const auto v = resolve_vertex(g, cfg_.vertex);
    const auto ia = isolation_analysis(g, v, p, solve_options(cfg_));
    if (is("json")) {
      Json j = header(src);
      j["vertex"] = g.vertex(v).id;
      j["p"] = p.to_string();
      j["tolerance"] = number(cfg_.tol);
      j["boundary_weight"] = number(ia.boundary_weight);
      j["feasible"] = ia.feasible;
      if (ia.lambda_interval) {
        const auto& r = *ia.lambda_interval;
        j["lambda_interval"] = {{"low", number(r.low)},
                                {"high", number(r.high)},
                                {"low_closed", r.low_closed},
                                {"high_closed", r.high_closed}};
      } else {
        j["lambda_interval"] = nullptr;
      }
      j["scale_threshold"] = optional_number(ia.scale_threshold);
      emit(j);
    } else if (is("text")) {
      out_ << "vertex " << g.vertex(v).id << "  boundary weight " << fmt(ia.boundary_weight) << "  "
           << (ia.feasible ? "feasible" : "infeasible") << '\n';
      if (ia.lambda_interval) {
        const auto& r = *ia.lambda_interval;
        out_ << "minimal for lambda in " << (r.low_closed ? '[' : '(') << fmt(r.low) << ", " << fmt(r.high)
             << (r.high_closed ? ']' : ')') << '\n';
      } else if (ia.feasible) {
        out_ << "minimal for no lambda\n";
      }
      if (ia.scale_threshold) out_ << "scale threshold " << fmt(*ia.scale_threshold) << '\n';
    } else {
      unsupported_format();
    }
    if (!ia.feasible) throw Infeasible{"Infeasible: removing '" + g.vertex(v).id + "' disconnects the graph"};
    return kExitOk;
  }

  int pigeonhole_cmd() {
    const auto src = load_source(cfg_);
    const auto& g = src.graph;
    const auto v = resolve_vertex(g, cfg_.vertex);
    const auto pv = isolation_pigeonhole(g, v, cfg_.n);
    if (is("json")) {
      Json j = header(src);
      j["vertex"] = g.vertex(v).id;
      j["blocks"] = cfg_.n;
      j["components"] = pv.components;
      j["feasible"] = pv.feasible;
      emit(j);
    } else if (is("text")) {
      out_ << "vertex " << g.vertex(v).id << "  components " << pv.components << "  "
           << (pv.feasible ? "feasible" : "infeasible") << '\n';
    } else {
      unsupported_format();
    }
    if (!pv.feasible) {
      throw Infeasible{"Infeasible: '" + g.vertex(v).id + "' cannot be a block of a " + std::to_string(cfg_.n) +
                       "-partition"};
    }
    return kExitOk;
  }

  int refine_cmd() {
    const auto src = load_source(cfg_);
    const double lambda = parse_lambda(cfg_.lambda);
    const auto p = DeviationNorm::parse(cfg_.p);
    const auto& g = src.graph;
    const auto rep = refinement_gap(g, cfg_.n, cfg_.j, lambda, p, solve_options(cfg_));
    if (is("json")) {
      Json j = header(src);
      j["blocks"] = cfg_.n;
      j["j"] = cfg_.j;
      j["lambda"] = number(lambda);
      j["p"] = p.to_string();
      j["tolerance"] = number(cfg_.tol);
      j["coarse"] = minimizer_set_json(g, rep.coarse, true, cfg_.stats);
      j["fine"] = minimizer_set_json(g, rep.fine, true, cfg_.stats);
      Json elig = Json::array();
      for (const auto& e : rep.eligibility) {
        elig.push_back({{"partition", format_partition(g, e.coarse)},
                        {"every_block_has_j_vertices", e.every_block_has_j_vertices}});
      }
      j["eligibility"] = std::move(elig);
      Json pairs = Json::array();
      for (const auto& pr : rep.refining_pairs) {
        Json blocks = Json::array();
        for (const auto& b : pr.blocks) {
          const auto sub = g.induced_subgraph(b.vertices);
          Json ids = Json::array();
          for (auto v : b.vertices) ids.push_back(g.vertex(v).id);
          blocks.push_back({{"vertices", std::move(ids)},
                            {"induced", format_partition(sub, b.induced)},
                            {"induced_energy", number(b.induced_energy)},
                            {"optimal_energy", number(b.optimal_energy)},
                            {"optimal", partition_list(sub, b.optimal)},
                            {"minimal", b.minimal}});
        }
        pairs.push_back({{"fine", format_partition(g, pr.fine)},
                         {"coarse", format_partition(g, pr.coarse)},
                         {"induced_minimality", pr.induced_minimality},
                         {"blocks", std::move(blocks)}});
      }
      j["refining_pairs"] = std::move(pairs);
      emit(j);
    } else if (is("text")) {
      out_ << "minimal " << cfg_.n << "-partitions (" << fmt(rep.coarse.optimal_value)
           << "): " << join_partitions(g, rep.coarse.partitions()) << '\n';
      out_ << "minimal " << cfg_.n * cfg_.j << "-partitions (" << fmt(rep.fine.optimal_value)
           << "): " << join_partitions(g, rep.fine.partitions()) << '\n';
      if (rep.refining_pairs.empty()) out_ << "no minimal fine partition refines a minimal coarse one\n";
      for (const auto& pr : rep.refining_pairs) {
        out_ << format_partition(g, pr.fine) << " refines " << format_partition(g, pr.coarse)
             << (pr.induced_minimality ? "; every induced partition is minimal\n"
                                       : "; some induced partition is not minimal\n");
      }
    } else {
      unsupported_format();
    }
    return kExitOk;
  }

  int examples_cmd() {
    const auto checks = run_reference_examples(solve_options(cfg_));
    const auto passed = static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const ReferenceCheck& c) { return c.passed; }));
    if (is("json")) {
      Json list = Json::array();
      for (const auto& c : checks) {
        list.push_back({{"criterion", c.criterion},
                        {"fixture", c.fixture},
                        {"check", c.name},
                        {"passed", c.passed},
                        {"detail", c.detail}});
      }
      emit(Json{{"command", cfg_.command},
                {"passed", passed},
                {"total", checks.size()},
                {"checks", std::move(list)}});
    } else if (is("csv")) {
      out_ << "criterion,fixture,check,passed,detail\n";
      for (const auto& c : checks) {
        out_ << c.criterion << ',' << csv_field(c.fixture) << ',' << csv_field(c.name) << ','
             << (c.passed ? "PASS" : "FAIL") << ',' << csv_field(c.detail) << '\n';
      }
    } else if (is("text")) {
      for (const auto& c : checks) {
        out_ << (c.passed ? "PASS" : "FAIL") << "  AC" << c.criterion << "  " << c.fixture << "  " << c.name;
        if (!c.detail.empty()) out_ << "  (" << c.detail << ')';
        out_ << '\n';
      }
      out_ << passed << '/' << checks.size() << " checks passed\n";
    } else {
      unsupported_format();
    }
    return passed == checks.size() ? kExitOk : kExitInfeasible;
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

enum OptionGroup : unsigned {
  kGraph = 1u << 0,
  kBlocks = 1u << 1,
  kLambda = 1u << 2,
  kNorm = 1u << 3,
  kSearch = 1u << 4,
  kRefine = 1u << 5,
  kEdge = 1u << 6,
  kVertex = 1u << 7,
  kSteps = 1u << 8,
};

void add_options(CLI::App* sub, RunConfig& cfg, unsigned groups) {
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "dot", "text"}))
      ->capture_default_str();
  if (groups & kGraph) {
    sub->add_option("--fixture", cfg.fixture, "Built-in graph (FIG1, FIG1-HAT, FIG2, FIG2-HAT, FIG3 ... FIG7)");
    sub->add_option("--input", cfg.input, "Graph file");
    sub->add_option("--M", cfg.M, "FIG3 mass factor (> 1)")->capture_default_str();
    sub->add_option("--eps", cfg.eps, "FIG3 light edge weight (> 0)")->capture_default_str();
    sub->add_option("--fig-p", cfg.fig_p, "FIG6 exponent the edge factor is tuned for")->capture_default_str();
  }
  if (groups & kBlocks) {
    sub->add_option("--n", cfg.n, "Number of blocks")->check(CLI::PositiveNumber)->capture_default_str();
  }
  if (groups & kLambda) sub->add_option("--lambda", cfg.lambda, "Lambda in [0, 1], decimal or a/b")->capture_default_str();
  if (groups & kNorm) sub->add_option("--p", cfg.p, "Deviation exponent >= 1, or inf")->capture_default_str();
  if (groups & kSearch) {
    sub->add_option("--tol", cfg.tol, "Absolute tie tolerance")
        ->envname("DISTRICTOR_TOL")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--workers", cfg.workers, "Search threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    sub->add_flag("--all-ties,!--no-all-ties", cfg.all_ties, "Report every tied minimizer (default on)");
    sub->add_flag("--stats", cfg.stats, "Include search statistics");
  }
  if (groups & kRefine) sub->add_option("--j", cfg.j, "Refinement factor")->check(CLI::PositiveNumber)->capture_default_str();
  if (groups & kEdge) sub->add_option("--edge", cfg.edge, "Target edge as 'a,b'");
  if (groups & kVertex) sub->add_option("--vertex", cfg.vertex, "Target vertex id");
  if (groups & kSteps) sub->add_option("--steps", cfg.steps, "Grid points on [0, 1]")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact minimization of lambda * cut + (1 - lambda) * deviation over connected graph partitions",
               "districtor"};
  app.require_subcommand(1);

  struct Spec {
    const char* name;
    const char* help;
    unsigned groups;
  };
  const unsigned core = kGraph | kBlocks | kNorm | kSearch;
  const Spec specs[] = {
      {"validate", "Check a graph against the model assumptions", kGraph},
      {"solve", "All minimal N-partitions at one lambda", core | kLambda},
      {"sweep", "Envelope value and minimizers on a lambda grid", core | kSteps},
      {"transitions", "Breakpoints and minimizers of the lambda envelope", core},
      {"force-together", "Edge weight above which the endpoints share a block", core | kLambda | kEdge},
      {"separate", "Whether lowering an edge weight can split its endpoints", core | kLambda | kEdge},
      {"isolate", "Singleton 2-partition analysis for one vertex", core | kVertex},
      {"pigeonhole", "Component count test for isolating a vertex", kGraph | kBlocks | kVertex},
      {"refine-check", "Compare minimal N- and jN-partitions", core | kLambda | kRefine},
      {"paper-examples", "Reproduce the reference figure values", kSearch},
  };
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_options(sub, cfg, s.groups);
    sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    Runner runner(cfg, out, err);
    return runner.run();
  } catch (const Infeasible& e) {
    err << e.message << '\n';
    return kExitInfeasible;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace districtor::cli
