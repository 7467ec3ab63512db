#include "districtor/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace districtor {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kEmptyGraph: return "empty graph";
    case ViolationKind::kDuplicateVertex: return "duplicate vertex";
    case ViolationKind::kNonPositiveMass: return "non-positive mass";
    case ViolationKind::kUnknownEndpoint: return "unknown endpoint";
    case ViolationKind::kSelfLoop: return "loop";
    case ViolationKind::kDuplicateEdge: return "duplicate edge";
    case ViolationKind::kNonPositiveWeight: return "non-positive weight";
    case ViolationKind::kDisconnected: return "disconnected";
  }
  return "unknown";
}

namespace {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

std::vector<Violation> validate(const GraphSpec& spec) {
  std::vector<Violation> out;
  if (spec.vertices.empty()) {
    out.push_back({ViolationKind::kEmptyGraph, "graph has no vertices", 0});
  }

  std::unordered_map<std::string, std::size_t> index;
  for (const auto& v : spec.vertices) {
    if (!index.emplace(v.id, index.size()).second) {
      out.push_back({ViolationKind::kDuplicateVertex, "duplicate vertex '" + v.id + "'", v.line});
    }
    if (!(v.mass > 0.0) || !std::isfinite(v.mass)) {
      out.push_back({ViolationKind::kNonPositiveMass,
                     "vertex '" + v.id + "' has non-positive mass " + format_number(v.mass), v.line});
    }
  }

  std::vector<std::vector<std::size_t>> adjacency(index.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : spec.edges) {
    const auto a = index.find(e.u);
    const auto b = index.find(e.v);
    if (a == index.end() || b == index.end()) {
      const std::string& missing = a == index.end() ? e.u : e.v;
      out.push_back({ViolationKind::kUnknownEndpoint, "edge references unknown vertex '" + missing + "'", e.line});
      continue;
    }
    if (a->second == b->second) {
      out.push_back({ViolationKind::kSelfLoop, "loop at vertex '" + e.u + "'", e.line});
      continue;
    }
    const auto key = std::minmax(a->second, b->second);
    if (!seen.insert(key).second) {
      out.push_back({ViolationKind::kDuplicateEdge, "duplicate edge " + e.u + " " + e.v, e.line});
      continue;
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      out.push_back({ViolationKind::kNonPositiveWeight,
                     "edge " + e.u + " " + e.v + " has non-positive weight " + format_number(e.weight), e.line});
    }
    adjacency[a->second].push_back(b->second);
    adjacency[b->second].push_back(a->second);
  }

  if (!adjacency.empty()) {
    std::vector<bool> reached(adjacency.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    reached[0] = true;
    std::size_t count = 1;
    while (!frontier.empty()) {
      const auto v = frontier.front();
      frontier.pop();
      for (auto w : adjacency[v]) {
        if (!reached[w]) {
          reached[w] = true;
          ++count;
          frontier.push(w);
        }
      }
    }
    if (count != adjacency.size()) {
      out.push_back({ViolationKind::kDisconnected,
                     "graph is disconnected (" + std::to_string(count) + " of " +
                         std::to_string(adjacency.size()) + " vertices reachable)",
                     0});
    }
  }
  return out;
}

WeightedGraph WeightedGraph::from_spec(const GraphSpec& spec) {
  if (const auto violations = validate(spec); !violations.empty()) {
    throw GraphError(violations.front().message, violations.front().line);
  }
  WeightedGraph g;
  g.vertices_.reserve(spec.vertices.size());
  std::unordered_map<std::string, VertexIndex> index;
  for (const auto& v : spec.vertices) {
    index.emplace(v.id, g.vertices_.size());
    g.vertices_.push_back({v.id, v.mass});
  }
  g.adjacency_.resize(g.vertices_.size());
  for (const auto& e : spec.edges) {
    const auto u = index.at(e.u);
    const auto v = index.at(e.v);
    const EdgeIndex id = g.edges_.size();
    g.edges_.push_back({u, v, e.weight});
    g.adjacency_[u].push_back({v, id});
    g.adjacency_[v].push_back({u, id});
  }
  return g;
}

GraphSpec WeightedGraph::to_spec() const {
  GraphSpec spec;
  for (const auto& v : vertices_) spec.vertices.push_back({v.id, v.mass, 0});
  for (const auto& e : edges_) {
    spec.edges.push_back({vertices_[e.u].id, vertices_[e.v].id, e.weight, 0});
  }
  return spec;
}

std::optional<VertexIndex> WeightedGraph::find_vertex(std::string_view id) const {
  for (VertexIndex i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].id == id) return i;
  }
  return std::nullopt;
}

VertexIndex WeightedGraph::index_of(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw std::out_of_range("unknown vertex '" + std::string(id) + "'");
}

std::optional<EdgeIndex> WeightedGraph::find_edge(VertexIndex a, VertexIndex b) const {
  if (a >= vertices_.size()) return std::nullopt;
  for (const auto& inc : adjacency_[a]) {
    if (inc.neighbor == b) return inc.edge;
  }
  return std::nullopt;
}

double WeightedGraph::total_mass() const noexcept {
  double sum = 0.0;
  for (const auto& v : vertices_) sum += v.mass;
  return sum;
}

WeightedGraph WeightedGraph::with_edge_weight(EdgeIndex e, double weight) const {
  if (e >= edges_.size()) throw std::out_of_range("edge index out of range");
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("edge weight must be positive and finite");
  }
  WeightedGraph g = *this;
  g.edges_[e].weight = weight;
  return g;
}

WeightedGraph WeightedGraph::induced_subgraph(std::span<const VertexIndex> vertices) const {
  GraphSpec spec;
  std::vector<bool> member(vertices_.size(), false);
  for (auto v : vertices) {
    const auto& vx = vertices_.at(v);
    member[v] = true;
    spec.vertices.push_back({vx.id, vx.mass, 0});
  }
  for (const auto& e : edges_) {
    if (member[e.u] && member[e.v]) {
      spec.edges.push_back({vertices_[e.u].id, vertices_[e.v].id, e.weight, 0});
    }
  }
  return from_spec(spec);
}

namespace {

double parse_number(std::string_view token, int line) {
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw GraphError("expected a decimal number, got '" + std::string(token) + "'", line);
  }
  return value;
}

}  // namespace

GraphSpec parse_graph_spec(std::string_view text) {
  GraphSpec spec;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok[0].front() == '#') continue;

    if (tok[0] == "v") {
      if (tok.size() != 3) throw GraphError("vertex record needs 'v <id> <mass>'", line);
      spec.vertices.push_back({tok[1], parse_number(tok[2], line), line});
    } else if (tok[0] == "e") {
      if (tok.size() != 4) throw GraphError("edge record needs 'e <id1> <id2> <weight>'", line);
      spec.edges.push_back({tok[1], tok[2], parse_number(tok[3], line), line});
    } else {
      throw GraphError("unknown record type '" + tok[0] + "'", line);
    }
  }
  return spec;
}

WeightedGraph parse_graph(std::string_view text) {
  return WeightedGraph::from_spec(parse_graph_spec(text));
}

std::string serialize(const WeightedGraph& graph) {
  std::string out;
  for (const auto& v : graph.vertices()) {
    out += "v " + v.id + " " + format_number(v.mass) + "\n";
  }
  for (const auto& e : graph.edges()) {
    out += "e " + graph.vertex(e.u).id + " " + graph.vertex(e.v).id + " " + format_number(e.weight) + "\n";
  }
  return out;
}

WeightedGraph scale_weights(const WeightedGraph& graph, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("scale factor must be positive");
  }
  GraphSpec spec = graph.to_spec();
  for (auto& v : spec.vertices) v.mass *= theta;
  for (auto& e : spec.edges) e.weight *= theta;
  return WeightedGraph::from_spec(spec);
}

}  // namespace districtor
