#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace districtor {

/// Absolute tolerance used for every energy and breakpoint comparison unless a
/// caller overrides it.
inline constexpr double kDefaultTolerance = 1e-9;

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

// Unvalidated graph description, as read from a graph file or assembled by hand.
// `line` is the 1-based source line, 0 when the record was not parsed from text.
struct VertexDecl {
  std::string id;
  double mass = 0.0;
  int line = 0;
};

struct EdgeDecl {
  std::string u;
  std::string v;
  double weight = 0.0;
  int line = 0;
};

struct GraphSpec {
  std::vector<VertexDecl> vertices;
  std::vector<EdgeDecl> edges;
};

enum class ViolationKind {
  kEmptyGraph,
  kDuplicateVertex,
  kNonPositiveMass,
  kUnknownEndpoint,
  kSelfLoop,
  kDuplicateEdge,
  kNonPositiveWeight,
  kDisconnected,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
  int line = 0;
};

/// Every violated structural assumption (finite, simple, undirected, connected,
/// positive weights). An empty result means the description is a valid graph.
std::vector<Violation> validate(const GraphSpec& spec);

/// Malformed or invalid graph input.
class GraphError : public std::invalid_argument {
 public:
  GraphError(const std::string& what, int line = 0)
      : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Finite, simple, undirected, connected graph with positive vertex masses and
/// positive edge weights. Immutable once built; vertex indices follow
/// declaration order.
class WeightedGraph {
 public:
  struct Vertex {
    std::string id;
    double mass;
  };
  struct Edge {
    VertexIndex u;
    VertexIndex v;
    double weight;
  };
  struct Incidence {
    VertexIndex neighbor;
    EdgeIndex edge;
  };

  /// Throws GraphError describing the first violation if `spec` is invalid.
  static WeightedGraph from_spec(const GraphSpec& spec);

  GraphSpec to_spec() const;

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Vertex& vertex(VertexIndex v) const { return vertices_.at(v); }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  std::span<const Incidence> incident(VertexIndex v) const { return adjacency_.at(v); }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  /// Throws std::out_of_range for an unknown id.
  VertexIndex index_of(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(VertexIndex a, VertexIndex b) const;

  double total_mass() const noexcept;

  WeightedGraph with_edge_weight(EdgeIndex e, double weight) const;

  /// Subgraph induced by `vertices` (kept in the given order). Throws
  /// GraphError if the induced subgraph is disconnected.
  WeightedGraph induced_subgraph(std::span<const VertexIndex> vertices) const;

 private:
  WeightedGraph() = default;

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Syntax-only parse of the line format; structural checks are left to
/// validate(). Throws GraphError with the offending line number.
GraphSpec parse_graph_spec(std::string_view text);

/// Parse and validate. Throws GraphError on the first problem found.
WeightedGraph parse_graph(std::string_view text);

/// Vertices first, then edges, both in declaration order, numbers as %.9g.
std::string serialize(const WeightedGraph& graph);

/// Multiply every mass and every edge weight by theta > 0.
WeightedGraph scale_weights(const WeightedGraph& graph, double theta);

}  // namespace districtor
