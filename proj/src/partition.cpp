#include "districtor/partition.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "search.hpp"

namespace districtor {

Partition::Partition(std::span<const BlockLabel> labels) {
  if (labels.empty()) throw std::invalid_argument("partition of an empty vertex set");
  std::map<BlockLabel, BlockLabel> relabel;
  labels_.reserve(labels.size());
  for (auto raw : labels) {
    auto [it, inserted] = relabel.emplace(raw, static_cast<BlockLabel>(relabel.size()));
    labels_.push_back(it->second);
  }
  block_count_ = relabel.size();
}

Partition::Partition(std::vector<BlockLabel> labels) : Partition(std::span<const BlockLabel>(labels)) {}

Partition Partition::from_blocks(std::size_t vertex_count, const std::vector<std::vector<VertexIndex>>& blocks) {
  constexpr auto kUnset = static_cast<BlockLabel>(-1);
  std::vector<BlockLabel> labels(vertex_count, kUnset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("partition block " + std::to_string(b) + " is empty");
    for (auto v : blocks[b]) {
      if (v >= vertex_count) throw std::out_of_range("vertex index out of range");
      if (labels[v] != kUnset) throw std::invalid_argument("blocks are not disjoint");
      labels[v] = static_cast<BlockLabel>(b);
    }
  }
  if (std::find(labels.begin(), labels.end(), kUnset) != labels.end()) {
    throw std::invalid_argument("blocks do not cover every vertex");
  }
  return Partition(std::move(labels));
}

std::vector<VertexIndex> Partition::block(BlockLabel b) const {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == b) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<VertexIndex>> Partition::blocks() const {
  std::vector<std::vector<VertexIndex>> out(block_count_);
  for (VertexIndex v = 0; v < labels_.size(); ++v) out[labels_[v]].push_back(v);
  return out;
}

std::string_view to_string(PartitionViolationKind kind) {
  switch (kind) {
    case PartitionViolationKind::kEmptyBlock: return "emptiness";
    case PartitionViolationKind::kDisjointness: return "disjointness";
    case PartitionViolationKind::kCoverage: return "coverage";
    case PartitionViolationKind::kConnectivity: return "connectivity";
  }
  return "unknown";
}

namespace {

bool block_connected(const WeightedGraph& graph, const std::vector<VertexIndex>& block,
                     const std::vector<bool>& member) {
  if (block.empty()) return false;
  std::vector<bool> reached(graph.vertex_count(), false);
  std::queue<VertexIndex> frontier;
  frontier.push(block.front());
  reached[block.front()] = true;
  std::size_t count = 1;
  while (!frontier.empty()) {
    const auto v = frontier.front();
    frontier.pop();
    for (const auto& inc : graph.incident(v)) {
      if (member[inc.neighbor] && !reached[inc.neighbor]) {
        reached[inc.neighbor] = true;
        ++count;
        frontier.push(inc.neighbor);
      }
    }
  }
  return count == block.size();
}

std::string describe(const WeightedGraph& graph, const std::vector<VertexIndex>& block) {
  std::string out = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i > 0) out += ",";
    out += graph.vertex(block[i]).id;
  }
  return out + "}";
}

}  // namespace

PartitionCheck check_partition(const WeightedGraph& graph, const std::vector<std::vector<VertexIndex>>& blocks) {
  PartitionCheck check;
  const auto n = graph.vertex_count();
  std::vector<int> hits(n, 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) {
      check.violations.push_back({PartitionViolationKind::kEmptyBlock, "block " + std::to_string(b) + " is empty"});
    }
    for (auto v : blocks[b]) {
      if (v >= n) throw std::out_of_range("vertex index " + std::to_string(v) + " out of range");
      ++hits[v];
    }
  }
  for (VertexIndex v = 0; v < n; ++v) {
    if (hits[v] > 1) {
      check.violations.push_back({PartitionViolationKind::kDisjointness,
                                  "vertex '" + graph.vertex(v).id + "' appears in more than one block"});
    } else if (hits[v] == 0) {
      check.violations.push_back({PartitionViolationKind::kCoverage,
                                  "vertex '" + graph.vertex(v).id + "' is in no block"});
    }
  }
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    std::vector<bool> member(n, false);
    std::vector<VertexIndex> unique;
    for (auto v : block) {
      if (!member[v]) unique.push_back(v);
      member[v] = true;
    }
    if (!block_connected(graph, unique, member)) {
      check.violations.push_back({PartitionViolationKind::kConnectivity,
                                  "block " + describe(graph, unique) + " is not connected"});
    }
  }
  check.valid = check.violations.empty();
  return check;
}

PartitionCheck check_partition(const WeightedGraph& graph, const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::vector<VertexIndex>> indexed;
  indexed.reserve(blocks.size());
  for (const auto& block : blocks) {
    auto& out = indexed.emplace_back();
    for (const auto& id : block) out.push_back(graph.index_of(id));
  }
  return check_partition(graph, indexed);
}

bool is_connected_partition(const WeightedGraph& graph, const Partition& partition) {
  if (partition.vertex_count() != graph.vertex_count()) return false;
  return check_partition(graph, partition.blocks()).valid;
}

void require_connected_partition(const WeightedGraph& graph, const Partition& partition) {
  if (partition.vertex_count() != graph.vertex_count()) {
    throw std::invalid_argument("partition covers " + std::to_string(partition.vertex_count()) +
                                " vertices, graph has " + std::to_string(graph.vertex_count()));
  }
  const auto check = check_partition(graph, partition.blocks());
  if (!check.valid) throw std::invalid_argument("invalid partition: " + check.violations.front().message);
}

std::vector<EdgeIndex> cut_set(const WeightedGraph& graph, const Partition& partition) {
  require_connected_partition(graph, partition);
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    const auto& edge = graph.edge(e);
    if (!partition.same_block(edge.u, edge.v)) out.push_back(e);
  }
  return out;
}

std::string format_partition(const WeightedGraph& graph, const Partition& partition) {
  std::string out;
  const auto blocks = partition.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b > 0) out += '|';
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      if (i > 0) out += ',';
      out += graph.vertex(blocks[b][i]).id;
    }
  }
  return out;
}

Partition parse_partition(const WeightedGraph& graph, std::string_view text) {
  std::vector<std::vector<VertexIndex>> blocks(1);
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw std::invalid_argument("empty vertex id in partition text");
    blocks.back().push_back(graph.index_of(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (c == '|') {
      flush();
      blocks.emplace_back();
    } else if (c != ' ') {
      token += c;
    }
  }
  flush();
  return Partition::from_blocks(graph.vertex_count(), blocks);
}

namespace {

struct CallbackVisitor {
  const std::function<void(const Partition&)>* callback;
  static constexpr bool admits(double) noexcept { return true; }
  void visit(std::span<const BlockLabel> labels, double, std::span<const double>) { (*callback)(Partition(labels)); }
};

struct CountVisitor {
  std::uint64_t count = 0;
  static constexpr bool admits(double) noexcept { return true; }
  void visit(std::span<const BlockLabel>, double, std::span<const double>) { ++count; }
};

}  // namespace

void for_each_partition(const WeightedGraph& graph, std::size_t blocks,
                        const std::function<void(const Partition&)>& visit) {
  const detail::SearchSpace space(graph, blocks);
  CallbackVisitor visitor{&visit};
  detail::Search<CallbackVisitor> search(space, visitor);
  search.run();
}

std::uint64_t count_partitions(const WeightedGraph& graph, std::size_t blocks) {
  const detail::SearchSpace space(graph, blocks);
  CountVisitor visitor;
  detail::Search<CountVisitor> search(space, visitor);
  search.run();
  return visitor.count;
}

}  // namespace districtor
