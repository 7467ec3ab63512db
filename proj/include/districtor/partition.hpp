#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "districtor/graph.hpp"

namespace districtor {

using BlockLabel = std::uint32_t;

/// A division of the vertex set into non-empty, pairwise disjoint blocks.
///
/// Stored as one block label per vertex in restricted-growth form: vertex 0 is
/// in block 0 and each new label is one more than the largest seen so far. This
/// makes block order "sorted by smallest vertex index" and gives a canonical
/// value for equality and ordering. Connectivity is a property relative to a
/// graph and is checked separately (check_partition).
class Partition {
 public:
  /// Relabels to canonical form. Labels may be arbitrary integers.
  explicit Partition(std::span<const BlockLabel> labels);
  explicit Partition(std::vector<BlockLabel> labels);

  /// Blocks must be non-empty, disjoint and cover 0..vertex_count-1.
  static Partition from_blocks(std::size_t vertex_count,
                               const std::vector<std::vector<VertexIndex>>& blocks);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t block_count() const noexcept { return block_count_; }
  std::span<const BlockLabel> labels() const noexcept { return labels_; }
  BlockLabel block_of(VertexIndex v) const { return labels_.at(v); }
  bool same_block(VertexIndex a, VertexIndex b) const { return block_of(a) == block_of(b); }

  std::vector<VertexIndex> block(BlockLabel b) const;
  std::vector<std::vector<VertexIndex>> blocks() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.labels_ <=> b.labels_; }

 private:
  std::vector<BlockLabel> labels_;
  std::size_t block_count_ = 0;
};

enum class PartitionViolationKind { kEmptyBlock, kDisjointness, kCoverage, kConnectivity };

std::string_view to_string(PartitionViolationKind kind);

struct PartitionViolation {
  PartitionViolationKind kind;
  std::string message;
};

struct PartitionCheck {
  bool valid = false;
  std::vector<PartitionViolation> violations;
};

/// Checks that `blocks` is a connected N-partition of `graph`. Throws
/// std::out_of_range for a vertex id or index that is not in the graph.
PartitionCheck check_partition(const WeightedGraph& graph,
                               const std::vector<std::vector<std::string>>& blocks);
PartitionCheck check_partition(const WeightedGraph& graph,
                               const std::vector<std::vector<VertexIndex>>& blocks);

bool is_connected_partition(const WeightedGraph& graph, const Partition& partition);

/// Throws std::invalid_argument unless `partition` is a connected partition of
/// `graph`.
void require_connected_partition(const WeightedGraph& graph, const Partition& partition);

/// Edges whose endpoints lie in different blocks, in edge index order.
std::vector<EdgeIndex> cut_set(const WeightedGraph& graph, const Partition& partition);

/// Text form `a,b|c|d,e`: blocks in canonical order, vertices by index.
std::string format_partition(const WeightedGraph& graph, const Partition& partition);

/// Inverse of format_partition; block and vertex order in the text are free.
/// Does not check connectivity.
Partition parse_partition(const WeightedGraph& graph, std::string_view text);

/// Largest graph the enumeration engine accepts (vertex sets are bitmasks).
inline constexpr std::size_t kMaxEnumerationVertices = 64;

/// Streams every connected `blocks`-partition exactly once, in canonical
/// (lexicographic label) order. Throws std::invalid_argument when blocks is
/// outside [1, |V|] or the graph exceeds kMaxEnumerationVertices.
void for_each_partition(const WeightedGraph& graph, std::size_t blocks,
                        const std::function<void(const Partition&)>& visit);

std::uint64_t count_partitions(const WeightedGraph& graph, std::size_t blocks);

}  // namespace districtor
