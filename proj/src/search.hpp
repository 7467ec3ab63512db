#pragma once

// Connected-partition search shared by enumeration, the exact solver, the
// envelope builder and the forcing analyses.
//
// Vertices are assigned blocks in index order. Vertex k may join any block
// opened so far or open the next one, so block labels come out in
// restricted-growth form and no label permutation is ever generated. After each
// placement every block must still be completable: all of its placed vertices
// have to lie in one component of the graph induced by the block plus the
// unassigned vertices. At the leaves that test is plain block connectivity.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "districtor/graph.hpp"
#include "districtor/partition.hpp"

namespace districtor::detail {

using VertexMask = std::uint64_t;

constexpr VertexMask low_bits(std::size_t count) noexcept {
  return count >= 64 ? ~VertexMask{0} : (VertexMask{1} << count) - 1;
}

class SearchSpace {
 public:
  SearchSpace(const WeightedGraph& graph, std::size_t blocks) : vertex_count_(graph.vertex_count()), block_count_(blocks) {
    if (blocks < 1 || blocks > graph.vertex_count()) {
      throw std::invalid_argument("number of blocks must lie in [1, " + std::to_string(graph.vertex_count()) + "]");
    }
    if (graph.vertex_count() > kMaxEnumerationVertices) {
      throw std::invalid_argument("graph too large for exact enumeration (max " +
                                  std::to_string(kMaxEnumerationVertices) + " vertices)");
    }
    masses_.reserve(vertex_count_);
    for (const auto& v : graph.vertices()) masses_.push_back(v.mass);
    neighbors_.assign(vertex_count_, 0);
    earlier_.resize(vertex_count_);
    for (const auto& e : graph.edges()) {
      neighbors_[e.u] |= VertexMask{1} << e.v;
      neighbors_[e.v] |= VertexMask{1} << e.u;
      const auto [lo, hi] = std::minmax(e.u, e.v);
      earlier_[hi].push_back({lo, e.weight});
    }
    total_mass_ = graph.total_mass();
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t block_count() const noexcept { return block_count_; }
  double mass(VertexIndex v) const noexcept { return masses_[v]; }
  double total_mass() const noexcept { return total_mass_; }
  std::span<const std::pair<VertexIndex, double>> earlier_neighbors(VertexIndex v) const noexcept {
    return earlier_[v];
  }

  // True when every vertex of `set` lies in one component of G[allowed].
  bool connected_within(VertexMask set, VertexMask allowed) const noexcept {
    if (set == 0) return true;
    VertexMask reach = set & (~set + 1);
    VertexMask frontier = reach;
    while (frontier != 0) {
      if ((set & ~reach) == 0) return true;
      VertexMask next = 0;
      for (VertexMask f = frontier; f != 0; f &= f - 1) {
        next |= neighbors_[std::countr_zero(f)];
      }
      next &= allowed & ~reach;
      reach |= next;
      frontier = next;
    }
    return (set & ~reach) == 0;
  }

 private:
  std::size_t vertex_count_;
  std::size_t block_count_;
  double total_mass_ = 0.0;
  std::vector<double> masses_;
  std::vector<VertexMask> neighbors_;
  std::vector<std::vector<std::pair<VertexIndex, double>>> earlier_;
};

// Visitor requirements:
//   bool admits(double partial_cut)   -- false prunes the subtree
//   void visit(std::span<const BlockLabel> labels, double cut,
//              std::span<const double> block_masses)
struct AcceptAll {
  static constexpr bool admits(double) noexcept { return true; }
  static void visit(std::span<const BlockLabel>, double, std::span<const double>) noexcept {}
};

template <class Visitor>
class Search {
 public:
  Search(const SearchSpace& space, Visitor& visitor) : space_(space), visitor_(visitor) {}

  // Explores every completion of `prefix` (labels for vertices 0..k-1, as
  // produced by split_into_tasks). An empty prefix explores the whole space.
  void run(std::span<const BlockLabel> prefix = {}) {
    reset();
    for (VertexIndex v = 0; v < prefix.size(); ++v) place(v, prefix[v]);
    descend(prefix.size());
  }

  // Collects every admissible prefix of length `depth` instead of visiting
  // leaves.
  std::vector<std::vector<BlockLabel>> prefixes(std::size_t depth) {
    std::vector<std::vector<BlockLabel>> out;
    prefix_depth_ = depth;
    prefix_sink_ = &out;
    reset();
    descend(0);
    prefix_sink_ = nullptr;
    return out;
  }

 private:
  void reset() {
    const auto n = space_.vertex_count();
    labels_.assign(n, 0);
    members_.assign(space_.block_count(), 0);
    block_mass_.assign(space_.block_count(), 0.0);
    used_ = 0;
    cut_ = 0.0;
  }

  // Values overwritten by place(); restored verbatim so that sums at a leaf do
  // not depend on the path taken to reach it.
  struct Undo {
    double cut;
    double block_mass;
  };

  Undo place(VertexIndex v, BlockLabel b) {
    const Undo undo{cut_, block_mass_[b]};
    double added = 0.0;
    for (const auto& [u, w] : space_.earlier_neighbors(v)) {
      if (labels_[u] != b) added += w;
    }
    labels_[v] = b;
    if (b == used_) ++used_;
    members_[b] |= VertexMask{1} << v;
    block_mass_[b] += space_.mass(v);
    cut_ += added;
    return undo;
  }

  void unplace(VertexIndex v, BlockLabel b, const Undo& undo) {
    cut_ = undo.cut;
    block_mass_[b] = undo.block_mass;
    members_[b] &= ~(VertexMask{1} << v);
    if (members_[b] == 0) --used_;
    labels_[v] = 0;
  }

  bool completable(VertexIndex next) const {
    const VertexMask unassigned = low_bits(space_.vertex_count()) & ~low_bits(next);
    for (std::size_t b = 0; b < used_; ++b) {
      if (!space_.connected_within(members_[b], members_[b] | unassigned)) return false;
    }
    return true;
  }

  void descend(VertexIndex k) {
    const auto n = space_.vertex_count();
    const auto blocks = space_.block_count();
    if (prefix_sink_ != nullptr && k == prefix_depth_) {
      prefix_sink_->emplace_back(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(k));
      return;
    }
    if (k == n) {
      if (used_ == blocks) {
        if (prefix_sink_ == nullptr) visitor_.visit(std::span<const BlockLabel>(labels_), cut_, block_mass_);
      }
      return;
    }
    const std::size_t remaining_after = n - k - 1;
    const std::size_t top = std::min(used_ + 1, blocks);
    for (std::size_t b = 0; b < top; ++b) {
      const std::size_t used_after = b == used_ ? used_ + 1 : used_;
      if (blocks - used_after > remaining_after) continue;
      const auto label = static_cast<BlockLabel>(b);
      const Undo undo = place(k, label);
      if (visitor_.admits(cut_) && completable(k + 1)) descend(k + 1);
      unplace(k, label, undo);
    }
  }

  const SearchSpace& space_;
  Visitor& visitor_;
  std::vector<BlockLabel> labels_;
  std::vector<VertexMask> members_;
  std::vector<double> block_mass_;
  std::size_t used_ = 0;
  double cut_ = 0.0;
  std::size_t prefix_depth_ = 0;
  std::vector<std::vector<BlockLabel>>* prefix_sink_ = nullptr;
};

// Canonically ordered subtree roots, deep enough to yield at least `min_tasks`
// roots when the space allows it.
inline std::vector<std::vector<BlockLabel>> split_into_tasks(const SearchSpace& space, std::size_t min_tasks) {
  AcceptAll accept;
  Search<AcceptAll> search(space, accept);
  std::vector<std::vector<BlockLabel>> tasks;
  for (std::size_t depth = 1; depth <= space.vertex_count(); ++depth) {
    tasks = search.prefixes(depth);
    if (tasks.size() >= min_tasks) break;
  }
  return tasks;
}

// Runs one visitor per worker over disjoint subtrees and returns the visitors
// for the caller to merge. Merging must be order-insensitive.
template <class Visitor, class Factory>
std::vector<Visitor> run_search(const SearchSpace& space, unsigned workers, Factory&& make_visitor) {
  std::vector<Visitor> visitors;
  if (workers <= 1) {
    visitors.push_back(make_visitor());
    Search<Visitor> search(space, visitors.front());
    search.run();
    return visitors;
  }
  const auto tasks = split_into_tasks(space, std::size_t{8} * workers);
  visitors.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) visitors.push_back(make_visitor());
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        Search<Visitor> search(space, visitors[w]);
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
          search.run(tasks[i]);
        }
      });
    }
  }
  return visitors;
}

// Lowers `target` to `value` if smaller.
inline void atomic_min(std::atomic<double>& target, double value) noexcept {
  double current = target.load(std::memory_order_relaxed);
  while (value < current && !target.compare_exchange_weak(current, value, std::memory_order_relaxed)) {
  }
}

}  // namespace districtor::detail
