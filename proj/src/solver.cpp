#include "districtor/solver.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

#include "search.hpp"

namespace districtor {

bool MinimizerSet::contains(const Partition& partition) const {
  return std::any_of(minimizers.begin(), minimizers.end(),
                     [&](const Minimizer& m) { return m.partition == partition; });
}

std::vector<Partition> MinimizerSet::partitions() const {
  std::vector<Partition> out;
  out.reserve(minimizers.size());
  for (const auto& m : minimizers) out.push_back(m.partition);
  return out;
}

namespace {

// Branch and bound. The partial lower bound is lambda times the weight already
// cut; deviation contributes nothing to the bound.
class MinimizeVisitor {
 public:
  MinimizeVisitor(std::atomic<double>& incumbent, double lambda, DeviationNorm p, double mean, double tolerance)
      : incumbent_(&incumbent), lambda_(lambda), p_(p), mean_(mean), tolerance_(tolerance) {}

  bool admits(double partial_cut) const noexcept {
    return lambda_ * partial_cut <= incumbent_->load(std::memory_order_relaxed) + tolerance_;
  }

  void visit(std::span<const BlockLabel> labels, double cut, std::span<const double> block_mass) {
    ++examined_;
    const double deviation = p_.of_deviations(block_mass, mean_);
    const double total = combine(lambda_, cut, deviation);
    if (total > incumbent_->load(std::memory_order_relaxed) + tolerance_) return;
    detail::atomic_min(*incumbent_, total);
    candidates_.push_back({Partition(labels), cut, deviation, total});
    if (candidates_.size() >= 2 * compacted_size_ + 64) compact();
  }

  void compact() {
    const double bound = incumbent_->load(std::memory_order_relaxed) + tolerance_;
    std::erase_if(candidates_, [&](const Minimizer& m) { return m.total > bound; });
    compacted_size_ = candidates_.size();
  }

  std::vector<Minimizer>& candidates() noexcept { return candidates_; }
  std::uint64_t examined() const noexcept { return examined_; }

 private:
  std::atomic<double>* incumbent_;
  double lambda_;
  DeviationNorm p_;
  double mean_;
  double tolerance_;
  std::vector<Minimizer> candidates_;
  std::size_t compacted_size_ = 0;
  std::uint64_t examined_ = 0;
};

}  // namespace

MinimizerSet minimize(const WeightedGraph& graph, std::size_t blocks, double lambda, DeviationNorm p,
                      const SolveOptions& options) {
  check_lambda(lambda);
  if (!(options.tolerance >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  const detail::SearchSpace space(graph, blocks);
  const double mean = graph.total_mass() / static_cast<double>(blocks);

  std::atomic<double> incumbent{std::numeric_limits<double>::infinity()};
  auto visitors = detail::run_search<MinimizeVisitor>(space, options.workers, [&] {
    return MinimizeVisitor(incumbent, lambda, p, mean, options.tolerance);
  });

  MinimizerSet result;
  result.lambda = lambda;
  result.p = p;
  result.blocks = blocks;
  result.optimal_value = incumbent.load();
  const double bound = result.optimal_value + options.tolerance;
  for (auto& visitor : visitors) {
    result.partitions_examined += visitor.examined();
    for (auto& m : visitor.candidates()) {
      if (m.total <= bound) result.minimizers.push_back(std::move(m));
    }
  }
  std::sort(result.minimizers.begin(), result.minimizers.end(),
            [](const Minimizer& a, const Minimizer& b) { return a.partition < b.partition; });
  return result;
}

MinimizerSet minimize_cut(const WeightedGraph& graph, std::size_t blocks, const SolveOptions& options,
                          DeviationNorm p) {
  return minimize(graph, blocks, 1.0, p, options);
}

MinimizerSet minimize_deviation(const WeightedGraph& graph, std::size_t blocks, DeviationNorm p,
                                const SolveOptions& options) {
  return minimize(graph, blocks, 0.0, p, options);
}

}  // namespace districtor
