#include "districtor/lambda_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "search.hpp"

namespace districtor {

AffineLine energy_line(const WeightedGraph& graph, const Partition& partition, DeviationNorm p) {
  return AffineLine::from_energies(partition, cut_energy(graph, partition), deviation_energy(graph, partition, p));
}

namespace {

struct Energies {
  double cut;
  double deviation;
};

// Pareto staircase of (cut, deviation) pairs: cut ascending, deviation
// strictly descending. Answers "is this pair beaten by more than the tolerance
// in both coordinates?"; such a pair can never be within tolerance of the
// envelope anywhere on [0, 1].
class Staircase {
 public:
  explicit Staircase(double tolerance) : tolerance_(tolerance) {}

  bool beaten(const Energies& e) const {
    // Last step with cut < e.cut - tol has the smallest deviation among them.
    auto it = std::lower_bound(steps_.begin(), steps_.end(), e.cut - tolerance_,
                               [](const Energies& s, double cut) { return s.cut < cut; });
    if (it == steps_.begin()) return false;
    return std::prev(it)->deviation < e.deviation - tolerance_;
  }

  void insert(const Energies& e) {
    auto it = std::lower_bound(steps_.begin(), steps_.end(), e,
                               [](const Energies& a, const Energies& b) { return a.cut < b.cut; });
    // Weakly dominated by an existing step with cut <= e.cut?
    if (it != steps_.begin() && std::prev(it)->deviation <= e.deviation) return;
    if (it != steps_.end() && it->cut == e.cut && it->deviation <= e.deviation) return;
    auto last = it;
    while (last != steps_.end() && last->deviation >= e.deviation) ++last;
    it = steps_.erase(it, last);
    steps_.insert(it, e);
  }

  const std::vector<Energies>& steps() const noexcept { return steps_; }

 private:
  double tolerance_;
  std::vector<Energies> steps_;
};

struct Retained {
  std::vector<BlockLabel> labels;
  Energies energies;
};

class LineVisitor {
 public:
  LineVisitor(DeviationNorm p, double mean, double tolerance)
      : p_(p), mean_(mean), tolerance_(tolerance), staircase_(tolerance) {}

  static constexpr bool admits(double) noexcept { return true; }

  void visit(std::span<const BlockLabel> labels, double cut, std::span<const double> block_mass) {
    const Energies e{cut, p_.of_deviations(block_mass, mean_)};
    if (staircase_.beaten(e)) return;
    staircase_.insert(e);
    retained_.push_back({std::vector<BlockLabel>(labels.begin(), labels.end()), e});
    if (retained_.size() >= 2 * compacted_size_ + 256) compact();
  }

  void compact() {
    std::erase_if(retained_, [&](const Retained& r) { return staircase_.beaten(r.energies); });
    compacted_size_ = retained_.size();
  }

  Staircase& staircase() noexcept { return staircase_; }
  std::vector<Retained>& retained() noexcept { return retained_; }

 private:
  DeviationNorm p_;
  double mean_;
  double tolerance_;
  Staircase staircase_;
  std::vector<Retained> retained_;
  std::size_t compacted_size_ = 0;
};

double min_value(const std::vector<AffineLine>& lines, double lambda) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& line : lines) best = std::min(best, line.at(lambda));
  return best;
}

// Among the lines within tolerance of the envelope at `lambda`, the one with
// the smallest slope (ties: smallest value). It is the line active just to
// the right of `lambda`.
std::size_t active_right_of(const std::vector<AffineLine>& lines, double lambda, double tolerance) {
  const double floor = min_value(lines, lambda);
  std::size_t best = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].at(lambda) > floor + tolerance) continue;
    if (best == lines.size() || lines[i].slope < lines[best].slope ||
        (lines[i].slope == lines[best].slope && lines[i].at(lambda) < lines[best].at(lambda))) {
      best = i;
    }
  }
  return best;
}

std::vector<Partition> minimizers_of(const std::vector<AffineLine>& candidates, double lambda, double tolerance) {
  const double floor = min_value(candidates, lambda);
  std::vector<Partition> out;
  for (const auto& line : candidates) {
    if (line.at(lambda) <= floor + tolerance) out.push_back(line.partition);
  }
  return out;
}

}  // namespace

double TransitionDiagram::value_at(double lambda) const {
  check_lambda(lambda);
  return min_value(candidates, lambda);
}

std::vector<Partition> TransitionDiagram::minimizers_at(double lambda) const {
  check_lambda(lambda);
  return minimizers_of(candidates, lambda, tolerance);
}

TransitionDiagram lower_envelope(const WeightedGraph& graph, std::size_t blocks, DeviationNorm p,
                                 const SolveOptions& options) {
  const double tol = options.tolerance;
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
  const detail::SearchSpace space(graph, blocks);
  const double mean = graph.total_mass() / static_cast<double>(blocks);

  auto visitors = detail::run_search<LineVisitor>(space, options.workers, [&] { return LineVisitor(p, mean, tol); });

  Staircase merged(tol);
  for (auto& v : visitors) {
    for (const auto& step : v.staircase().steps()) merged.insert(step);
  }

  TransitionDiagram diagram;
  diagram.blocks = blocks;
  diagram.p = p;
  diagram.tolerance = tol;
  for (auto& v : visitors) {
    for (auto& r : v.retained()) {
      if (merged.beaten(r.energies)) continue;
      diagram.candidates.push_back(
          AffineLine::from_energies(Partition(std::move(r.labels)), r.energies.cut, r.energies.deviation));
    }
  }
  std::sort(diagram.candidates.begin(), diagram.candidates.end(),
            [](const AffineLine& a, const AffineLine& b) { return a.partition < b.partition; });

  // Walk the envelope from lambda = 0 to 1. At each breakpoint the next active
  // line is the flattest one tied with the envelope there, so lines that only
  // touch the envelope at a single point never get a segment and breakpoints
  // closer than the tolerance collapse into one.
  const auto& lines = diagram.candidates;
  std::vector<std::size_t> active{active_right_of(lines, 0.0, tol)};
  double x = 0.0;
  for (;;) {
    const auto& cur = lines[active.back()];
    double next_x = std::numeric_limits<double>::infinity();
    for (const auto& line : lines) {
      if (line.slope >= cur.slope) continue;
      const double meet = (line.intercept - cur.intercept) / (cur.slope - line.slope);
      if (meet > x) next_x = std::min(next_x, meet);
    }
    if (!(next_x < 1.0 - tol)) break;
    const std::size_t next = active_right_of(lines, next_x, tol);
    if (lines[next].slope >= cur.slope) {
      // Numerical stall: nothing flatter is tied at next_x.
      break;
    }
    if (next_x - x <= tol) {
      active.back() = next;
      if (!diagram.breakpoints.empty()) diagram.breakpoints.back() = next_x;
    } else {
      diagram.breakpoints.push_back(next_x);
      active.push_back(next);
    }
    x = next_x;
  }

  std::vector<double> knots{0.0};
  knots.insert(knots.end(), diagram.breakpoints.begin(), diagram.breakpoints.end());
  knots.push_back(1.0);

  for (std::size_t i = 0; i < active.size(); ++i) {
    const auto& line = lines[active[i]];
    LambdaInterval interval{knots[i], knots[i + 1], line.cut(), line.deviation(), {}};
    for (const auto& c : lines) {
      if (std::abs(c.cut() - line.cut()) <= tol && std::abs(c.deviation() - line.deviation()) <= tol) {
        interval.minimizers.push_back(c.partition);
      }
    }
    diagram.intervals.push_back(std::move(interval));
  }
  for (double k : knots) {
    diagram.points.push_back({k, min_value(lines, k), minimizers_of(lines, k, tol)});
  }

  diagram.first = {knots[1], diagram.intervals.front().minimizers};
  diagram.last = {knots[knots.size() - 2], diagram.intervals.back().minimizers};
  return diagram;
}

Transition first_transition(const WeightedGraph& graph, std::size_t blocks, DeviationNorm p,
                            const SolveOptions& options) {
  return lower_envelope(graph, blocks, p, options).first;
}

Transition last_transition(const WeightedGraph& graph, std::size_t blocks, DeviationNorm p,
                           const SolveOptions& options) {
  return lower_envelope(graph, blocks, p, options).last;
}

}  // namespace districtor
