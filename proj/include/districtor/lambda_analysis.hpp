#pragma once

#include <vector>

#include "districtor/energy.hpp"
#include "districtor/graph.hpp"
#include "districtor/partition.hpp"
#include "districtor/solver.hpp"

namespace districtor {

/// Energy of one partition as a function of lambda:
/// slope * lambda + intercept, with slope = cut - deviation and
/// intercept = deviation.
struct AffineLine {
  double slope = 0.0;
  double intercept = 0.0;
  Partition partition;

  double cut() const noexcept { return cut_; }
  double deviation() const noexcept { return intercept; }
  /// Evaluated as lambda * cut + (1 - lambda) * deviation, the same
  /// expression the solver uses.
  double at(double lambda) const noexcept { return combine(lambda, cut_, intercept); }

  static AffineLine from_energies(Partition partition, double cut, double deviation) {
    return AffineLine(std::move(partition), cut, deviation);
  }

 private:
  AffineLine(Partition partition, double cut, double deviation)
      : slope(cut - deviation), intercept(deviation), partition(std::move(partition)), cut_(cut) {}
  double cut_ = 0.0;
};

AffineLine energy_line(const WeightedGraph& graph, const Partition& partition, DeviationNorm p);

/// Open lambda interval (low, high) on which the minimizer set is constant.
struct LambdaInterval {
  double low;
  double high;
  double cut;
  double deviation;
  std::vector<Partition> minimizers;
};

/// Minimizer set at a single lambda: an end of [0, 1] or a breakpoint.
struct LambdaPoint {
  double lambda;
  double value;
  std::vector<Partition> minimizers;
};

struct Transition {
  double lambda;
  std::vector<Partition> witnesses;
};

/// Lower envelope of all partition energy lines over lambda in [0, 1].
///
/// `points` holds lambda = 0, every breakpoint, then lambda = 1; `intervals`
/// holds the open stretches between consecutive points, so
/// intervals.size() == breakpoints.size() + 1 and
/// points.size() == breakpoints.size() + 2.
struct TransitionDiagram {
  std::size_t blocks = 0;
  DeviationNorm p = DeviationNorm::finite(2.0);
  double tolerance = kDefaultTolerance;

  std::vector<double> breakpoints;
  std::vector<LambdaInterval> intervals;
  std::vector<LambdaPoint> points;

  /// First transition value and the partitions minimal on [0, first.lambda].
  Transition first;
  /// Last transition value and the partitions minimal on [last.lambda, 1].
  Transition last;

  /// Every partition that is minimal (within tolerance) for some lambda in
  /// [0, 1] is among these, in canonical order. Lines beaten by more than the
  /// tolerance in both cut and deviation are dropped.
  std::vector<AffineLine> candidates;

  double value_at(double lambda) const;
  std::vector<Partition> minimizers_at(double lambda) const;
};

TransitionDiagram lower_envelope(const WeightedGraph& graph, std::size_t blocks, DeviationNorm p,
                                 const SolveOptions& options = {});

Transition first_transition(const WeightedGraph& graph, std::size_t blocks, DeviationNorm p,
                            const SolveOptions& options = {});
Transition last_transition(const WeightedGraph& graph, std::size_t blocks, DeviationNorm p,
                           const SolveOptions& options = {});

}  // namespace districtor
