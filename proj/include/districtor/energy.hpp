#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "districtor/graph.hpp"
#include "districtor/partition.hpp"

namespace districtor {

/// Exponent of the deviation norm: a finite p >= 1, or infinity (max norm).
class DeviationNorm {
 public:
  /// Throws std::invalid_argument unless p >= 1. Passing +inf yields the max norm.
  static DeviationNorm finite(double p);
  static DeviationNorm infinity() noexcept { return DeviationNorm(0.0, true); }
  /// Accepts a decimal number or `inf`.
  static DeviationNorm parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  /// The exponent; +inf for the max norm.
  double exponent() const noexcept;
  std::string to_string() const;

  /// Norm of the vector (block_masses[k] - mean).
  double of_deviations(std::span<const double> block_masses, double mean) const noexcept;

  friend bool operator==(const DeviationNorm&, const DeviationNorm&) = default;

 private:
  DeviationNorm(double p, bool infinite) noexcept : p_(p), infinite_(infinite) {}
  double p_;
  bool infinite_;
};

/// Cut energy, deviation energy and their combination at one (lambda, p).
struct EnergyBreakdown {
  double cut = 0.0;
  double deviation = 0.0;
  double lambda = 0.0;
  DeviationNorm p = DeviationNorm::finite(2.0);
  double total = 0.0;
};

/// Throws std::invalid_argument unless 0 <= lambda <= 1.
void check_lambda(double lambda);

double mass(const WeightedGraph& graph);
/// Mass of a non-empty vertex set. Throws std::invalid_argument for an empty
/// block and std::out_of_range for an unknown vertex.
double mass(const WeightedGraph& graph, std::span<const VertexIndex> block);
double mass(const WeightedGraph& graph, const std::vector<std::string>& block);

double cut_energy(const WeightedGraph& graph, const Partition& partition);
double deviation_energy(const WeightedGraph& graph, const Partition& partition, DeviationNorm p);
EnergyBreakdown total_energy(const WeightedGraph& graph, const Partition& partition, double lambda,
                             DeviationNorm p);

/// lambda * cut + (1 - lambda) * deviation.
inline double combine(double lambda, double cut, double deviation) noexcept {
  return lambda * cut + (1.0 - lambda) * deviation;
}

}  // namespace districtor
