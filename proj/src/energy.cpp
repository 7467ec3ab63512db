#include "districtor/energy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace districtor {

DeviationNorm DeviationNorm::finite(double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("deviation exponent p must be >= 1");
  if (std::isinf(p)) return infinity();
  return DeviationNorm(p, false);
}

DeviationNorm DeviationNorm::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  double p = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(p)) {
    throw std::invalid_argument("p must be a number >= 1 or 'inf', got '" + std::string(text) + "'");
  }
  return finite(p);
}

double DeviationNorm::exponent() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

std::string DeviationNorm::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p_);
  return buf;
}

double DeviationNorm::of_deviations(std::span<const double> block_masses, double mean) const noexcept {
  if (infinite_) {
    double worst = 0.0;
    for (double m : block_masses) worst = std::max(worst, std::abs(m - mean));
    return worst;
  }
  if (p_ == 1.0) {
    double sum = 0.0;
    for (double m : block_masses) sum += std::abs(m - mean);
    return sum;
  }
  if (p_ == 2.0) {
    double sum = 0.0;
    for (double m : block_masses) sum += (m - mean) * (m - mean);
    return std::sqrt(sum);
  }
  double sum = 0.0;
  for (double m : block_masses) sum += std::pow(std::abs(m - mean), p_);
  return std::pow(sum, 1.0 / p_);
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
}

double mass(const WeightedGraph& graph) { return graph.total_mass(); }

double mass(const WeightedGraph& graph, std::span<const VertexIndex> block) {
  if (block.empty()) throw std::invalid_argument("mass of an empty block");
  double sum = 0.0;
  for (auto v : block) sum += graph.vertex(v).mass;
  return sum;
}

double mass(const WeightedGraph& graph, const std::vector<std::string>& block) {
  std::vector<VertexIndex> indices;
  indices.reserve(block.size());
  for (const auto& id : block) indices.push_back(graph.index_of(id));
  return mass(graph, indices);
}

double cut_energy(const WeightedGraph& graph, const Partition& partition) {
  double sum = 0.0;
  for (auto e : cut_set(graph, partition)) sum += graph.edge(e).weight;
  return sum;
}

double deviation_energy(const WeightedGraph& graph, const Partition& partition, DeviationNorm p) {
  require_connected_partition(graph, partition);
  std::vector<double> block_mass(partition.block_count(), 0.0);
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) block_mass[partition.block_of(v)] += graph.vertex(v).mass;
  return p.of_deviations(block_mass, graph.total_mass() / static_cast<double>(partition.block_count()));
}

EnergyBreakdown total_energy(const WeightedGraph& graph, const Partition& partition, double lambda,
                             DeviationNorm p) {
  check_lambda(lambda);
  EnergyBreakdown out;
  out.cut = cut_energy(graph, partition);
  out.deviation = deviation_energy(graph, partition, p);
  out.lambda = lambda;
  out.p = p;
  out.total = combine(lambda, out.cut, out.deviation);
  return out;
}

}  // namespace districtor
