#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "districtor/graph.hpp"
#include "districtor/partition.hpp"

namespace districtor {

struct FixtureParams {
  /// FIG3: mass factor of the heavy end vertex (mass 2M), M > 1.
  double M = 2.0;
  /// FIG3: weight of the light edge, > 0.
  double eps = 0.1;
  /// FIG6: deviation exponent the edge factor alpha is tuned for, finite >= 1.
  double p = 2.0;
};

enum class ValueOrigin {
  /// Stated outright next to the drawing.
  kStated,
  /// Follows from the drawing's labels by direct arithmetic.
  kComputed,
};

struct ExpectedValue {
  std::string key;
  double value;
  ValueOrigin origin;
};

/// One of the reference graphs FIG1 ... FIG7 with named partitions and
/// closed-form expected values.
struct Fixture {
  std::string name;
  WeightedGraph graph;
  std::map<std::string, Partition> partitions;
  std::vector<ExpectedValue> expected;

  const Partition& partition(const std::string& key) const { return partitions.at(key); }
  /// Throws std::out_of_range for an unknown key.
  double value(std::string_view key) const;
};

std::vector<std::string> fixture_names();

/// Names are case-insensitive. Throws std::invalid_argument for an unknown
/// name or parameters outside their domain.
Fixture load_fixture(std::string_view name, const FixtureParams& params = {});

/// Edge factor used by FIG6: 1.01 times (1/2) 4^(1/p) / (2 4^(1/p) - (2 + 2^p)^(1/p)).
double fig6_alpha(double p);

/// Rescales masses by 1 / (2 (1 - lambda)) and edge weights by 1 / (2 lambda),
/// so that the energy at `lambda` of any partition of the result equals its
/// energy at lambda = 1/2 on the input. Needs 0 < lambda < 1.
WeightedGraph transfer_half_to_lambda(const WeightedGraph& graph, double lambda);

}  // namespace districtor
