#include "districtor/reference_examples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "districtor/fixtures.hpp"
#include "districtor/lambda_analysis.hpp"
#include "districtor/refinement.hpp"
#include "districtor/weight_engineering.hpp"

namespace districtor {
namespace {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::vector<Partition> sorted(std::vector<Partition> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool contains(const std::vector<Partition>& set, const Partition& p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

class Recorder {
 public:
  Recorder(std::vector<ReferenceCheck>& out, double tol) : out_(out), tol_(tol) {}

  void start(int criterion, std::string fixture) {
    criterion_ = criterion;
    fixture_ = std::move(fixture);
  }

  void near(std::string name, double actual, double expected) {
    const bool ok = std::abs(actual - expected) <= tol_;
    record(std::move(name), ok, "got " + format_number(actual) + ", expected " + format_number(expected));
  }

  void truth(std::string name, bool ok, std::string detail = {}) { record(std::move(name), ok, std::move(detail)); }

  void same_set(std::string name, const Fixture& f, const std::vector<Partition>& actual,
                std::vector<Partition> expected) {
    const bool ok = sorted(actual) == sorted(expected);
    record(std::move(name), ok, "got " + describe(f, actual));
  }

  double tol() const { return tol_; }

 private:
  static std::string describe(const Fixture& f, const std::vector<Partition>& set) {
    std::string s = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) s += "; ";
      s += format_partition(f.graph, set[i]);
    }
    return s + "}";
  }

  void record(std::string name, bool ok, std::string detail) {
    out_.push_back({criterion_, fixture_, std::move(name), ok, std::move(detail)});
  }

  std::vector<ReferenceCheck>& out_;
  double tol_;
  int criterion_ = 0;
  std::string fixture_;
};

// Smallest gap between `line` and the envelope over [0, 1]. The gap is convex,
// so it is enough to look at the envelope's knots.
double margin_above_envelope(const TransitionDiagram& d, const AffineLine& line) {
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& pt : d.points) gap = std::min(gap, line.at(pt.lambda) - pt.value);
  return gap;
}

void fig1_checks(Recorder& r, const SolveOptions& opts) {
  const auto f = load_fixture("FIG1");
  const auto p2 = DeviationNorm::finite(2.0);
  const auto& D = f.partition("D");
  const auto& C = f.partition("C");
  const auto& M = f.partition("M");
  r.start(1, f.name);

  r.truth("graph validates", validate(f.graph.to_spec()).empty());
  r.near("total mass", mass(f.graph), f.value("total_mass"));
  r.near("cut(C)", cut_energy(f.graph, C), f.value("C.cut"));
  r.near("deviation(C)", deviation_energy(f.graph, C, p2), f.value("C.deviation"));

  const auto lD = energy_line(f.graph, D, p2);
  const auto lC = energy_line(f.graph, C, p2);
  const auto lM = energy_line(f.graph, M, p2);
  r.near("line D slope", lD.slope, f.value("D.cut"));
  r.near("line D intercept", lD.intercept, 0.0);
  r.near("line C slope", lC.slope, f.value("C.slope"));
  r.near("line C intercept", lC.intercept, f.value("C.deviation"));
  r.near("line M slope", lM.slope, f.value("M.slope"));
  r.near("line M intercept", lM.intercept, f.value("M.deviation"));

  const double bp = f.value("breakpoint");
  const auto env = lower_envelope(f.graph, 2, p2, opts);
  r.truth("single interior breakpoint", env.breakpoints.size() == 1,
          std::to_string(env.breakpoints.size()) + " breakpoints");
  if (env.breakpoints.size() == 1) {
    r.near("breakpoint", env.breakpoints[0], bp);
    r.same_set("minimizers on [0, 2-sqrt2)", f, env.intervals[0].minimizers, {D, f.partition("D'")});
    r.same_set("minimizers on (2-sqrt2, 1]", f, env.intervals[1].minimizers, {C, f.partition("C'")});
    r.same_set("minimizers at lambda = 0", f, env.points[0].minimizers, {D, f.partition("D'")});
    // At lambda = 1 the light corners tie with C: every corner cut off alone costs 3.
    const auto& at_one = env.points[2].minimizers;
    const auto centre = f.graph.index_of("c");
    const bool corners = at_one.size() == 4 && contains(at_one, C) && contains(at_one, f.partition("C'")) &&
                         std::all_of(at_one.begin(), at_one.end(), [&](const Partition& part) {
                           const auto small = part.block(part.block(0).size() == 1 ? 0 : 1);
                           return small.size() == 1 && small[0] != centre &&
                                  cut_energy(f.graph, part) == f.value("C.cut");
                         });
    r.truth("minimizers at lambda = 1 are the four corner cuts", corners, std::to_string(at_one.size()) + " minimizers");
    const auto& at = env.points[1].minimizers;
    r.truth("envelope tie at 2-sqrt2 holds D, M, C", contains(at, D) && contains(at, M) && contains(at, C));
  }

  const auto tie = minimize(f.graph, 2, bp, p2, opts);
  r.truth("solver tie at 2-sqrt2 holds D, M, C", tie.contains(D) && tie.contains(M) && tie.contains(C));
  r.near("solver tie value", tie.optimal_value, f.value("D.cut") * bp);
  r.same_set("solve lambda = 0.3", f, minimize(f.graph, 2, 0.3, p2, opts).partitions(), {D, f.partition("D'")});
  const auto high = minimize(f.graph, 2, 0.9, p2, opts);
  r.near("solve lambda = 0.9 value", high.optimal_value, f.value("C.slope") * 0.9 + f.value("C.deviation"));
  r.truth("solve lambda = 0.9 picks C", high.contains(C));

  r.near("first transition", env.first.lambda, bp);
  r.truth("first transition witness D", contains(env.first.witnesses, D));
  r.near("last transition", env.last.lambda, bp);
  r.truth("last transition witness C", contains(env.last.witnesses, C));

  const auto hat = load_fixture("FIG1-HAT");
  r.start(1, hat.name);
  const auto dev = minimize_deviation(hat.graph, 2, p2, opts);
  r.near("minimal deviation", dev.optimal_value, hat.value("min_deviation"));
  r.same_set("zero-deviation 2-partitions", hat, dev.partitions(),
             {hat.partition("columns"), hat.partition("rows")});
  r.truth("2-partition count", count_partitions(hat.graph, 2) == 6);
}

void fig2_checks(Recorder& r, const SolveOptions& opts) {
  const auto p2 = DeviationNorm::finite(2.0);
  const auto f = load_fixture("FIG2");
  r.start(2, f.name);
  const auto& cols = f.partition("columns");
  r.truth("columns valid with the left vertical edge", is_connected_partition(f.graph, cols));
  r.near("columns cut", cut_energy(f.graph, cols), f.value("columns.cut"));
  r.near("columns deviation", deviation_energy(f.graph, cols, p2), f.value("columns.deviation"));
  const auto env = lower_envelope(f.graph, 3, p2, opts);
  r.truth("no breakpoints", env.breakpoints.empty());
  if (env.breakpoints.empty()) r.same_set("unique minimizer on (0, 1)", f, env.intervals[0].minimizers, {cols});
  r.truth("columns minimal at lambda = 0", minimize(f.graph, 3, 0.0, p2, opts).contains(cols));
  const auto cut = minimize_cut(f.graph, 3, opts);
  r.truth("columns minimal at lambda = 1", cut.contains(cols));
  r.near("minimal 3-cut", cut.optimal_value, f.value("min_cut"));

  const auto hat = load_fixture("FIG2-HAT");
  r.start(2, hat.name);
  const auto blocks = cols.blocks();
  std::vector<std::vector<std::string>> named;
  for (const auto& b : blocks) {
    named.emplace_back();
    for (auto v : b) named.back().push_back(f.graph.vertex(v).id);
  }
  const auto check = check_partition(hat.graph, named);
  const bool disconnected = !check.valid && std::any_of(check.violations.begin(), check.violations.end(), [](auto& v) {
    return v.kind == PartitionViolationKind::kConnectivity;
  });
  r.truth("columns invalid without the left vertical edge", disconnected);

  const auto lL = energy_line(hat.graph, hat.partition("left"), p2);
  const auto lR = energy_line(hat.graph, hat.partition("right"), p2);
  r.near("line (2-sqrt6) lambda + sqrt6 slope", lL.slope, hat.value("left.slope"));
  r.near("line (2-sqrt6) lambda + sqrt6 intercept", lL.intercept, hat.value("left.deviation"));
  r.near("line 4 lambda slope", lR.slope, hat.value("right.cut"));
  r.near("line 4 lambda intercept", lR.intercept, hat.value("right.deviation"));

  const auto henv = lower_envelope(hat.graph, 3, p2, opts);
  r.truth("single interior breakpoint", henv.breakpoints.size() == 1,
          std::to_string(henv.breakpoints.size()) + " breakpoints");
  if (henv.breakpoints.size() == 1) {
    r.near("breakpoint", henv.breakpoints[0], hat.value("breakpoint"));
    const auto& lo = henv.intervals[0];
    const auto& hi = henv.intervals[1];
    r.truth("envelope lines are 4 lambda and (2-sqrt6) lambda + sqrt6",
            std::abs(lo.cut - 4) <= r.tol() && std::abs(lo.deviation) <= r.tol() && std::abs(hi.cut - 2) <= r.tol() &&
                std::abs(hi.deviation - hat.value("left.deviation")) <= r.tol());
  }
  r.near("last transition", henv.last.lambda, hat.value("breakpoint"));
}

void fig4_checks(Recorder& r, const SolveOptions& opts) {
  const auto p2 = DeviationNorm::finite(2.0);
  const auto f = load_fixture("FIG4");
  r.start(3, f.name);
  const auto& rows = f.partition("rows");
  const auto cut = minimize_cut(f.graph, 2, opts);
  r.near("minimal 2-cut", cut.optimal_value, f.value("rows.cut"));
  r.same_set("unique minimal 2-cut", f, cut.partitions(), {rows});
  const auto cs = cut_set(f.graph, rows);
  r.truth("rows cut set is the two weight-1 edges",
          cs.size() == 2 && f.graph.edge(cs[0]).weight == 1 && f.graph.edge(cs[1]).weight == 1);
  r.near("rows deviation", deviation_energy(f.graph, rows, p2), 0.0);

  const auto env2 = lower_envelope(f.graph, 2, p2, opts);
  r.truth("2-partition envelope has no breakpoints", env2.breakpoints.empty());
  if (env2.breakpoints.empty()) r.same_set("rows unique on (0, 1)", f, env2.intervals[0].minimizers, {rows});
  r.near("2-partition first transition", env2.first.lambda, 1.0);
  r.near("2-partition last transition", env2.last.lambda, 0.0);

  r.near("cut(D)", cut_energy(f.graph, f.partition("D")), f.value("D.cut"));
  const auto env4 = lower_envelope(f.graph, 4, p2, opts);
  r.truth("4-partition envelope has one breakpoint", env4.breakpoints.size() == 1,
          std::to_string(env4.breakpoints.size()) + " breakpoints");
  if (env4.breakpoints.size() == 1) {
    r.near("breakpoint sqrt6/(6+sqrt6)", env4.breakpoints[0], f.value("breakpoint"));
    r.same_set("D below the breakpoint", f, env4.intervals[0].minimizers, {f.partition("D")});
    r.same_set("C above the breakpoint", f, env4.intervals[1].minimizers, {f.partition("C")});
    r.near("line below: cut", env4.intervals[0].cut, f.value("D.cut"));
    r.near("line above: cut", env4.intervals[1].cut, f.value("C.cut"));
    r.near("line above: deviation", env4.intervals[1].deviation, f.value("C.deviation"));
  }
  const auto lR = energy_line(f.graph, f.partition("R"), p2);
  r.near("line R slope", lR.slope, f.value("R.cut") - f.value("R.deviation"));
  r.near("line R intercept", lR.intercept, f.value("R.deviation"));
  const double gap = margin_above_envelope(env4, lR);
  r.truth("R minimal for no lambda", gap > r.tol(), "least gap " + format_number(gap));

  for (double lambda : {0.1, 0.3, 0.5, 0.9}) {
    const auto rep = refinement_gap(f.graph, 2, 2, lambda, p2, opts);
    r.truth("no 2-refining pair at lambda = " + format_number(lambda), rep.refining_pairs.empty());
  }
}

void fig5_checks(Recorder& r, const SolveOptions& opts) {
  const auto p2 = DeviationNorm::finite(2.0);
  const auto f = load_fixture("FIG5");
  r.start(4, f.name);
  const auto& C2 = f.partition("C2");
  const auto& C4 = f.partition("C4");
  const auto& D4 = f.partition("D4");
  r.near("total mass", mass(f.graph), f.value("total_mass"));
  r.near("F(C2)", total_energy(f.graph, C2, 0.5, p2).total, f.value("C2.half"));
  r.near("F(C4)", total_energy(f.graph, C4, 0.5, p2).total, f.value("C4.half"));
  r.near("F(D4)", total_energy(f.graph, D4, 0.5, p2).total, f.value("D4.half"));
  r.truth("C4 2-refines C2", is_j_refining(C4, C2, 2));

  const auto cut4 = minimize_cut(f.graph, 4, opts);
  r.near("minimal 4-cut", cut4.optimal_value, f.value("C4.cut"));
  r.truth("two minimal 4-cuts", cut4.minimizers.size() == 2);

  const auto rep = refinement_gap(f.graph, 2, 2, 0.5, p2, opts);
  r.truth("refining pairs = {(C4, C2)}",
          rep.refining_pairs.size() == 1 && rep.refining_pairs[0].fine == C4 && rep.refining_pairs[0].coarse == C2);
  if (rep.refining_pairs.size() == 1) {
    const auto& pair = rep.refining_pairs[0];
    const InducedBlockCheck* three = nullptr;
    for (const auto& b : pair.blocks) {
      if (b.vertices.size() == 3) three = &b;
    }
    r.truth("3-vertex coarse block present", three != nullptr);
    if (three) {
      r.near("induced C4 energy", three->induced_energy, f.value("induced_C4.half"));
      r.near("induced optimum", three->optimal_energy, f.value("induced_D4.half"));
      r.truth("induced D4 strictly better", three->optimal_energy < three->induced_energy - r.tol());
    }
    r.truth("induced minimality fails", !pair.induced_minimality);
  }
}

void fig6_checks(Recorder& r, const SolveOptions& opts) {
  for (double p : {1.0, 2.0, 3.0}) {
    const auto f = load_fixture("FIG6", {.p = p});
    const auto norm = DeviationNorm::finite(p);
    r.start(5, f.name + "(p=" + format_number(p) + ")");
    const double alpha = f.value("alpha");
    const double root4 = std::pow(4.0, 1.0 / p);
    const double bound = 0.5 * root4 / (2 * root4 - std::pow(2.0 + std::pow(2.0, p), 1.0 / p));
    r.near("alpha", alpha, 1.01 * bound);
    const auto lI = energy_line(f.graph, f.partition("I"), norm);
    r.near("line I cut", lI.cut(), f.value("I.cut"));
    r.near("line I deviation", lI.deviation(), f.value("I.deviation"));
    const auto env = lower_envelope(f.graph, 4, norm, opts);
    const double gap = margin_above_envelope(env, lI);
    r.truth("I minimal for no lambda", gap > r.tol(), "least gap " + format_number(gap));
    const double d_end = f.value("D_beats_I_below");
    const double c_start = f.value("C_beats_I_above");
    r.near("D interval end", d_end, root4 / (4 * alpha + root4));
    r.truth("D and C intervals overlap", c_start < d_end,
            "C from " + format_number(c_start) + ", D up to " + format_number(d_end));
    const auto lD = energy_line(f.graph, f.partition("D"), norm);
    const auto lC = energy_line(f.graph, f.partition("C"), norm);
    const double mid = 0.5 * (c_start + d_end);
    r.truth("D and C both beat I inside the overlap", lD.at(mid) < lI.at(mid) && lC.at(mid) < lI.at(mid));
    const auto rep = refinement_gap(f.graph, 2, 2, 0.5, norm, opts);
    r.truth("I is not a minimal 4-partition", !rep.fine.contains(f.partition("I")));
  }
}

void fig7_checks(Recorder& r, const SolveOptions& opts) {
  const auto inf = DeviationNorm::infinity();
  const auto f = load_fixture("FIG7");
  r.start(6, f.name);
  const auto& D2 = f.partition("D2");
  const auto& C4 = f.partition("C4");
  const auto& D4 = f.partition("D4");
  r.near("total mass", mass(f.graph), f.value("total_mass"));
  const auto cs = cut_set(f.graph, D2);
  r.truth("D2 cuts only the middle edge", cs.size() == 1 && f.graph.edge(cs[0]).weight == f.value("middle_edge"));
  r.near("F(D2)", total_energy(f.graph, D2, 0.5, inf).total, f.value("D2.half"));
  const auto dev = minimize_deviation(f.graph, 2, inf, opts);
  r.same_set("zero-deviation 2-partition", f, dev.partitions(), {D2});
  double others = std::numeric_limits<double>::infinity();
  for_each_partition(f.graph, 2, [&](const Partition& part) {
    if (part != D2) others = std::min(others, total_energy(f.graph, part, 0.5, inf).total);
  });
  r.truth("every other 2-partition has energy >= 5/2", others >= f.value("other2.half_min") - r.tol(),
          "least " + format_number(others));
  r.near("F(D4)", total_energy(f.graph, D4, 0.5, inf).total, f.value("D4.half"));
  r.near("F(C4)", total_energy(f.graph, C4, 0.5, inf).total, f.value("C4.half"));
  r.near("deviation(C4)", deviation_energy(f.graph, C4, inf), f.value("C4.deviation"));
  r.truth("D4 2-refines D2", is_j_refining(D4, D2, 2));
  const auto four = minimize(f.graph, 4, 0.5, inf, opts);
  r.near("minimal 4-partition energy", four.optimal_value, f.value("C4.half"));
  r.truth("C4 is a minimal 4-partition", four.contains(C4));
  const bool none_refines =
      std::none_of(four.minimizers.begin(), four.minimizers.end(), [&](const Minimizer& m) {
        return is_j_refining(m.partition, D2, 2);
      });
  r.truth("no minimal 4-partition refines D2", none_refines);
  r.truth("refinement report has no pairs", refinement_gap(f.graph, 2, 2, 0.5, inf, opts).refining_pairs.empty());
}

void fig3_checks(Recorder& r, const SolveOptions& opts) {
  const auto p2 = DeviationNorm::finite(2.0);
  for (auto [M, eps] : {std::pair{2.0, 0.1}, std::pair{10.0, 0.001}}) {
    const auto f = load_fixture("FIG3", {.M = M, .eps = eps});
    r.start(7, f.name + "(M=" + format_number(M) + ", eps=" + format_number(eps) + ")");
    const auto a = f.graph.index_of("a");
    const auto b = f.graph.index_of("b");
    const auto ab = *f.graph.find_edge(a, b);

    const auto low = separation_feasibility(f.graph, 2, 0.4, p2, ab, opts);
    r.truth("lambda = 0.4 is Impossible", low.verdict == SeparationVerdict::kImpossible,
            std::string(to_string(low.verdict)));

    const double boundary = f.value("separation_lambda");
    const auto edge = separation_feasibility(f.graph, 2, boundary, p2, ab, opts);
    r.truth("lambda = sqrt2/(1+sqrt2) is Impossible", edge.verdict == SeparationVerdict::kImpossible,
            std::string(to_string(edge.verdict)));

    const auto high = separation_feasibility(f.graph, 2, 0.9, p2, ab, opts);
    const double threshold = high.forcing.threshold.value_or(0.0);
    r.truth("lambda = 0.9 has a positive threshold", high.verdict == SeparationVerdict::kPossible && threshold > 0,
            "threshold " + format_number(threshold));
    r.near("lambda = 0.9 threshold", threshold, (0.9 - 0.1 * std::sqrt(2.0)) / 0.9);
    if (threshold > 0) {
      const auto below = f.graph.with_edge_weight(ab, threshold * 0.5);
      const auto sol = minimize(below, 2, 0.9, p2, opts);
      const bool separates = std::any_of(sol.minimizers.begin(), sol.minimizers.end(),
                                         [&](const Minimizer& m) { return !m.partition.same_block(a, b); });
      r.truth("re-solving below the threshold separates a and b", separates);
    }

    const auto force = force_together_threshold(f.graph, 2, 0.8, p2, ab, opts);
    r.near("force-together threshold at lambda = 0.8", force.threshold.value_or(-1.0), 1.0 - std::sqrt(2.0) / 4.0);
  }
}

}  // namespace

std::vector<ReferenceCheck> run_reference_examples(const SolveOptions& options) {
  std::vector<ReferenceCheck> out;
  Recorder r(out, options.tolerance);
  fig1_checks(r, options);
  fig2_checks(r, options);
  fig4_checks(r, options);
  fig5_checks(r, options);
  fig6_checks(r, options);
  fig7_checks(r, options);
  fig3_checks(r, options);
  return out;
}

}  // namespace districtor
