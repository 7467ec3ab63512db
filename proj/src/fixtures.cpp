#include "districtor/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace districtor {

double Fixture::value(std::string_view key) const {
  for (const auto& e : expected) {
    if (e.key == key) return e.value;
  }
  throw std::out_of_range("fixture " + name + " has no expected value '" + std::string(key) + "'");
}

std::vector<std::string> fixture_names() {
  return {"FIG1", "FIG1-HAT", "FIG2", "FIG2-HAT", "FIG3", "FIG4", "FIG5", "FIG6", "FIG7"};
}

double fig6_alpha(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("FIG6 needs a finite p >= 1");
  const double root4 = std::pow(4.0, 1.0 / p);
  const double mixed = std::pow(2.0 + std::pow(2.0, p), 1.0 / p);
  return 1.01 * 0.5 * root4 / (2.0 * root4 - mixed);
}

WeightedGraph transfer_half_to_lambda(const WeightedGraph& graph, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0, 1)");
  GraphSpec spec = graph.to_spec();
  for (auto& v : spec.vertices) v.mass /= 2.0 * (1.0 - lambda);
  for (auto& e : spec.edges) e.weight /= 2.0 * lambda;
  return WeightedGraph::from_spec(spec);
}

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt6 = std::sqrt(6.0);
const double kSqrt17 = std::sqrt(17.0);

class Builder {
 public:
  explicit Builder(std::string name) : name_(std::move(name)) {}

  Builder& vertex(std::string id, double mass) {
    spec_.vertices.push_back({std::move(id), mass, 0});
    return *this;
  }
  Builder& edge(std::string u, std::string v, double weight) {
    spec_.edges.push_back({std::move(u), std::move(v), weight, 0});
    return *this;
  }
  Builder& named(std::string key, std::string text) {
    named_.emplace_back(std::move(key), std::move(text));
    return *this;
  }
  Builder& stated(std::string key, double value) {
    expected_.push_back({std::move(key), value, ValueOrigin::kStated});
    return *this;
  }
  Builder& computed(std::string key, double value) {
    expected_.push_back({std::move(key), value, ValueOrigin::kComputed});
    return *this;
  }

  Fixture build() const {
    Fixture f{name_, WeightedGraph::from_spec(spec_), {}, expected_};
    for (const auto& [key, text] : named_) f.partitions.emplace(key, parse_partition(f.graph, text));
    return f;
  }

 private:
  std::string name_;
  GraphSpec spec_;
  std::vector<std::pair<std::string, std::string>> named_;
  std::vector<ExpectedValue> expected_;
};

// Four-cycle ur - lr - ll - ul with heavy opposite corners.
Builder& fig1_cycle(Builder& b) {
  return b.vertex("ur", 1).vertex("lr", 9).vertex("ul", 9).vertex("ll", 1)
      .edge("ul", "ur", 1).edge("lr", "ll", 1).edge("ul", "ll", 1).edge("ur", "lr", 1);
}

Fixture fig1() {
  Builder b("FIG1");
  fig1_cycle(b).vertex("c", 2).edge("c", "ur", 1).edge("c", "lr", 1).edge("c", "ul", 1).edge("c", "ll", 1);
  b.named("D", "ul,c|ur,lr,ll")
      .named("D'", "lr,c|ur,ul,ll")
      .named("C", "ul|ur,lr,ll,c")
      .named("C'", "lr|ur,ul,ll,c")
      .named("M", "ul,ur|lr,ll,c")
      .named("M'", "ul,ll|ur,lr,c")
      .named("M''", "lr,ur|ul,ll,c")
      .named("M'''", "lr,ll|ur,ul,c");
  b.computed("total_mass", 22)
      .stated("D.cut", 5)
      .stated("D.deviation", 0)
      .stated("C.cut", 3)
      .stated("C.deviation", 2 * kSqrt2)
      .stated("C.slope", 3 - 2 * kSqrt2)
      .stated("M.cut", 4)
      .stated("M.deviation", kSqrt2)
      .stated("M.slope", 4 - kSqrt2)
      .stated("breakpoint", 2 - kSqrt2);
  return b.build();
}

Fixture fig1_hat() {
  Builder b("FIG1-HAT");
  fig1_cycle(b);
  b.named("columns", "ur,lr|ul,ll").named("rows", "ul,ur|lr,ll");
  b.computed("total_mass", 20).stated("min_cut", 2).stated("min_deviation", 0);
  return b.build();
}

Builder fig2_base(bool with_left_vertical) {
  Builder b(with_left_vertical ? "FIG2" : "FIG2-HAT");
  b.vertex("tl", 1).vertex("tm", 1).vertex("tr", 1).vertex("bl", 1).vertex("bm", 1).vertex("br", 1);
  if (with_left_vertical) b.edge("bl", "tl", 2);
  b.edge("bm", "tm", 2).edge("br", "tr", 2).edge("bl", "bm", 1).edge("bm", "br", 1).edge("tl", "tm", 1).edge("tm", "tr", 1);
  return b;
}

Fixture fig2() {
  Builder b = fig2_base(true);
  b.named("columns", "tl,bl|tm,bm|tr,br");
  b.stated("columns.cut", 4).stated("columns.deviation", 0).stated("min_cut", 4);
  return b.build();
}

Fixture fig2_hat() {
  Builder b = fig2_base(false);
  b.named("left", "tl|bl|tm,tr,bm,br").named("right", "tl,tm|bl,bm|tr,br");
  b.stated("left.cut", 2)
      .stated("left.deviation", kSqrt6)
      .stated("left.slope", 2 - kSqrt6)
      .stated("right.cut", 4)
      .stated("right.deviation", 0)
      .stated("breakpoint", 3 - kSqrt6);
  return b.build();
}

Fixture fig3(const FixtureParams& params) {
  if (!(params.M > 1.0) || !std::isfinite(params.M)) throw std::invalid_argument("FIG3 needs M > 1");
  if (!(params.eps > 0.0) || !std::isfinite(params.eps)) throw std::invalid_argument("FIG3 needs eps > 0");
  Builder b("FIG3");
  b.vertex("a", 1).vertex("b", 1).vertex("c", 2 * params.M).edge("a", "b", params.eps).edge("b", "c", 1);
  b.named("together", "a,b|c").named("apart", "a|b,c");
  b.stated("separation_lambda", kSqrt2 / (1 + kSqrt2))
      .computed("together.deviation", kSqrt2 * (params.M - 1))
      .computed("apart.deviation", kSqrt2 * params.M);
  return b.build();
}

Builder fig4_base(std::string name, double alpha) {
  Builder b(std::move(name));
  b.vertex("b1", 1).vertex("b2", 1).vertex("b3", 1).vertex("b4", 1);
  b.vertex("t1", 1).vertex("t2", 1).vertex("t3", 1).vertex("t4", 1);
  b.edge("b1", "b2", 4 * alpha).edge("b2", "b3", 10 * alpha).edge("b3", "b4", 4 * alpha).edge("b4", "t4", 1);
  b.edge("t4", "t3", 2).edge("t3", "t2", 10 * alpha).edge("t2", "t1", 2).edge("t1", "b1", 1);
  b.named("rows", "b1,b2,b3,b4|t1,t2,t3,t4")
      .named("D", "b1,t1|b2,b3|b4,t4|t2,t3")
      .named("C", "b1,b2,b3,b4|t1|t2,t3|t4")
      .named("R", "b1|b2,b3,b4|t1|t2,t3,t4");
  return b;
}

Fixture fig4() {
  Builder b = fig4_base("FIG4", 1.0);
  b.computed("total_mass", 8)
      .computed("total_edge_weight", 34)
      .stated("rows.cut", 2)
      .stated("D.cut", 12)
      .stated("C.cut", 6)
      .stated("C.deviation", kSqrt6)
      .stated("R.cut", 8)
      .stated("R.deviation", 2)
      .stated("breakpoint", kSqrt6 / (6 + kSqrt6));
  return b.build();
}

Fixture fig5() {
  Builder b("FIG5");
  b.vertex("bl", 20).vertex("bm", 14).vertex("br", 4).vertex("tl", 20).vertex("tm", 10);
  b.edge("bl", "tl", 16).edge("tl", "tm", 4).edge("tm", "br", 12).edge("br", "bm", 16).edge("bm", "bl", 4);
  b.named("C2", "bl,tl|bm,br,tm").named("C4", "bl|tl|tm|bm,br").named("D4", "bl|tl|tm,br|bm");
  b.computed("total_mass", 68)
      .stated("C2.half", 4 + 3 * kSqrt2)
      .stated("C4.half", 18 + kSqrt17)
      .stated("D4.half", 23)
      .stated("C4.cut", 36)
      .stated("induced_C4.half", 6 + 2 * kSqrt2)
      .stated("induced_D4.half", 8);
  return b.build();
}

Fixture fig6(const FixtureParams& params) {
  const double alpha = fig6_alpha(params.p);
  Builder b = fig4_base("FIG6", alpha);
  const double p = params.p;
  const double root4 = std::pow(4.0, 1.0 / p);
  const double mixed = std::pow(2.0 + std::pow(2.0, p), 1.0 / p);
  b.named("I", "b1|b2,b3,b4|t1|t2,t3,t4");
  b.computed("alpha", alpha)
      .stated("I.cut", 4 + 4 * alpha)
      .stated("I.deviation", root4)
      .stated("D.cut", 4 + 8 * alpha)
      .stated("C.cut", 6)
      .stated("C.deviation", mixed)
      .stated("D_beats_I_below", root4 / (4 * alpha + root4))
      .stated("C_beats_I_above", (mixed - root4) / (4 * alpha - 2 + mixed - root4));
  return b.build();
}

Fixture fig7() {
  Builder b("FIG7");
  const double masses[] = {2, 2, 2, 2, 4, 4, 2, 2, 2, 2};
  const double weights[] = {1, 1, 1, 1, 4, 1, 1, 1, 1};
  for (int i = 0; i < 10; ++i) b.vertex("v" + std::to_string(i + 1), masses[i]);
  for (int i = 0; i < 9; ++i) b.edge("v" + std::to_string(i + 1), "v" + std::to_string(i + 2), weights[i]);
  b.named("D2", "v1,v2,v3,v4,v5|v6,v7,v8,v9,v10")
      .named("C4", "v1,v2|v3,v4|v5,v6|v7,v8,v9,v10")
      .named("D4", "v1,v2,v3|v4,v5|v6,v7|v8,v9,v10");
  b.computed("total_mass", 24)
      .stated("middle_edge", 4)
      .stated("D2.half", 2)
      .stated("other2.half_min", 2.5)
      .stated("C4.half", 2.5)
      .stated("C4.deviation", 2)
      .stated("D4.half", 3);
  return b.build();
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

Fixture load_fixture(std::string_view name, const FixtureParams& params) {
  const auto key = upper(name);
  if (key == "FIG1") return fig1();
  if (key == "FIG1-HAT") return fig1_hat();
  if (key == "FIG2") return fig2();
  if (key == "FIG2-HAT") return fig2_hat();
  if (key == "FIG3") return fig3(params);
  if (key == "FIG4") return fig4();
  if (key == "FIG5") return fig5();
  if (key == "FIG6") return fig6(params);
  if (key == "FIG7") return fig7();
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace districtor
