#include <doctest.h>

#include "support.hpp"
#include "thinloop/corpus.hpp"
#include "thinloop/crosscheck.hpp"

using namespace thinloop;

namespace {

SampledCurve from_corpus(const std::string& name, int samples = 512) {
  SynthOptions opts;
  opts.samples_per_arc = samples;
  return synth_curve(corpus_entry(name).spec, opts).curve;
}

SampledCurve constant_loop(const Vec& at, int samples = 256) {
  std::vector<Vec> pts(samples, at);
  return SampledCurve::from_points(std::move(pts), {}, true);
}

BatteryParams fast_params() {
  BatteryParams p;
  p.connections = 8;
  p.homotopy.rows = 257;
  return p;
}

}  // namespace

TEST_CASE("battery: whisker loop satisfies all four routes") {
  const auto loop = from_corpus("chain2");
  const auto b = run_battery(loop, fast_params());
  CHECK(b.route_a);
  CHECK(b.route_b);
  CHECK(b.route_c);
  CHECK(b.route_d);
  CHECK(b.agree_abd);
  CHECK(b.c_agrees);
  CHECK(b.sampling.worst_deviation <= 1e-5);
}

TEST_CASE("battery: commutator fails all four routes on SU2") {
  const auto loop = from_corpus("commutator");
  const auto b = run_battery(loop, fast_params());
  CHECK_FALSE(b.route_a);
  CHECK_FALSE(b.route_b);
  CHECK_FALSE(b.route_c);
  CHECK_FALSE(b.route_d);
  CHECK(b.agree_abd);
  CHECK(b.c_agrees);
  CHECK(b.sampling.worst_deviation > 1e-2);
}

TEST_CASE("battery: U1 cannot distinguish the commutator") {
  const auto loop = from_corpus("commutator");
  BatteryParams p = fast_params();
  p.group = LieGroupSpec::make(GroupName::U1);
  const auto b = run_battery(loop, p);
  CHECK_FALSE(b.route_a);
  CHECK(b.route_c);        // abelian holonomy stays trivial
  CHECK_FALSE(b.c_agrees); // the documented counter-model
  CHECK(b.agree_abd);
}

TEST_CASE("crosscheck: a loop against itself") {
  const auto loop = from_corpus("chain3");
  const auto rep = crosscheck(loop, loop, fast_params());
  CHECK(rep.equivalent);
  CHECK(rep.agree);
  CHECK(rep.words_equal);
}

TEST_CASE("crosscheck: the paper's whisker example against its core") {
  // synth(a b b' c) vs synth(a c): same essential arcs, whiskers differ.
  CurveSpec lhs = corpus_entry("whisker_tail").spec;
  CurveSpec rhs;
  rhs.dim = 2;
  rhs.arcs = {lhs.arcs[0], lhs.arcs[2]};  // a and c
  rhs.traversal = {{"a", +1}, {"c", +1}};
  SynthOptions opts;
  opts.samples_per_arc = 512;
  const auto a = synth_curve(lhs, opts).curve;
  const auto b = synth_curve(rhs, opts).curve;
  const auto rep = crosscheck(a, b, fast_params());
  CHECK(rep.words_matched);
  CHECK(rep.words_equal);
  CHECK(rep.equivalent);
  CHECK(rep.agree);
}

TEST_CASE("crosscheck: equivalent pair with a nontrivial core") {
  const auto a = from_corpus("commutator_daisy");
  const auto b = from_corpus("whisker_commutator");
  const auto rep = crosscheck(a, b, fast_params());
  CHECK(rep.words_matched);
  CHECK(rep.words_equal);
  CHECK(rep.equivalent);
  CHECK(rep.agree);
}

TEST_CASE("crosscheck: fused split segment equals its single-arc version") {
  const auto a = from_corpus("collinear_fuse");
  const auto b = from_corpus("fused_counterpart");
  const auto rep = crosscheck(a, b, fast_params());
  CHECK(rep.equivalent);
  CHECK(rep.agree);
}

TEST_CASE("crosscheck: figure eight differs from the commutator") {
  const auto a = from_corpus("figure_eight");
  const auto b = from_corpus("commutator");
  const auto rep = crosscheck(a, b, fast_params());
  CHECK(rep.words_matched);  // same petals
  CHECK_FALSE(rep.words_equal);
  CHECK_FALSE(rep.equivalent);
  CHECK(rep.agree);
}

TEST_CASE("crosscheck: commutator against the constant loop") {
  const auto a = from_corpus("commutator");
  const auto b = constant_loop(a.points.front());
  const auto rep = crosscheck(a, b, fast_params());
  CHECK_FALSE(rep.equivalent);
  CHECK(rep.agree);
  CHECK_FALSE(rep.product.route_c);
}

TEST_CASE("reports are deterministic") {
  const auto a = from_corpus("figure_eight");
  const auto b = from_corpus("commutator");
  const auto r1 = render_crosscheck(crosscheck(a, b, fast_params()));
  const auto r2 = render_crosscheck(crosscheck(a, b, fast_params()));
  CHECK(r1 == r2);
}
