#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "support.hpp"
#include "thinloop/curve.hpp"
#include "thinloop/tree.hpp"

using namespace thinloop;
using testsupport::segment_polyline;
using testsupport::vec2;
using testsupport::word_from;

namespace {

// Independent parenthesis-tree oracle: recursive descent over a
// relabeled word, recording each pair's parent and children.
struct ParenOracle {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<int> top;

  explicit ParenOracle(const Word& w) {
    int m = static_cast<int>(w.size() / 2);
    parent.assign(m, -1);
    children.assign(m, {});
    std::size_t pos = 0;
    while (pos < w.size()) parse(w, pos, -1);
  }
  void parse(const Word& w, std::size_t& pos, int up) {
    const Letter l = w.letters[pos];
    REQUIRE(l.sign > 0);
    const int id = l.arc;
    parent[id] = up;
    if (up < 0)
      top.push_back(id);
    else
      children[up].push_back(id);
    ++pos;
    while (w.letters[pos].sign > 0) parse(w, pos, id);
    REQUIRE(w.letters[pos].arc == id);
    ++pos;
  }
};

CurveSpec collinear_split_spec() {
  // One straight segment split into halves, traversed a b b' a' with a
  // smooth pass-through at the shared point: a spurious corner.
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(1, 0), 1024)});
  spec.arcs.push_back({"b", segment_polyline(vec2(1, 0), vec2(2, 0), 1024)});
  spec.traversal = {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}};
  return spec;
}

CurveSpec bent_split_spec() {
  // Same combinatorics but with a genuine right-angle corner.
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(1, 0), 1024)});
  spec.arcs.push_back({"b", segment_polyline(vec2(1, 0), vec2(1, 1), 1024)});
  spec.traversal = {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}};
  return spec;
}

}  // namespace

TEST_CASE("relabeling gives unique letters, positive first") {
  const Word w = word_from("a a' a a'");
  const auto p = nesting_pairing(w);
  REQUIRE(p.has_value());
  const RelabeledWord r = relabel_occurrences(w, *p);
  REQUIRE(r.word.size() == 4);
  CHECK(r.word.letters[0] == Letter{0, +1});
  CHECK(r.word.letters[1] == Letter{0, -1});
  CHECK(r.word.letters[2] == Letter{1, +1});
  CHECK(r.word.letters[3] == Letter{1, -1});
  CHECK_FALSE(r.pairs[0].flipped);

  const Word v = word_from("a' a");
  const RelabeledWord rv = relabel_occurrences(v, *nesting_pairing(v));
  CHECK(rv.word.letters[0] == Letter{0, +1});
  CHECK(rv.word.letters[1] == Letter{0, -1});
  CHECK(rv.pairs[0].flipped);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const Word u = testsupport::random_whisker(rng, 1 + trial % 6, 3);
    const RelabeledWord ru = relabel_occurrences(u, *nesting_pairing(u));
    std::vector<int> count(ru.pairs.size(), 0);
    int first_sign_ok = 0;
    std::vector<int> seen(ru.pairs.size(), 0);
    for (const Letter& l : ru.word.letters) {
      count[l.arc]++;
      if (!seen[l.arc]) {
        seen[l.arc] = 1;
        first_sign_ok += l.sign > 0;
      }
    }
    for (int cnt : count) CHECK(cnt == 2);
    CHECK(first_sign_ok == static_cast<int>(ru.pairs.size()));
  }
}

TEST_CASE("nesting matches the parenthesis oracle") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 400; ++trial) {
    const Word w = testsupport::random_whisker(rng, 1 + trial % 7, 3);
    const RelabeledWord r = relabel_occurrences(w, *nesting_pairing(w));
    const Nesting nest = build_nesting(r);
    const ParenOracle oracle(r.word);
    REQUIRE(nest.annuli.size() == oracle.parent.size());
    for (std::size_t k = 0; k < nest.annuli.size(); ++k) {
      CHECK(nest.annuli[k].parent == oracle.parent[k]);
      CHECK(nest.annuli[k].children == oracle.children[k]);
    }
    CHECK(nest.top == oracle.top);
  }
}

TEST_CASE("nesting of fixed shapes") {
  {
    const Word w = word_from("a b b' a'");
    const Nesting nest = build_nesting(relabel_occurrences(w, *nesting_pairing(w)));
    CHECK(nest.annuli[0].children == std::vector<int>{1});
    CHECK(region_kind_of(nest, 0) == RegionKind::Corner);
    CHECK(region_kind_of(nest, 1) == RegionKind::Tip);
    CHECK(region_kind_of(nest, -1) == RegionKind::Root);
  }
  {
    const Word w = word_from("a a' b b'");
    const Nesting nest = build_nesting(relabel_occurrences(w, *nesting_pairing(w)));
    CHECK(nest.top == std::vector<int>{0, 1});
    CHECK(region_kind_of(nest, 0) == RegionKind::Tip);
    CHECK(region_kind_of(nest, 1) == RegionKind::Tip);
  }
  {
    // Figure-1 arrangement: z outermost, then x, succeeded by y.
    const Word w = word_from("z x x' y y' z'");
    const Nesting nest = build_nesting(relabel_occurrences(w, *nesting_pairing(w)));
    // Relabeled ids follow opening order: z=0, x=1, y=2.
    CHECK(nest.annuli[0].children == std::vector<int>{1, 2});
    CHECK(region_kind_of(nest, 0) == RegionKind::Branch);
  }
}

TEST_CASE("combinatorial tree shapes and depths") {
  auto make = [](const std::string& text, std::vector<double> lens) {
    const Word w = testsupport::word_from(text);
    const RelabeledWord r = relabel_occurrences(w, *nesting_pairing(w));
    return build_tree_from_word(fused_from_nesting(build_nesting(r)), lens);
  };
  {
    const FactorTree t = make("a a'", {2.5});
    CHECK(t.edges.size() == 1);
    CHECK(t.vertices[1].kind == RegionKind::Tip);
    CHECK(t.vertices[1].depth == 2.5);
  }
  {
    const FactorTree t = make("a b b' a'", {1.0, 0.5});
    CHECK(t.vertices[2].depth == doctest::Approx(1.5));
    CHECK(t.vertices[2].kind == RegionKind::Tip);
    CHECK(t.vertices[1].kind == RegionKind::Corner);
  }
  {
    const FactorTree t = make("a b b' c c' a'", {1.0, 0.5, 0.25});
    CHECK(t.vertices[1].kind == RegionKind::Branch);
    CHECK(t.vertices[1].child_edges.size() == 2);
    // Degree 3: two children plus the parent edge.
    CHECK(t.vertices[2].depth == doctest::Approx(1.5));
    CHECK(t.vertices[3].depth == doctest::Approx(1.25));
  }
}

TEST_CASE("tree distance and root paths") {
  const Word w = word_from("a b b' c c' a'");
  const RelabeledWord r = relabel_occurrences(w, *nesting_pairing(w));
  const FactorTree t =
      build_tree_from_word(fused_from_nesting(build_nesting(r)), {1.0, 0.5, 0.25});

  const TreePoint tip_b{-1, 2, 0.0};
  const TreePoint tip_c{-1, 3, 0.0};
  CHECK(tree_distance(t, tip_b, tip_c) == doctest::Approx(0.75));
  CHECK(tree_distance(t, TreePoint{-1, 0, 0.0}, tip_b) == doctest::Approx(1.5));

  // Points on one edge.
  const TreePoint p1{0, 1, 0.2}, p2{0, 1, 0.9};
  CHECK(tree_distance(t, p1, p2) == doctest::Approx(0.7));
  // Across the branch vertex.
  const TreePoint q1{1, 2, 0.3}, q2{2, 3, 0.1};
  CHECK(tree_distance(t, q1, q2) == doctest::Approx(0.4));

  // Root path isometry along vertex chains.
  const RootPath path(t, tip_b);
  CHECK(path.total() == doctest::Approx(1.5));
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> uni(0.0, path.total());
  for (int trial = 0; trial < 200; ++trial) {
    const double s1 = uni(rng), s2 = uni(rng);
    CHECK(tree_distance(t, path.at(s1), path.at(s2)) ==
          doctest::Approx(std::abs(s1 - s2)).epsilon(1e-12));
  }
  CHECK(RootPath(t, TreePoint{-1, 0, 0.0}).total() == 0.0);
}

TEST_CASE("spurious corners fuse, genuine corners do not") {
  const auto good = synth_curve(collinear_split_spec());
  const auto d1 = decompose(good.curve);
  REQUIRE(word_of(d1).size() == 4);
  const auto f1 = factor_curve(good.curve, d1);
  CHECK(f1.fused.fused_away == 1);
  CHECK(f1.tree.edges.size() == 1);
  // The fused edge carries the full doubled segment length.
  CHECK(f1.tree.edges[0].length == doctest::Approx(2.0).epsilon(0.02));

  const auto bent = synth_curve(bent_split_spec());
  const auto d2 = decompose(bent.curve);
  const auto f2 = factor_curve(bent.curve, d2);
  CHECK(f2.fused.fused_away == 0);
  CHECK(f2.tree.edges.size() == 2);
}

TEST_CASE("factorization of the out-and-back curve") {
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(1, 0), 2048)});
  spec.traversal = {{"a", +1}, {"a", -1}};
  const auto r = synth_curve(spec);
  const auto d = decompose(r.curve);
  const auto f = factor_curve(r.curve, d);

  REQUIRE(f.tree.edges.size() == 1);
  CHECK(f.fact.tree_points.front().is_vertex());
  CHECK(f.fact.tree_points.front().vertex == 0);
  CHECK(f.fact.tree_points.back().is_vertex());
  CHECK(f.fact.tree_points.back().vertex == 0);

  // gamma_tilde pauses at the tip during the dwell.
  int tip_hits = 0;
  for (const TreePoint& p : f.fact.tree_points)
    if (p.is_vertex() && p.vertex == 1) ++tip_hits;
  CHECK(tip_hits >= 2);

  const auto table = arclength_table(r.curve);
  CHECK(f.fact.report.max_point_error <= 1e-3 * table.total());
  CHECK(f.fact.report.fold_lipschitz <= 1.01);

  // The displayed 1-Lipschitz inequality for gamma_tilde, with slack for
  // the close-occurrence rescale.
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> pick(0, r.curve.sample_count() - 1);
  const double slack = 1.0 + 5e-3;
  for (int trial = 0; trial < 1000; ++trial) {
    const int i = pick(rng), j = pick(rng);
    const double dl = std::abs(table.at_sample(i) - table.at_sample(j));
    CHECK(tree_distance(f.tree, f.fact.tree_points[i], f.fact.tree_points[j]) <=
          slack * dl + 1e-9);
  }
}

TEST_CASE("factorization of a b b' a' stacks two edges") {
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(1, 0), 1024)});
  spec.arcs.push_back({"b", segment_polyline(vec2(1, 0), vec2(1.6, 0.8), 1024)});
  spec.traversal = {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}};
  const auto r = synth_curve(spec);
  const auto d = decompose(r.curve);
  const auto f = factor_curve(r.curve, d);
  REQUIRE(f.tree.edges.size() == 2);
  const int tip = f.tree.edges[1].child_vertex;
  CHECK(f.tree.vertices[tip].depth == doctest::Approx(2.0).epsilon(0.03));
  CHECK(f.fact.report.fold_lipschitz <= 1.01);

  // fold maps the interior vertex to the shared junction image.
  const auto table = arclength_table(r.curve);
  const FoldMap fold(r.curve, table, f.tree);
  const int mid_vertex = f.tree.edges[1].parent_vertex;
  CHECK((fold(TreePoint{-1, mid_vertex, 0.0}) - vec2(1, 0)).norm() < 1e-6);
  CHECK((fold(TreePoint{-1, 0, 0.0}) - r.curve.points.front()).norm() == 0.0);
}

TEST_CASE("theorem 3 (d) => (a): curves built from a tree decompose to whiskers") {
  // Build the fold replica of a factored curve, decompose it, and check
  // the word reduces via the monotone-depth sign rule.
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(1, 0), 1024)});
  spec.arcs.push_back({"b", segment_polyline(vec2(1, 0), vec2(1.6, 0.8), 1024)});
  spec.traversal = {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}};
  const auto r = synth_curve(spec);
  const auto d = decompose(r.curve);
  const auto f = factor_curve(r.curve, d);
  const auto table = arclength_table(r.curve);
  const FoldMap fold(r.curve, table, f.tree);

  std::vector<Vec> replica_pts;
  for (const TreePoint& p : f.fact.tree_points) replica_pts.push_back(fold(p));
  const auto replica = SampledCurve::from_points(replica_pts, r.curve.params,
                                                 r.curve.loop);
  const auto dd = decompose(replica);
  const Word w = word_of(dd);
  CHECK(is_whisker(w));

  // Sign rule: |gamma_tilde| is monotone on each stratum interval, and
  // its direction matches the letter sign.
  const auto ff = factor_curve(replica, dd);
  for (std::size_t k = 0; k < dd.intervals.size(); ++k) {
    const auto& iv = dd.intervals[k];
    const double d0 = depth_of(ff.tree, ff.fact.tree_points[iv.samples.lo]);
    const double d1 = depth_of(ff.tree, ff.fact.tree_points[iv.samples.hi]);
    const int sign_by_depth = d1 > d0 ? +1 : -1;
    // Relabeled occurrences open positively: check against the pairing.
    const Letter l = ff.relabeled.word.letters[k];
    CHECK(l.sign == sign_by_depth);
  }
}

TEST_CASE("factor_curve rejects non-whiskers") {
  const auto fig8 = [] {
    CurveSpec spec;
    spec.dim = 2;
    spec.arcs.push_back({"a", testsupport::petal_polyline(0.0, 1.0, 2048)});
    spec.arcs.push_back({"b", testsupport::petal_polyline(M_PI, 1.0, 2048)});
    spec.traversal = {{"a", +1}, {"b", +1}};
    return synth_curve(spec);
  }();
  const auto d = decompose(fig8.curve);
  CHECK_THROWS_AS(factor_curve(fig8.curve, d), ValidationError);
}
