#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "thinloop/homotopy.hpp"

using namespace thinloop;
using testsupport::segment_polyline;
using testsupport::vec2;

namespace {

SynthResult out_and_back(bool halt, int samples = 1024) {
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(1, 0), 4096)});
  spec.traversal = {{"a", +1}, {"a", -1}};
  if (!halt) spec.dwell = 0.0;
  SynthOptions opts;
  opts.samples_per_arc = samples;
  opts.halt_at_junctions = halt;
  SynthResult r = synth_curve(spec, opts);
  if (!halt) {
    // Keep the fast turn but pin the loop ends: pad both endpoints with
    // short dwell blocks so the discrete boundary conditions are exact.
    std::vector<Vec> pts(10, r.curve.points.front());
    pts.insert(pts.end(), r.curve.points.begin(), r.curve.points.end());
    pts.insert(pts.end(), 10, r.curve.points.back());
    r.curve = SampledCurve::from_points(std::move(pts), {}, true);
  }
  return r;
}

SynthResult two_edge_whisker(int samples = 768) {
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(1, 0), 3072)});
  spec.arcs.push_back({"b", segment_polyline(vec2(1, 0), vec2(1.5, 0.9), 3072)});
  spec.traversal = {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}};
  SynthOptions opts;
  opts.samples_per_arc = samples;
  return synth_curve(spec, opts);
}

}  // namespace

TEST_CASE("check_thin accepts a constant homotopy and rejects a sweep") {
  const auto r = out_and_back(true, 256);
  HomotopyGrid constant;
  constant.dim = 2;
  constant.t_params = r.curve.params;
  constant.rows.assign(32, r.curve.points);
  constant.r_params.resize(32);
  for (int j = 0; j < 32; ++j) constant.r_params[j] = j / 31.0;
  constant.provenance = "test";
  const auto rep = check_thin(constant);
  CHECK(rep.pass);
  CHECK(rep.max_minor_rel == 0.0);
  CHECK(rep.max_edge_partial == 0.0);

  // A filled unit square sweeps area: the minor is order one.
  HomotopyGrid sweep;
  sweep.dim = 2;
  const int n = 64;
  sweep.t_params.resize(n);
  sweep.r_params.resize(n);
  for (int k = 0; k < n; ++k)
    sweep.t_params[k] = sweep.r_params[k] = k / (n - 1.0);
  for (int j = 0; j < n; ++j) {
    std::vector<Vec> row;
    for (int i = 0; i < n; ++i) row.push_back(vec2(i / (n - 1.0), j / (n - 1.0)));
    sweep.rows.push_back(std::move(row));
  }
  const auto bad = check_thin(sweep);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_minor_rel == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("vanish_at_vertices is a near-identity on halted curves") {
  const auto r = out_and_back(true);
  const auto d = decompose(r.curve);
  const auto f = factor_curve(r.curve, d);
  const auto v = vanish_at_vertices(r.curve, d, f.tree);
  CHECK(v.forced_values.empty());
  double drift = 0.0;
  for (const auto& row : v.grid.rows)
    for (int i = 0; i < r.curve.sample_count(); ++i)
      drift = std::max(drift, (row[i] - r.curve.points[i]).norm());
  CHECK(drift <= 1e-12);
  CHECK(check_thin(v.grid).pass);
}

TEST_CASE("vanish_at_vertices halts a fast turn") {
  const auto r = out_and_back(false);
  const auto d = decompose(r.curve);
  const auto f = factor_curve(r.curve, d);
  const auto v = vanish_at_vertices(r.curve, d, f.tree);
  REQUIRE(v.forced_values.size() == 1);

  // Source transits the turn at speed. The target halts at the critical
  // point x* of the reparametrization (the parameter now mapped to the
  // vertex), where the reparametrized curve sits at the turn image.
  const auto table = arclength_table(r.curve);
  double x_star = -1.0;
  for (const auto& gap : v.reparam_map.gap_maps()) {
    const auto rg = gap.range();
    if (v.forced_values[0] > rg.lo && v.forced_values[0] < rg.hi)
      x_star = gap.inverse(v.forced_values[0]);
  }
  REQUIRE(x_star >= 0.0);
  int turn = 0;
  double best = 1e300;
  for (int i = 0; i < r.curve.sample_count(); ++i) {
    const double miss = std::abs(table.at_sample(i) - x_star);
    if (miss < best) {
      best = miss;
      turn = i;
    }
  }
  double vmax = 0.0;
  for (int i = 0; i < r.curve.sample_count(); ++i)
    vmax = std::max(vmax, r.curve.speed(i));
  CHECK(r.curve.speed(turn) > 0.2 * vmax);  // genuinely fast before
  CHECK(v.target.speed(turn) <= 1e-3 * vmax);
  CHECK((v.target.points[turn] - vec2(1, 0)).norm() <= 2e-3);

  // The input is only piecewise C^1 at its fast turn, so the homotopy
  // inherits that single tangent kink: the rank and boundary measures
  // must still pass.
  const auto rep = check_thin(v.grid);
  CHECK(rep.minors_ok);
  CHECK(rep.edges_ok);
  CHECK(image_containment(v.grid, d.eps_geo) <= d.eps_geo);

  // Partial-derivative bounds: |dH/dt| <= A sup|l'| discretely.
  double sup_speed = 0.0;
  for (int i = 0; i < r.curve.sample_count(); ++i)
    sup_speed = std::max(sup_speed, r.curve.speed(i));
  CHECK(rep.sup_dt <= 4.0 * sup_speed * 1.05);
  CHECK(rep.sup_dr <= 4.0 * sup_speed * 1.05);
}

TEST_CASE("contract_tree retracts the out-and-back to its basepoint") {
  const auto r = out_and_back(true);
  const auto d = decompose(r.curve);
  const auto f = factor_curve(r.curve, d);
  std::vector<double> lens;
  for (const auto& e : f.tree.edges) lens.push_back(e.length);
  const auto padded = padded_lengths(lens, 2.0 * f.tree.total_edge_length());
  const auto grid = contract_tree(r.curve, f.tree, f.fact, padded);

  // Ends at the basepoint.
  for (const Vec& p : grid.rows.back())
    CHECK((p - r.curve.points.front()).norm() <= 1e-12);
  // Starts at the curve.
  for (int i = 0; i < r.curve.sample_count(); ++i)
    CHECK((grid.rows.front()[i] - r.curve.points[i]).norm() == 0.0);

  const auto rep = check_thin(grid);
  CHECK(rep.pass);
  CHECK(image_containment(grid, d.eps_geo) <= d.eps_geo);
}

TEST_CASE("contract_tree pauses tips at interior vertices") {
  const auto r = two_edge_whisker();
  const auto d = decompose(r.curve);
  const auto f = factor_curve(r.curve, d);
  std::vector<double> lens;
  for (const auto& e : f.tree.edges) lens.push_back(e.length);
  const double total = f.tree.total_edge_length();
  const auto padded = padded_lengths(lens, 2.0 * total);
  HomotopyParams hp;
  hp.rows = 257;  // resolve the pause
  const auto grid = contract_tree(r.curve, f.tree, f.fact, padded, hp);

  // Column of the tip (deepest tree point).
  int tip_col = 0;
  double deepest = -1.0;
  for (int i = 0; i < r.curve.sample_count(); ++i) {
    const double dep = depth_of(f.tree, f.fact.tree_points[i]);
    if (dep > deepest) {
      deepest = dep;
      tip_col = i;
    }
  }
  // The interior vertex sits at the a-b junction image.
  const int mid_vertex = f.tree.edges[1].parent_vertex;
  const auto table = arclength_table(r.curve);
  const FoldMap fold(r.curve, table, f.tree);
  const Vec junction = fold(TreePoint{-1, mid_vertex, 0.0});

  // When the tip's track passes the junction, dH/dr vanishes there
  // (the clock pauses): find the row closest to the junction and check
  // the local r-derivative against the sweep's typical scale.
  int pause_row = -1;
  double miss = 1e300;
  for (int j = 1; j + 1 < grid.r_count(); ++j) {
    const double m = (grid.rows[j][tip_col] - junction).norm();
    if (m < miss) {
      miss = m;
      pause_row = j;
    }
  }
  REQUIRE(pause_row > 0);
  CHECK(miss < 1e-2);
  const double dr = grid.r_params[1] - grid.r_params[0];
  const double local =
      (grid.rows[pause_row + 1][tip_col] - grid.rows[pause_row - 1][tip_col])
          .norm() /
      (2 * dr);
  double sup = 0.0;
  for (int j = 1; j + 1 < grid.r_count(); ++j)
    sup = std::max(sup, (grid.rows[j + 1][tip_col] - grid.rows[j - 1][tip_col])
                            .norm() /
                            (2 * dr));
  CHECK(local <= 0.02 * sup);

  CHECK(check_thin(grid).pass);
}

TEST_CASE("remove_whiskers on a pure whisker contracts to a point") {
  const auto r = two_edge_whisker();
  const auto res = remove_whiskers(r.curve);
  CHECK(res.segment_count == 1);
  CHECK(res.reduced_word.empty());
  double spread = 0.0;
  for (const Vec& p : res.target.points)
    spread = std::max(spread, (p - res.target.points.front()).norm());
  CHECK(spread <= 1e-9);
  CHECK(check_thin(res.grid).pass);
  const double eps = resolve_eps_geo(r.curve, 0.0);
  CHECK(image_containment(res.grid, eps) <= eps);
}

TEST_CASE("remove_whiskers keeps the reduced word a b b' c -> a c") {
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(1, 0), 2048)});
  spec.arcs.push_back(
      {"b", testsupport::circle_polyline(vec2(1, 0.5), 0.5, -M_PI_2, M_PI_2, 2048)});
  spec.arcs.push_back({"c", segment_polyline(vec2(1, 0), vec2(2, -1), 2048)});
  spec.traversal = {{"a", +1}, {"b", +1}, {"b", -1}, {"c", +1}};
  const auto r = synth_curve(spec);
  const auto res = remove_whiskers(r.curve);
  CHECK(res.segment_count == 1);
  CHECK(res.reduced_word == testsupport::word_from("a c"));
  CHECK(check_thin(res.grid).pass);

  // The target decomposes to the reduced word.
  const auto dd = decompose(res.target);
  CHECK(canonical_relabel(word_of(dd)) ==
        canonical_relabel(testsupport::word_from("a c")));
}

TEST_CASE("remove_whiskers is the identity on reduced words") {
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", testsupport::petal_polyline(0.0, 1.0, 2048)});
  spec.arcs.push_back({"b", testsupport::petal_polyline(M_PI, 1.0, 2048)});
  spec.traversal = {{"a", +1}, {"b", +1}, {"a", -1}, {"b", -1}};
  const auto r = synth_curve(spec);
  const auto res = remove_whiskers(r.curve);
  CHECK(res.segment_count == 0);
  CHECK(res.reduced_word == res.source_word);
  for (int i = 0; i < r.curve.sample_count(); ++i)
    CHECK((res.target.points[i] - r.curve.points[i]).norm() == 0.0);
}

TEST_CASE("glue_and_halt flattens boundary partials") {
  // A reparametrization homotopy with endpoints fixed but no halting in
  // r: dH/dr is nonzero on the first and last rows until re-halted.
  HomotopyGrid g;
  g.dim = 2;
  const int n = 128;
  g.t_params.resize(n);
  for (int i = 0; i < n; ++i) g.t_params[i] = i / (n - 1.0);
  g.r_params = g.t_params;
  const auto base = halt_profile(0.15);  // curve with plateaued ends
  for (int j = 0; j < n; ++j) {
    std::vector<Vec> row;
    const double a = j / (n - 1.0);
    for (int i = 0; i < n; ++i) {
      const double u = i / (n - 1.0);
      const double s = (1.0 - a) * u + a * bump(u);
      row.push_back(vec2(base.eval(s), 0.0));
    }
    g.rows.push_back(std::move(row));
  }
  const auto before = check_thin(g);
  CHECK(before.max_edge_partial > 1e-3);
  const auto halted = glue_and_halt(g);
  const auto after = check_thin(halted);
  CHECK(after.max_edge_partial <= 1e-6);
  CHECK(after.minors_ok);
}
