#include "thinloop/corpus.hpp"

#include <cmath>

namespace thinloop {

namespace {
Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}
Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}
}  // namespace

std::vector<Vec> segment_arc(const Vec& a, const Vec& b, int n) {
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i)
    pts.push_back(a + (b - a) * (static_cast<double>(i) / (n - 1)));
  return pts;
}

std::vector<Vec> circle_arc(const Vec& center, double radius, double a0,
                            double a1, int n) {
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double a = a0 + (a1 - a0) * i / (n - 1);
    pts.push_back(center + radius * v2(std::cos(a), std::sin(a)));
  }
  return pts;
}

std::vector<Vec> petal_arc(double theta0, double scale, int n) {
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    const double th = theta0 + u * M_PI_2;
    const double r = scale * std::sin(2.0 * (th - theta0));
    pts.push_back(v2(r * std::cos(th), r * std::sin(th)));
  }
  pts.front() = v2(0, 0);
  pts.back() = v2(0, 0);
  return pts;
}

std::vector<Vec> s_curve_arc(const Vec& a, const Vec& b, double sway, int n) {
  Vec dir = b - a;
  Vec normal(2);
  normal << -dir[1], dir[0];
  normal.normalize();
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    pts.push_back(a + t * dir + sway * std::sin(2 * M_PI * t) * normal);
  }
  return pts;
}

std::vector<Vec> helix_arc(double radius, double pitch, double turns, int n) {
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    const double a = 2 * M_PI * turns * u;
    pts.push_back(v3(radius * std::cos(a), radius * std::sin(a), pitch * u));
  }
  return pts;
}

namespace {

// Petal lifted into the xz-plane: meets the xy petals only at the origin
// and along distinct rays.
std::vector<Vec> petal_xz(double theta0, double scale, int n = 2048) {
  std::vector<Vec> flat = petal_arc(theta0, scale, n);
  std::vector<Vec> out;
  out.reserve(n);
  for (const Vec& p : flat) out.push_back(v3(p[0], 0.0, p[1]));
  return out;
}

std::vector<Vec> lift3(const std::vector<Vec>& flat) {
  std::vector<Vec> out;
  out.reserve(flat.size());
  for (const Vec& p : flat) out.push_back(v3(p[0], p[1], 0.0));
  return out;
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> all;
  auto add = [&](std::string name, int dim, std::vector<ArcSpec> arcs,
                 std::vector<TraversalStep> trav, std::string word, bool loop,
                 bool whisker, double dwell = 0.02) {
    CurveSpec spec;
    spec.dim = dim;
    spec.arcs = std::move(arcs);
    spec.traversal = std::move(trav);
    spec.dwell = dwell;
    all.push_back({std::move(name), std::move(spec), std::move(word), loop,
                   whisker});
  };

  const Vec o = v2(0, 0);

  // --- whisker loops ---
  add("seg_out_back", 2, {{"a", segment_arc(o, v2(1, 0))}},
      {{"a", +1}, {"a", -1}}, "a a'", true, true);
  add("arc_out_back", 2,
      {{"a", circle_arc(v2(0, 1), 1.0, -M_PI_2, M_PI_2 * 0.4)}},
      {{"a", +1}, {"a", -1}}, "a a'", true, true);
  add("chain2", 2,
      {{"a", segment_arc(o, v2(1, 0))},
       {"b", segment_arc(v2(1, 0), v2(1.6, 0.9))}},
      {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}}, "a b b' a'", true, true);
  add("chain3", 2,
      {{"a", segment_arc(o, v2(1, 0))},
       {"b", segment_arc(v2(1, 0), v2(1.6, 0.9))},
       {"c", segment_arc(v2(1.6, 0.9), v2(2.5, 0.7))}},
      {{"a", +1}, {"b", +1}, {"c", +1}, {"c", -1}, {"b", -1}, {"a", -1}},
      "a b c c' b' a'", true, true);
  add("twin_whiskers", 2,
      {{"a", segment_arc(o, v2(1, 0))}, {"b", segment_arc(o, v2(0, 1))}},
      {{"a", +1}, {"a", -1}, {"b", +1}, {"b", -1}}, "a a' b b'", true, true);
  add("branch2", 2,
      {{"a", segment_arc(o, v2(1, 0))},
       {"b", segment_arc(v2(1, 0), v2(1.7, 0.7))},
       {"c", segment_arc(v2(1, 0), v2(1.7, -0.7))}},
      {{"a", +1}, {"b", +1}, {"b", -1}, {"c", +1}, {"c", -1}, {"a", -1}},
      "a b b' c c' a'", true, true);
  add("branch3", 2,
      {{"a", segment_arc(o, v2(1, 0))},
       {"b", segment_arc(v2(1, 0), v2(1.7, 0.7))},
       {"c", segment_arc(v2(1, 0), v2(1.7, -0.7))},
       {"d", segment_arc(v2(1, 0), v2(2, 0))}},
      {{"a", +1},
       {"b", +1},
       {"b", -1},
       {"c", +1},
       {"c", -1},
       {"d", +1},
       {"d", -1},
       {"a", -1}},
      "a b b' c c' d d' a'", true, true);
  add("repeat_whisker", 2, {{"a", segment_arc(o, v2(1, 0.2))}},
      {{"a", +1}, {"a", -1}, {"a", +1}, {"a", -1}}, "a a' a a'", true, true);
  add("collinear_fuse", 2,
      {{"a", segment_arc(o, v2(1, 0))}, {"b", segment_arc(v2(1, 0), v2(2, 0))}},
      {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}}, "a b b' a'", true, true);
  add("whisker_3d", 3, {{"a", helix_arc(1.0, 0.5, 0.75)}},
      {{"a", +1}, {"a", -1}}, "a a'", true, true);
  add("chain2_3d", 3,
      {{"a", segment_arc(v3(0, 0, 0), v3(1, 0.2, 0.4))},
       {"b", segment_arc(v3(1, 0.2, 0.4), v3(1.5, 1.0, 0.1))}},
      {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}}, "a b b' a'", true, true);
  add("dwell_heavy", 2, {{"a", segment_arc(o, v2(1, 0))}},
      {{"a", +1}, {"a", -1}}, "a a'", true, true, 0.08);
  add("scurve_whisker", 2,
      {{"a", s_curve_arc(o, v2(1.5, 0.2), 0.25)},
       {"b", segment_arc(v2(1.5, 0.2), v2(2.2, 1.0))}},
      {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}}, "a b b' a'", true, true);
  add("deep_nest4", 2,
      {{"a", segment_arc(o, v2(1, 0))},
       {"b", segment_arc(v2(1, 0), v2(1.7, 0.6))},
       {"c", segment_arc(v2(1.7, 0.6), v2(2.5, 0.2))},
       {"d", segment_arc(v2(2.5, 0.2), v2(3.1, 0.9))}},
      {{"a", +1},
       {"b", +1},
       {"c", +1},
       {"d", +1},
       {"d", -1},
       {"c", -1},
       {"b", -1},
       {"a", -1}},
      "a b c d d' c' b' a'", true, true);
  add("petal_out_back", 2, {{"a", petal_arc(0.0, 1.0)}},
      {{"a", +1}, {"a", -1}}, "a a'", true, true);
  add("twin_3", 2,
      {{"a", segment_arc(o, v2(1, 0))},
       {"b", segment_arc(o, v2(-0.5, 0.87))},
       {"c", segment_arc(o, v2(-0.5, -0.87))}},
      {{"a", +1}, {"a", -1}, {"b", +1}, {"b", -1}, {"c", +1}, {"c", -1}},
      "a a' b b' c c'", true, true);

  // --- non-whisker loops ---
  add("commutator", 2,
      {{"a", petal_arc(0.0, 1.0)}, {"b", petal_arc(M_PI, 1.0)}},
      {{"a", +1}, {"b", +1}, {"a", -1}, {"b", -1}}, "a b a' b'", true, false);
  add("figure_eight", 2,
      {{"a", petal_arc(0.0, 1.0)}, {"b", petal_arc(M_PI, 1.0)}},
      {{"a", +1}, {"b", +1}}, "a b", true, false);
  add("circle", 2, {{"a", circle_arc(v2(0, 1), 1.0, -M_PI_2, 3 * M_PI_2)}},
      {{"a", +1}}, "a", true, false);
  add("circle_twice", 2,
      {{"a", circle_arc(v2(0, 1), 1.0, -M_PI_2, 3 * M_PI_2)}},
      {{"a", +1}, {"a", +1}}, "a a", true, false);
  add("daisy3", 2,
      {{"a", petal_arc(0.0, 1.0)},
       {"b", petal_arc(2 * M_PI / 3, 1.0)},
       {"c", petal_arc(4 * M_PI / 3, 1.0)}},
      {{"a", +1}, {"b", +1}, {"c", +1}}, "a b c", true, false);
  add("aba", 2,
      {{"a", petal_arc(0.0, 1.0)}, {"b", petal_arc(2 * M_PI / 3, 1.0)}},
      {{"a", +1}, {"b", +1}, {"a", -1}}, "a b a'", true, false);
  add("abab", 2,
      {{"a", petal_arc(0.0, 1.0)}, {"b", petal_arc(2 * M_PI / 3, 1.0)}},
      {{"a", +1}, {"b", +1}, {"a", +1}, {"b", +1}}, "a b a b", true, false);
  add("aba_bi_ai", 2,
      {{"a", petal_arc(0.0, 1.0)}, {"b", petal_arc(2 * M_PI / 3, 1.0)}},
      {{"a", +1}, {"b", +1}, {"a", +1}, {"b", -1}, {"a", -1}},
      "a b a b' a'", true, false);
  add("commutator_3d", 3,
      {{"a", lift3(petal_arc(0.0, 1.0))}, {"b", petal_xz(M_PI, 1.0)}},
      {{"a", +1}, {"b", +1}, {"a", -1}, {"b", -1}}, "a b a' b'", true, false);
  add("square_loop", 2,
      {{"a", segment_arc(o, v2(1, 0))},
       {"b", segment_arc(v2(1, 0), v2(1, 1))},
       {"c", segment_arc(v2(1, 1), v2(0, 1))},
       {"d", segment_arc(v2(0, 1), o)}},
      {{"a", +1}, {"b", +1}, {"c", +1}, {"d", +1}}, "a b c d", true, false);
  add("fig8_asym", 2,
      {{"a", petal_arc(0.0, 1.0)}, {"b", petal_arc(M_PI, 0.7)}},
      {{"a", +1}, {"b", +1}}, "a b", true, false);
  add("circle_3", 2, {{"a", circle_arc(v2(0, 1), 1.0, -M_PI_2, 3 * M_PI_2)}},
      {{"a", +1}, {"a", +1}, {"a", +1}}, "a a a", true, false);
  add("daisy3_mixed", 2,
      {{"a", petal_arc(0.0, 1.0)},
       {"b", petal_arc(2 * M_PI / 3, 1.0)},
       {"c", petal_arc(4 * M_PI / 3, 1.0)}},
      {{"a", +1}, {"b", -1}, {"c", +1}}, "a b' c", true, false);
  add("whisker_commutator", 2,
      {{"a", petal_arc(0.0, 1.0)},
       {"b", petal_arc(2 * M_PI / 3, 1.0)},
       {"c", segment_arc(o, v2(-0.4, -0.9))}},
      {{"a", +1}, {"c", +1}, {"c", -1}, {"b", +1}, {"a", -1}, {"b", -1}},
      "a c c' b a' b'", true, false);
  // Same reduced word as whisker_commutator over the same two petals:
  // the showcase equivalent pair with a nontrivial core.
  add("commutator_daisy", 2,
      {{"a", petal_arc(0.0, 1.0)}, {"b", petal_arc(2 * M_PI / 3, 1.0)}},
      {{"a", +1}, {"b", +1}, {"a", -1}, {"b", -1}}, "a b a' b'", true, false);
  // The single-arc counterpart of collinear_fuse (identical image).
  add("fused_counterpart", 2, {{"a", segment_arc(o, v2(2, 0), 4096)}},
      {{"a", +1}, {"a", -1}}, "a a'", true, true);

  // --- open curves ---
  add("whisker_tail", 2,
      {{"a", segment_arc(o, v2(1, 0))},
       {"b", circle_arc(v2(1, 0.5), 0.5, -M_PI_2, M_PI_2)},
       {"c", segment_arc(v2(1, 0), v2(2, -1))}},
      {{"a", +1}, {"b", +1}, {"b", -1}, {"c", +1}}, "a b b' c", false, false);
  add("open_single", 2, {{"a", s_curve_arc(o, v2(2, 0.4), 0.3)}}, {{"a", +1}},
      "a", false, false);
  add("open_mixed", 2,
      {{"a", segment_arc(o, v2(1, 0))},
       {"b", segment_arc(v2(1, 0), v2(1.6, 0.9))},
       {"c", segment_arc(o, v2(-0.8, -0.6))}},
      {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}, {"c", +1}},
      "a b b' a' c", false, false);

  return all;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const CorpusEntry& e : corpus())
    if (e.name == name) return e;
  throw ValidationError("no corpus entry named '" + name + "'");
}

}  // namespace thinloop
