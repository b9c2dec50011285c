#include "thinloop/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spatial_hash.hpp"

namespace thinloop {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double curve_spread(const SampledCurve& c) {
  double worst = 0.0;
  for (const Vec& p : c.points)
    worst = std::max(worst, (p - c.points.front()).norm());
  return worst;
}

}  // namespace

LoopBattery run_battery(const SampledCurve& loop, const BatteryParams& params) {
  if (!loop.loop) throw ValidationError("battery: input must be a loop");
  LoopBattery out;
  out.group = params.group.to_string();

  const ArcDecomposition decomp = decompose(loop, params.decompose);
  out.word = word_of(decomp);
  out.reduced = reduce(out.word);
  out.route_a = out.reduced.empty();

  const double total = arclength_table(loop).total();
  const double scale = 1.0 + loop.bbox_diagonal();

  // (d) tree factorization.
  if (out.route_a) {
    const TreeFactorization f = factor_curve(loop, decomp, params.factor);
    out.factor_error = f.fact.report.max_point_error;
    out.fold_lip = f.fact.report.fold_lipschitz;
    out.route_d = out.factor_error <= params.tol_factor_rel * total &&
                  out.fold_lip <= params.fold_lip_max;
  } else {
    out.route_d = false;  // no pairing, no tree
  }

  // (b) explicit thin homotopy.
  {
    const RemoveWhiskersResult rw = remove_whiskers(
        loop, params.decompose, params.factor, params.homotopy);
    out.thin = check_thin(rw.grid, params.thin);
    out.replica_error = rw.replica_error;
    out.target_spread = curve_spread(rw.target);
    const bool contracted = out.target_spread <= 1e-6 * scale;
    out.route_b = out.thin.pass && contracted && rw.reduced_word.empty();
  }

  // (c) holonomy sampling, backed by the constructive tube connection on
  // the negative side.
  {
    out.sampling =
        holonomy_trivial(loop, params.group, params.connections, params.seed,
                         params.tol_trivial, params.transport_steps);
    bool trivial = out.sampling.trivial;
    if (trivial && !out.route_a) {
      // Sampling found nothing; aim the word map at random targets.
      std::mt19937_64 rng(params.seed ^ 0x9e3779b97f4a7c15ull);
      std::vector<Mat> xi;
      for (std::size_t k = 0; k < decomp.arcs.size(); ++k)
        xi.push_back(params.group.random_algebra(rng, 0.9));
      const ConnectionField tube =
          distinguishing_connection(loop, decomp, params.group, xi);
      const HolonomyResult h =
          transport(loop, tube, std::max(params.transport_steps, 2048));
      out.tube_deviation = (h.transport - params.group.identity()).norm();
      if (out.tube_deviation > params.tol_nontrivial) trivial = false;
    }
    out.route_c = trivial;
  }

  out.agree_abd = (out.route_a == out.route_b) && (out.route_a == out.route_d);
  out.c_agrees = out.route_c == out.route_a;
  return out;
}

// ---------------------------------------------------------------------------
// Geometric alphabet matching between two decomposed curves.

namespace {

double directed_hausdorff(const std::vector<Vec>& from,
                          const std::vector<Vec>& to, double cell) {
  detail::SpatialHash hash(to, cell);
  double worst = 0.0;
  for (const Vec& p : from)
    worst = std::max(worst, hash.min_dist_within(p, 1e6 * cell));
  return worst;
}

// +1 if b runs along a, -1 if against, 0 if the arcs do not match.
int arc_direction(const Arc& a, const Arc& b, double tol) {
  auto at_fraction = [](const Arc& arc, double f) {
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i + 1 < arc.points.size(); ++i)
      cum.push_back(cum.back() + (arc.points[i + 1] - arc.points[i]).norm());
    const double target = f * cum.back();
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    return arc.points[std::min(arc.points.size() - 1,
                               static_cast<std::size_t>(it - cum.begin()))];
  };
  auto nearest_fraction = [&](const Arc& arc, const Vec& p) {
    double best = 1e300, best_f = 0.0;
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i + 1 < arc.points.size(); ++i)
      cum.push_back(cum.back() + (arc.points[i + 1] - arc.points[i]).norm());
    for (std::size_t i = 0; i < arc.points.size(); ++i) {
      const double d = (arc.points[i] - p).norm();
      if (d < best) {
        best = d;
        best_f = cum[i] / cum.back();
      }
    }
    return best_f;
  };
  (void)tol;
  const double f1 = nearest_fraction(b, at_fraction(a, 0.3));
  const double f2 = nearest_fraction(b, at_fraction(a, 0.7));
  if (std::abs(f2 - f1) < 0.05) return 0;
  return f2 > f1 ? +1 : -1;
}

}  // namespace

WordComparison compare_reduced_words(const SampledCurve& a,
                                     const SampledCurve& b,
                                     const DecomposeParams& dparams) {
  WordComparison out;
  const ArcDecomposition da = decompose(a, dparams);
  const ArcDecomposition db = decompose(b, dparams);
  const double tol_match = 2.0 * std::max(da.eps_geo, db.eps_geo);

  // Identify B's arcs with A's by symmetric Hausdorff distance; the
  // shared alphabet makes the reduced words comparable.
  std::vector<std::int32_t> rename(db.arcs.size(), -1);
  std::vector<std::int32_t> flip(db.arcs.size(), +1);
  std::int32_t next = static_cast<std::int32_t>(da.arcs.size());
  out.matched = true;
  for (std::size_t j = 0; j < db.arcs.size(); ++j) {
    for (std::size_t i = 0; i < da.arcs.size(); ++i) {
      if (directed_hausdorff(db.arcs[j].points, da.arcs[i].points, tol_match) <=
              tol_match &&
          directed_hausdorff(da.arcs[i].points, db.arcs[j].points, tol_match) <=
              tol_match) {
        const int dir = arc_direction(da.arcs[i], db.arcs[j], tol_match);
        if (dir == 0) continue;
        rename[j] = static_cast<std::int32_t>(i);
        flip[j] = dir;
        break;
      }
    }
    if (rename[j] < 0) {
      rename[j] = next++;
      flip[j] = +1;
      out.matched = false;
    }
  }

  out.reduced_a = reduce(word_of(da));
  Word wb_raw = word_of(db);
  for (Letter& l : wb_raw.letters) l = Letter{rename[l.arc], l.sign * flip[l.arc]};
  out.reduced_b = reduce(wb_raw);
  out.equal = out.reduced_a == out.reduced_b;
  const std::vector<std::string> names = default_names(static_cast<int>(next));
  out.word_a = format_word(out.reduced_a, names);
  out.word_b = format_word(out.reduced_b, names);
  return out;
}

CrosscheckReport crosscheck(const SampledCurve& a, const SampledCurve& b,
                            const BatteryParams& params) {
  CrosscheckReport rep;
  const WordComparison words = compare_reduced_words(a, b, params.decompose);
  rep.words_matched = words.matched;
  rep.words_equal = words.equal;
  rep.word_a = words.word_a;
  rep.word_b = words.word_b;

  // The four routes on the product loop.
  const SampledCurve product = concat(a, reverse(b));
  rep.product = run_battery(product, params);

  rep.equivalent = rep.product.route_a;
  if (rep.words_equal != rep.product.route_a)
    throw Error("crosscheck: word comparison disagrees with the product route");
  rep.agree = rep.product.agree_abd && rep.words_equal == rep.product.route_a;
  return rep;
}

std::string render_battery(const LoopBattery& b) {
  std::string s;
  const std::vector<std::string> names = default_names(26);
  s += "word:            " + (b.word.empty() ? "(empty)" : format_word(b.word, names)) + "\n";
  s += "reduced:         " + (b.reduced.empty() ? "(empty)" : format_word(b.reduced, names)) + "\n";
  s += "route (a) word:      " + std::string(b.route_a ? "trivial" : "nontrivial") + "\n";
  s += "route (b) homotopy:  " + std::string(b.route_b ? "contracts" : "does not contract");
  s += "   [thin minors " + fmt(b.thin.max_minor_rel) + ", edges " +
       fmt(b.thin.max_edge_partial) + ", target spread " + fmt(b.target_spread) + "]\n";
  s += "route (c) holonomy:  " + std::string(b.route_c ? "trivial" : "nontrivial");
  s += "   [group " + b.group + ", worst |U-I| " + fmt(b.sampling.worst_deviation);
  if (b.tube_deviation > 0.0) s += ", tube |U-I| " + fmt(b.tube_deviation);
  s += "]\n";
  s += "route (d) tree:      " + std::string(b.route_d ? "factors" : "does not factor");
  s += "   [error " + fmt(b.factor_error) + ", fold Lipschitz " + fmt(b.fold_lip) + "]\n";
  s += "agreement (a,b,d):   " + std::string(b.agree_abd ? "yes" : "NO") + "\n";
  s += "route (c) agrees:    " + std::string(b.c_agrees ? "yes" : "NO") + "\n";
  return s;
}

std::string render_crosscheck(const CrosscheckReport& r) {
  std::string s;
  s += "reduced word of first curve:  " + (r.word_a.empty() ? "(empty)" : r.word_a) + "\n";
  s += "reduced word of second curve: " + (r.word_b.empty() ? "(empty)" : r.word_b) + "\n";
  s += "reduced words equal:          " + std::string(r.words_equal ? "yes" : "no") + "\n";
  s += "--- product loop gamma1 . reverse(gamma2) ---\n";
  s += render_battery(r.product);
  s += "verdict: " + std::string(r.equivalent ? "EQUIVALENT" : "NOT EQUIVALENT") + "\n";
  s += "routes agree: " + std::string(r.agree ? "yes" : "NO") + "\n";
  return s;
}

}  // namespace thinloop
