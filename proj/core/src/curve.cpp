#include "thinloop/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spatial_hash.hpp"

namespace thinloop {

double SampledCurve::c1_modulus() const {
  double m = 0.0;
  for (int i = 0; i + 1 < sample_count(); ++i) {
    const double dt = params[i + 1] - params[i];
    m = std::max(m, (tangents[i + 1] - tangents[i]).norm() / dt);
  }
  return m;
}

double SampledCurve::bbox_diagonal() const {
  if (points.empty()) return 0.0;
  Vec lo = points.front(), hi = points.front();
  for (const Vec& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

void SampledCurve::validate() const {
  if (dim <= 0) throw ValidationError("curve: nonpositive dimension");
  if (points.size() < 2) throw ValidationError("curve: need at least 2 samples");
  if (points.size() != tangents.size() || points.size() != params.size())
    throw ValidationError("curve: points/tangents/params size mismatch");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim || tangents[i].size() != dim)
      throw ValidationError("curve: sample dimension mismatch");
    if (!points[i].allFinite() || !tangents[i].allFinite())
      throw ValidationError("curve: non-finite sample");
  }
  for (std::size_t i = 0; i + 1 < params.size(); ++i)
    if (!(params[i] < params[i + 1]))
      throw ValidationError("curve: parameters not strictly increasing");
  if (loop) {
    if (points.front() != points.back())
      throw ValidationError("loop: endpoints differ");
    if (tangents.front().norm() != 0.0 || tangents.back().norm() != 0.0)
      throw ValidationError("loop: endpoint tangents must vanish");
  }
}

SampledCurve SampledCurve::from_points(std::vector<Vec> pts,
                                       std::vector<double> params, bool loop) {
  SampledCurve c;
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw ValidationError("from_points: need at least 2 points");
  c.dim = static_cast<int>(pts.front().size());
  if (params.empty()) {
    params.resize(n);
    for (int i = 0; i < n; ++i) params[i] = static_cast<double>(i) / (n - 1);
  }
  c.params = std::move(params);
  c.points = std::move(pts);
  c.tangents.resize(n);
  for (int i = 0; i < n; ++i) {
    const int a = std::max(0, i - 1), b = std::min(n - 1, i + 1);
    c.tangents[i] = (c.points[b] - c.points[a]) / (c.params[b] - c.params[a]);
  }
  c.loop = loop;
  if (loop) {
    c.points.back() = c.points.front();
    c.tangents.front() = Vec::Zero(c.dim);
    c.tangents.back() = Vec::Zero(c.dim);
  }
  return c;
}

SampledCurve reverse(const SampledCurve& c) {
  SampledCurve r;
  r.dim = c.dim;
  r.loop = c.loop;
  const int n = c.sample_count();
  r.params.resize(n);
  r.points.resize(n);
  r.tangents.resize(n);
  for (int i = 0; i < n; ++i) {
    r.params[i] = 1.0 - c.params[n - 1 - i];
    r.points[i] = c.points[n - 1 - i];
    r.tangents[i] = -c.tangents[n - 1 - i];
  }
  return r;
}

SampledCurve concat(const SampledCurve& a, const SampledCurve& b,
                    double tol_join) {
  if (a.dim != b.dim) throw ValidationError("concat: dimension mismatch");
  const double scale = 1.0 + a.bbox_diagonal() + b.bbox_diagonal();
  const Vec gap = b.points.front() - a.points.back();
  if (gap.norm() > tol_join * scale)
    throw ValidationError("concat: endpoint mismatch");
  if (a.tangents.back().norm() > tol_join * scale ||
      b.tangents.front().norm() > tol_join * scale)
    throw ValidationError("concat: seam tangents do not vanish");

  SampledCurve r;
  r.dim = a.dim;
  const int na = a.sample_count(), nb = b.sample_count();
  r.params.reserve(na + nb - 1);
  r.points.reserve(na + nb - 1);
  r.tangents.reserve(na + nb - 1);
  for (int i = 0; i < na; ++i) {
    r.params.push_back(0.5 * a.params[i]);
    r.points.push_back(a.points[i]);
    r.tangents.push_back(2.0 * a.tangents[i]);
  }
  // Snap b onto a's endpoint so the polyline is exactly continuous.
  for (int i = 1; i < nb; ++i) {
    r.params.push_back(0.5 + 0.5 * b.params[i]);
    r.points.push_back(b.points[i] - gap);
    r.tangents.push_back(2.0 * b.tangents[i]);
  }
  r.loop = (r.points.front() - r.points.back()).norm() <= tol_join * scale;
  if (r.loop) {
    r.points.back() = r.points.front();
    r.tangents.front() = Vec::Zero(r.dim);
    r.tangents.back() = Vec::Zero(r.dim);
  }
  return r;
}

SampledCurve reparametrize(const SampledCurve& c, const MonotoneC1Map& psi_map) {
  SampledCurve r = c;
  for (int i = 0; i < c.sample_count(); ++i) {
    const double s = psi_map.inverse(c.params[i]);
    r.params[i] = s;
    r.tangents[i] = c.tangents[i] * psi_map.deriv(s);
  }
  r.params.front() = c.params.front();
  r.params.back() = c.params.back();
  for (int i = 0; i + 1 < r.sample_count(); ++i)
    if (!(r.params[i] < r.params[i + 1]))
      throw ValidationError("reparametrize: map has plateaus on the grid");
  return r;
}

ArclengthTable arclength_table(const SampledCurve& c) {
  ArclengthTable t;
  const int n = c.sample_count();
  t.cum.resize(n);
  t.cum[0] = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double dt = c.params[i + 1] - c.params[i];
    t.cum[i + 1] = t.cum[i] + 0.5 * (c.speed(i) + c.speed(i + 1)) * dt;
  }
  return t;
}

double ArclengthTable::at_param(const SampledCurve& c, double t) const {
  if (t <= c.params.front()) return cum.front();
  if (t >= c.params.back()) return cum.back();
  auto it = std::upper_bound(c.params.begin(), c.params.end(), t);
  const std::size_t i = it - c.params.begin() - 1;
  const double u = (t - c.params[i]) / (c.params[i + 1] - c.params[i]);
  return cum[i] + u * (cum[i + 1] - cum[i]);
}

double ArclengthTable::param_at(const SampledCurve& c, double s) const {
  if (s <= 0.0) return c.params.front();
  if (s >= cum.back()) return c.params.back();
  auto it = std::lower_bound(cum.begin(), cum.end(), s);
  const std::size_t i = it - cum.begin();
  if (cum[i] == s) return c.params[i];
  const double u = (s - cum[i - 1]) / (cum[i] - cum[i - 1]);
  return c.params[i - 1] + u * (c.params[i] - c.params[i - 1]);
}

Vec point_at_arclength(const SampledCurve& c, const ArclengthTable& table,
                       IndexRange range, double s) {
  const double lo = table.cum[range.lo], hi = table.cum[range.hi];
  double target = lo + s;
  target = std::min(hi, std::max(lo, target));
  auto begin = table.cum.begin() + range.lo, end = table.cum.begin() + range.hi + 1;
  auto it = std::lower_bound(begin, end, target);
  const std::size_t i = it - table.cum.begin();
  if (table.cum[i] == target || i == static_cast<std::size_t>(range.lo))
    return c.points[i];
  const double u = (target - table.cum[i - 1]) / (table.cum[i] - table.cum[i - 1]);
  return c.points[i - 1] + u * (c.points[i] - c.points[i - 1]);
}

OverlapIndex self_overlap_index(const SampledCurve& c, double eps_geo) {
  if (!(eps_geo > 0.0)) throw ValidationError("self_overlap_index: eps_geo <= 0");
  const int n = c.sample_count();
  detail::SpatialHash hash(c.points, eps_geo);
  OverlapIndex out;
  out.clusters.resize(n);
  out.multiplicity.resize(n);
  std::vector<std::int32_t> cand;
  for (int i = 0; i < n; ++i) {
    cand.clear();
    hash.for_candidates(c.points[i], [&](std::int32_t j) {
      if ((c.points[j] - c.points[i]).norm() <= eps_geo) cand.push_back(j);
    });
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    auto& runs = out.clusters[i];
    for (std::size_t k = 0; k < cand.size();) {
      std::size_t m = k;
      while (m + 1 < cand.size() && cand[m + 1] == cand[m] + 1) ++m;
      runs.push_back({cand[k], cand[m]});
      k = m + 1;
    }
    out.multiplicity[i] = static_cast<int>(runs.size());
  }
  return out;
}

double resolve_eps_geo(const SampledCurve& c, double requested) {
  if (requested > 0.0) return requested;
  double max_spacing = 0.0;
  for (int i = 0; i + 1 < c.sample_count(); ++i)
    max_spacing = std::max(max_spacing, (c.points[i + 1] - c.points[i]).norm());
  if (max_spacing == 0.0) return 1e-3 * (1.0 + c.bbox_diagonal());
  return 2.5 * max_spacing;
}

double resolve_v_min(const SampledCurve& c, double requested) {
  if (requested > 0.0) return requested;
  const double total = arclength_table(c).total();
  return std::max(0.05 * total, 1e-12 * (1.0 + c.bbox_diagonal()));
}

// ---------------------------------------------------------------------------
// Synthesis

namespace {

struct ArcGeom {
  std::vector<Vec> pts;
  std::vector<double> cum;
  double length = 0.0;

  Vec at(double s) const {
    s = std::min(length, std::max(0.0, s));
    auto it = std::lower_bound(cum.begin(), cum.end(), s);
    std::size_t i = it - cum.begin();
    if (cum[i] == s) return pts[i];
    const double u = (s - cum[i - 1]) / (cum[i] - cum[i - 1]);
    return pts[i - 1] + u * (pts[i] - pts[i - 1]);
  }
};

ArcGeom make_geom(const ArcSpec& spec, int dim) {
  if (spec.points.size() < 2)
    throw ValidationError("arc '" + spec.id + "': need at least 2 points");
  ArcGeom g;
  g.pts = spec.points;
  g.cum.resize(g.pts.size());
  g.cum[0] = 0.0;
  for (std::size_t i = 0; i + 1 < g.pts.size(); ++i) {
    if (g.pts[i].size() != dim)
      throw ValidationError("arc '" + spec.id + "': dimension mismatch");
    g.cum[i + 1] = g.cum[i] + (g.pts[i + 1] - g.pts[i]).norm();
  }
  if (g.pts.back().size() != dim)
    throw ValidationError("arc '" + spec.id + "': dimension mismatch");
  g.length = g.cum.back();
  if (!(g.length > 0.0))
    throw ValidationError("arc '" + spec.id + "': zero length");
  return g;
}

}  // namespace

SynthResult synth_curve(const CurveSpec& spec, const SynthOptions& opts) {
  if (opts.samples_per_arc < 32)
    throw ValidationError("synth: samples_per_arc must be >= 32");
  if (spec.traversal.empty()) throw ValidationError("synth: empty traversal");
  if (spec.dwell < 0.0) throw ValidationError("synth: negative dwell");

  std::map<std::string, ArcGeom> geoms;
  for (const ArcSpec& a : spec.arcs) {
    if (geoms.count(a.id)) throw ValidationError("synth: duplicate arc id " + a.id);
    geoms[a.id] = make_geom(a, spec.dim);
  }

  double diag = 0.0;
  {
    Vec lo, hi;
    bool first = true;
    for (const ArcSpec& a : spec.arcs)
      for (const Vec& p : a.points) {
        if (first) {
          lo = p;
          hi = p;
          first = false;
        } else {
          lo = lo.cwiseMin(p);
          hi = hi.cwiseMax(p);
        }
      }
    diag = first ? 0.0 : (hi - lo).norm();
  }
  const double jtol = opts.junction_tol * (1.0 + diag);

  SynthResult out;
  std::vector<std::string>& names = out.names;
  const int n = opts.samples_per_arc;
  const int n_dwell =
      spec.dwell > 0.0 ? std::max(2, static_cast<int>(std::lround(spec.dwell * n)))
                       : 0;

  std::vector<Vec> pts;
  pts.reserve(spec.traversal.size() * (n + n_dwell) + n_dwell);

  Vec cursor;  // current junction position
  bool have_cursor = false;
  for (std::size_t leg = 0; leg < spec.traversal.size(); ++leg) {
    const TraversalStep& step = spec.traversal[leg];
    auto git = geoms.find(step.arc);
    if (git == geoms.end())
      throw ValidationError("synth: traversal references missing arc '" +
                            step.arc + "'");
    const ArcGeom& g = git->second;
    const Vec start = step.dir > 0 ? g.pts.front() : g.pts.back();
    if (have_cursor && (start - cursor).norm() > jtol)
      throw ValidationError("synth: mismatched junction before arc '" +
                            step.arc + "'");

    if (std::find(names.begin(), names.end(), step.arc) == names.end())
      names.push_back(step.arc);
    const auto arc_index = static_cast<std::int32_t>(
        std::find(names.begin(), names.end(), step.arc) - names.begin());
    out.word.letters.push_back({arc_index, step.dir > 0 ? +1 : -1});

    // Dwell block before the leg (and at the very start).
    const Vec pause = have_cursor ? cursor : start;
    for (int k = 0; k < n_dwell; ++k) pts.push_back(pause);

    for (int j = 0; j < n; ++j) {
      const double u = static_cast<double>(j) / (n - 1);
      const double station =
          g.length * (opts.halt_at_junctions ? bump(u) : u);
      pts.push_back(g.at(step.dir > 0 ? station : g.length - station));
    }
    cursor = step.dir > 0 ? g.pts.back() : g.pts.front();
    have_cursor = true;
  }
  for (int k = 0; k < n_dwell; ++k) pts.push_back(cursor);

  const bool is_loop = (pts.back() - pts.front()).norm() <= jtol;
  if (is_loop) {
    // Snap the trailing dwell block (or final sample) onto the basepoint.
    const Vec base = pts.front();
    for (std::size_t i = pts.size() - 1;
         i > 0 && (pts[i] - base).norm() <= jtol; --i)
      pts[i] = base;
  }

  out.curve = SampledCurve::from_points(std::move(pts), {}, is_loop);
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

// Union-find with a direction parity relative to the root.
struct SignedUnionFind {
  std::vector<int> parent;
  std::vector<int> sign;  // direction relative to the parent

  explicit SignedUnionFind(int n) : parent(n), sign(n, +1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, int> find(int x) {
    if (parent[x] == x) return {x, +1};
    auto [root, s] = find(parent[x]);
    parent[x] = root;
    sign[x] *= s;
    return {root, sign[x]};
  }
  // a and b related with direction d (image of b traversed d-wise vs a).
  // Returns false on an inconsistent sign constraint.
  bool unite(int a, int b, int d) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) return sa * sb == d ? true : false;
    parent[rb] = ra;
    sign[rb] = sa * d * sb;
    return true;
  }
};

}  // namespace

ArcDecomposition decompose(const SampledCurve& c, const DecomposeParams& p) {
  c.validate();
  const int n = c.sample_count();
  ArcDecomposition d;
  d.eps_geo = resolve_eps_geo(c, p.eps_geo);
  d.v_min = resolve_v_min(c, p.v_min);
  const double eps = d.eps_geo;

  const ArclengthTable table = arclength_table(c);
  const OverlapIndex ov = self_overlap_index(c, eps);

  std::vector<char> moving(n);
  for (int i = 0; i < n; ++i) moving[i] = c.speed(i) >= d.v_min ? 1 : 0;

  // Maximal runs of constant multiplicity among moving samples; short or
  // spatially tiny runs (junction blur at resolution eps) go back to A0.
  struct RawRun {
    int lo, hi, mult;
  };
  std::vector<RawRun> raw;
  for (int i = 0; i < n;) {
    if (!moving[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n && moving[j + 1] &&
           ov.multiplicity[j + 1] == ov.multiplicity[i])
      ++j;
    raw.push_back({i, j, ov.multiplicity[i]});
    i = j + 1;
  }

  for (const RawRun& r : raw) {
    const int lo = r.lo + p.trim, hi = r.hi - p.trim;
    if (hi - lo + 1 < p.min_run_samples) continue;
    const double span = table.cum[hi] - table.cum[lo];
    if (span < p.blur_factor * eps) continue;
    StratumInterval iv;
    iv.samples = {lo, hi};
    iv.param = {c.params[lo], c.params[hi]};
    iv.multiplicity = r.mult;
    iv.length = span;
    d.intervals.push_back(iv);
  }

  // Complement components.
  {
    std::vector<char> covered(n, 0);
    for (const auto& iv : d.intervals)
      for (int i = iv.samples.lo; i <= iv.samples.hi; ++i) covered[i] = 1;
    for (int i = 0; i < n;) {
      if (covered[i]) {
        ++i;
        continue;
      }
      int j = i;
      while (j + 1 < n && !covered[j + 1]) ++j;
      d.a0.push_back({i, j});
      i = j + 1;
    }
  }

  const int m = static_cast<int>(d.intervals.size());
  std::vector<int> owner(n, -1);
  for (int k = 0; k < m; ++k)
    for (int i = d.intervals[k].samples.lo; i <= d.intervals[k].samples.hi; ++i)
      owner[i] = k;

  // Ambiguity guard: deep inside kept intervals the cluster structure
  // must be stable against widening run gaps by two samples. Interval
  // edges are excluded: there clusters legitimately approach each other
  // right before merging into the A0 blur zone.
  const int edge_band = p.trim + 4;
  for (int k = 0; k < m; ++k)
    for (int i = d.intervals[k].samples.lo + edge_band;
         i <= d.intervals[k].samples.hi - edge_band; ++i) {
      const auto& runs = ov.clusters[i];
      std::size_t merged = runs.empty() ? 0 : 1;
      for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].lo - runs[r - 1].hi > 3) ++merged;
      if (merged != runs.size())
        throw ResolutionError(
            "ambiguous multiplicity: clusters neither merge nor separate at "
            "eps_geo near parameter " +
            std::to_string(c.params[i]));
    }

  // Pairwise correspondence between intervals sharing an image.
  SignedUnionFind uf(m);
  for (int k = 0; k < m; ++k) {
    const StratumInterval& J = d.intervals[k];
    std::map<int, std::vector<std::pair<int, double>>> partners;  // K -> (center idx, min dist)
    for (int i = J.samples.lo; i <= J.samples.hi; ++i) {
      std::map<int, int> seen_in;  // partner interval -> run count
      for (const auto& run : ov.clusters[i]) {
        if (run.lo <= i && i <= run.hi) continue;  // self cluster
        // Attribute the run to an interval by its majority overlap.
        int best = -1;
        int best_overlap = 0;
        for (int probe : {run.lo, (run.lo + run.hi) / 2, run.hi}) {
          const int o = owner[probe];
          if (o < 0) continue;
          const int ov_lo = std::max(run.lo, d.intervals[o].samples.lo);
          const int ov_hi = std::min(run.hi, d.intervals[o].samples.hi);
          if (ov_hi - ov_lo + 1 > best_overlap) {
            best_overlap = ov_hi - ov_lo + 1;
            best = o;
          }
        }
        if (best < 0) continue;  // run lies in blurred/trimmed territory
        if (++seen_in[best] > 1)
          throw ResolutionError("two disjoint clusters in one interval");
        double dist = std::numeric_limits<double>::infinity();
        for (int q = run.lo; q <= run.hi; ++q)
          dist = std::min(dist, (c.points[q] - c.points[i]).norm());
        partners[best].push_back({(run.lo + run.hi) / 2, dist});
      }
    }
    for (auto& [other, hits] : partners) {
      if (other == k) continue;
      const int count = static_cast<int>(hits.size());
      const int need = std::max(1, J.samples.count() - 2 * edge_band);
      if (count < (need + 1) / 2) continue;  // incidental contact
      if (count < need)
        throw ResolutionError("partial image overlap between intervals");
      // Monotone center motion fixes the relative direction. Integer
      // centers wobble by a sample or two as run ends slip, so only a
      // sustained reversal counts.
      const int delta = hits.back().first - hits.front().first;
      if (std::abs(delta) < 2)
        throw ResolutionError("cannot orient occurrence correspondence");
      const int dir = delta > 0 ? +1 : -1;
      for (std::size_t i = 1; i < hits.size(); ++i) {
        const int dc = hits[i].first - hits[i - 1].first;
        if (dc * dir < -2)
          throw ResolutionError("non-monotone correspondence between intervals");
      }
      // Median matched distance separates "identical" from "parallel at
      // sub-resolution separation": reject the ambiguous band.
      std::vector<double> dists;
      dists.reserve(hits.size());
      for (auto& h : hits) dists.push_back(h.second);
      std::nth_element(dists.begin(), dists.begin() + dists.size() / 2,
                       dists.end());
      const double med = dists[dists.size() / 2];
      if (med > 0.35 * eps)
        throw ResolutionError(
            "arcs at sub-resolution separation (median matched distance " +
            std::to_string(med) + " vs eps_geo " + std::to_string(eps) + ")");
      if (!uf.unite(k, other, dir))
        throw ResolutionError("inconsistent orientation between occurrences");
    }
  }

  // Groups -> arcs, ids by first traversal.
  std::map<int, std::vector<int>> groups;
  for (int k = 0; k < m; ++k) groups[uf.find(k).first].push_back(k);
  std::vector<std::pair<double, int>> order;  // (first param, root)
  for (auto& [root, members] : groups)
    order.push_back({d.intervals[members.front()].param.lo, root});
  std::sort(order.begin(), order.end());

  for (std::size_t a = 0; a < order.size(); ++a) {
    const int root = order[a].second;
    const auto& members = groups[root];
    const int rep = members.front();
    const auto [r0, rep_sign] = uf.find(rep);
    for (int k : members) {
      StratumInterval& iv = d.intervals[k];
      if (iv.multiplicity != static_cast<int>(members.size()))
        throw ResolutionError(
            "multiplicity disagrees with the number of interval occurrences");
      iv.arc = static_cast<int>(a);
      iv.direction = uf.find(k).second * rep_sign;
      if (std::abs(iv.length - d.intervals[rep].length) >
          0.25 * std::max(iv.length, d.intervals[rep].length))
        throw ResolutionError("occurrence lengths disagree beyond tolerance");
    }
    Arc arc;
    arc.id = static_cast<int>(a);
    const StratumInterval& r = d.intervals[rep];
    arc.points.assign(c.points.begin() + r.samples.lo,
                      c.points.begin() + r.samples.hi + 1);
    arc.length = r.length;
    d.arcs.push_back(std::move(arc));
  }

  for (int k = 0; k < m; ++k)
    d.strata[d.intervals[k].multiplicity].push_back(k);
  return d;
}

Word word_of(const ArcDecomposition& d) {
  Word w;
  for (const StratumInterval& iv : d.intervals)
    w.letters.push_back({iv.arc, iv.direction});
  return w;
}

namespace {

double seg_seg_dist(const Vec& a0, const Vec& a1, const Vec& b0, const Vec& b1) {
  // Closest distance between two segments (standard clamped form).
  const Vec d1 = a1 - a0, d2 = b1 - b0, r = a0 - b0;
  const double A = d1.squaredNorm(), E = d2.squaredNorm(), F = d2.dot(r);
  double s = 0.0, t = 0.0;
  constexpr double tiny = 1e-30;
  if (A <= tiny && E <= tiny) return r.norm();
  if (A <= tiny) {
    t = std::clamp(F / E, 0.0, 1.0);
  } else {
    const double C = d1.dot(r);
    if (E <= tiny) {
      s = std::clamp(-C / A, 0.0, 1.0);
    } else {
      const double B = d1.dot(d2);
      const double den = A * E - B * B;
      s = den > tiny ? std::clamp((B * F - C * E) / den, 0.0, 1.0) : 0.0;
      t = (B * s + F) / E;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-C / A, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((B - C) / A, 0.0, 1.0);
      }
    }
  }
  return (a0 + s * d1 - (b0 + t * d2)).norm();
}

}  // namespace

bool arc_is_embedded(const Arc& arc, double eps_geo) {
  const auto& p = arc.points;
  const int n = static_cast<int>(p.size());
  std::vector<double> cum(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) cum[i + 1] = cum[i] + (p[i + 1] - p[i]).norm();
  for (int i = 0; i + 1 < n; ++i)
    for (int j = i + 2; j + 1 < n; ++j) {
      if (cum[j] - cum[i + 1] < 3.0 * eps_geo) continue;  // near along the arc
      if (seg_seg_dist(p[i], p[i + 1], p[j], p[j + 1]) <= eps_geo) return false;
    }
  return true;
}

}  // namespace thinloop
