#include "thinloop/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spatial_hash.hpp"

namespace thinloop {

SampledCurve HomotopyGrid::row_curve(int j) const {
  const bool is_loop = rows[j].front() == rows[j].back();
  return SampledCurve::from_points(rows[j], t_params, is_loop);
}

void HomotopyGrid::validate() const {
  if (rows.size() < 2) throw ValidationError("grid: need at least two rows");
  if (rows.size() != r_params.size())
    throw ValidationError("grid: r_params size mismatch");
  for (const auto& row : rows)
    if (row.size() != t_params.size())
      throw ValidationError("grid: row width mismatch");
}

// ---------------------------------------------------------------------------
// Thinness check.

namespace {

// Central differences with one-sided boundaries, at index stride k.
Vec partial_t(const HomotopyGrid& g, int j, int i, int k) {
  const int nt = g.t_count();
  const int a = std::max(0, i - k), b = std::min(nt - 1, i + k);
  return (g.rows[j][b] - g.rows[j][a]) / (g.t_params[b] - g.t_params[a]);
}

Vec partial_r(const HomotopyGrid& g, int j, int i, int k) {
  const int nr = g.r_count();
  const int a = std::max(0, j - k), b = std::min(nr - 1, j + k);
  return (g.rows[b][i] - g.rows[a][i]) / (g.r_params[b] - g.r_params[a]);
}

double minor_norm(const Vec& u, const Vec& v) {
  double worst = 0.0;
  for (int a = 0; a < u.size(); ++a)
    for (int b = a + 1; b < u.size(); ++b)
      worst = std::max(worst, std::abs(u[a] * v[b] - u[b] * v[a]));
  return worst;
}

}  // namespace

ThinnessReport check_thin(const HomotopyGrid& g, const ThinnessTolerances& tol) {
  g.validate();
  const int nt = g.t_count(), nr = g.r_count();
  ThinnessReport rep;

  for (int j = 0; j < nr; ++j)
    for (int i = 0; i < nt; ++i) {
      rep.sup_dt = std::max(rep.sup_dt, partial_t(g, j, i, 1).norm());
      rep.sup_dr = std::max(rep.sup_dr, partial_r(g, j, i, 1).norm());
    }
  const double scale = std::max(rep.sup_dt * rep.sup_dr, 1e-30);

  double max_minor = 0.0;
  for (int j = 1; j + 1 < nr; ++j)
    for (int i = 1; i + 1 < nt; ++i)
      max_minor = std::max(
          minor_norm(partial_t(g, j, i, 1), partial_r(g, j, i, 1)), max_minor);
  rep.max_minor_rel = max_minor / scale;

  // Definition-3 boundary conditions: dH/dr on the first and last rows,
  // dH/dt on the first and last columns, and constancy of the columns.
  double edge = 0.0;
  for (int i = 0; i < nt; ++i) {
    edge = std::max(edge, partial_r(g, 0, i, 1).norm());
    edge = std::max(edge, partial_r(g, nr - 1, i, 1).norm());
  }
  for (int j = 0; j < nr; ++j) {
    edge = std::max(edge, partial_t(g, j, 0, 1).norm());
    edge = std::max(edge, partial_t(g, j, nt - 1, 1).norm());
    edge = std::max(edge, (g.rows[j][0] - g.rows[0][0]).norm());
    edge = std::max(edge, (g.rows[j][nt - 1] - g.rows[0][nt - 1]).norm());
  }
  rep.max_edge_partial = edge;

  // Two-resolution continuity modulus of both partials.
  auto modulus = [&](bool in_t, int k) {
    double worst = 0.0;
    for (int j = k; j + k < nr; j += 1)
      for (int i = k; i + k < nt; i += 1) {
        if (in_t) {
          worst = std::max(worst, (partial_t(g, j, i + k, k) -
                                   partial_t(g, j, i, k)).norm());
        } else {
          worst = std::max(worst, (partial_r(g, j + k, i, k) -
                                   partial_r(g, j, i, k)).norm());
        }
      }
    return worst;
  };
  const double floor_t = 1e-9 * std::max(1.0, rep.sup_dt);
  const double floor_r = 1e-9 * std::max(1.0, rep.sup_dr);
  const double mt1 = modulus(true, 1), mt2 = modulus(true, 2);
  const double mr1 = modulus(false, 1), mr2 = modulus(false, 2);
  rep.c1_ratio_t = mt1 / std::max(mt2, floor_t);
  rep.c1_ratio_r = mr1 / std::max(mr2, floor_r);

  rep.minors_ok = rep.max_minor_rel <= tol.tol_rank;
  rep.edges_ok = rep.max_edge_partial <= tol.tol_edge;
  rep.c1_ok = (mt1 <= tol.tol_c1 * mt2 + floor_t) &&
              (mr1 <= tol.tol_c1 * mr2 + floor_r);
  rep.pass = rep.minors_ok && rep.edges_ok && rep.c1_ok;
  return rep;
}

double image_containment(const HomotopyGrid& g, double eps_geo) {
  detail::SpatialHash hash(g.rows[0], eps_geo);
  double worst = 0.0;
  for (const auto& row : g.rows)
    for (const Vec& p : row) {
      double best = hash.min_dist_within(p, 64.0 * eps_geo);
      worst = std::max(worst, best);
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Construction helpers.

namespace {

std::vector<double> uniform_params(int count) {
  std::vector<double> r(count);
  for (int j = 0; j < count; ++j) r[j] = static_cast<double>(j) / (count - 1);
  return r;
}

// Closed arclength intervals where the curve is slower than v_min.
std::vector<Interval> slow_intervals(const SampledCurve& c,
                                     const ArclengthTable& table, double vmin) {
  std::vector<Interval> out;
  const int n = c.sample_count();
  for (int i = 0; i < n;) {
    if (c.speed(i) >= vmin) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n && c.speed(j + 1) < vmin) ++j;
    out.push_back({table.at_sample(i), table.at_sample(j)});
    i = j + 1;
  }
  return out;
}

// Arclengths of vertex-region axis components the curve transits at
// speed (no slow core): the values where the reparametrized curve must
// acquire a critical point.
std::vector<double> fast_vertex_values(const SampledCurve& c,
                                       const ArclengthTable& table,
                                       const FactorTree& tree, double vmin) {
  std::vector<double> values;
  for (const auto& v : tree.vertices)
    for (const IndexRange& comp : v.axis_components) {
      bool has_slow = false;
      for (int i = comp.lo; i <= comp.hi; ++i)
        if (c.speed(i) < vmin) has_slow = true;
      if (!has_slow)
        values.push_back(table.at_sample((comp.lo + comp.hi) / 2));
    }
  std::sort(values.begin(), values.end());
  return values;
}

// The Step-2 reparametrization, holding fixed everything that needs no
// new critical point: the slow set and every complementary interval
// that contains none of the forced values. A curve already halting at
// all its vertices gets the identity, so its homotopy is constant in r.
PhiMap build_phi_for(const SampledCurve& c, const ArclengthTable& table,
                     double vmin, const std::vector<double>& forced) {
  const double total = table.total();
  std::vector<Interval> fixed = slow_intervals(c, table, vmin);
  std::vector<Interval> extra;
  double cursor = 0.0;
  auto gap_has_forced = [&](double lo, double hi) {
    for (double v : forced)
      if (v > lo && v < hi) return true;
    return false;
  };
  for (const Interval& f : fixed) {
    if (f.lo > cursor && !gap_has_forced(cursor, f.lo))
      extra.push_back({cursor, f.lo});
    cursor = std::max(cursor, f.hi);
  }
  if (cursor < total && !gap_has_forced(cursor, total))
    extra.push_back({cursor, total});
  fixed.insert(fixed.end(), extra.begin(), extra.end());
  return phi(total, std::move(fixed), forced);
}

}  // namespace

VanishResult vanish_at_vertices(const SampledCurve& curve,
                                const ArcDecomposition& decomp,
                                const FactorTree& tree,
                                const HomotopyParams& params) {
  curve.validate();
  const ArclengthTable table = arclength_table(curve);
  const double total = table.total();
  const int n = curve.sample_count();
  const MonotoneC1Map halt = halt_profile(params.halt_delta);
  const double vmin = params.v_min > 0.0 ? params.v_min : decomp.v_min;

  VanishResult out;
  out.grid.dim = curve.dim;
  out.grid.t_params = curve.params;
  out.grid.r_params = uniform_params(params.rows);
  out.grid.provenance = "vanish_at_vertices";

  if (total <= 0.0) {
    out.grid.rows.assign(params.rows, curve.points);
    out.target = curve;
    return out;
  }

  out.forced_values = fast_vertex_values(curve, table, tree, vmin);
  out.reparam_map = build_phi_for(curve, table, vmin, out.forced_values);

  const IndexRange full{0, n - 1};
  std::vector<double> l_of(n);
  for (int i = 0; i < n; ++i) l_of[i] = table.at_sample(i);

  out.grid.rows.reserve(params.rows);
  for (int j = 0; j < params.rows; ++j) {
    const double rt = halt.eval(out.grid.r_params[j]);
    std::vector<Vec> row(n);
    if (rt == 0.0) {
      row = curve.points;
    } else {
      for (int i = 0; i < n; ++i) {
        const double s = (1.0 - rt) * l_of[i] + rt * out.reparam_map.eval(l_of[i]);
        row[i] = point_at_arclength(curve, table, full, s);
      }
    }
    out.grid.rows.push_back(std::move(row));
  }
  out.target = SampledCurve::from_points(out.grid.rows.back(), curve.params,
                                         curve.loop);
  return out;
}

// ---------------------------------------------------------------------------
// The tree retraction clock.

namespace {

// chi : T x [0, L'] -> T. Every point waits until the global clock
// reaches its padded depth, then slides toward the root along its root
// path, pausing (zero clock-speed) at every vertex it passes.
class TreeContraction {
 public:
  TreeContraction(const FactorTree& tree, std::vector<double> padded,
                  double total_override = -1.0)
      : tree_(&tree), padded_(std::move(padded)) {
    if (padded_.size() != tree.edges.size())
      throw ValidationError("TreeContraction: padded length count mismatch");
    depth_padded_.assign(tree.vertices.size(), 0.0);
    std::vector<int> stack{0};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e : tree_->vertices[v].child_edges) {
        depth_padded_[tree_->edges[e].child_vertex] =
            depth_padded_[v] + padded_[e];
        stack.push_back(tree_->edges[e].child_vertex);
      }
    }
    total_ = total_override > 0.0
                 ? total_override
                 : std::accumulate(padded_.begin(), padded_.end(), 0.0);
    // Per-vertex clocks: rho maps padded depth to true depth with a
    // critical point at every ancestor vertex.
    rho_.resize(tree.vertices.size());
    paths_.reserve(tree.vertices.size());
    for (std::size_t v = 0; v < tree.vertices.size(); ++v) {
      paths_.emplace_back(tree, TreePoint{-1, static_cast<int>(v), 0.0});
      const auto edges = tree.root_path_edges(static_cast<int>(v));
      if (edges.empty()) continue;
      std::vector<double> xs{0.0}, ys{0.0};
      for (int e : edges) {
        xs.push_back(xs.back() + padded_[e]);
        ys.push_back(ys.back() + tree.edges[e].length);
      }
      rho_[v] = MonotoneC1Map(xs, ys);
    }
  }

  double total() const { return total_; }

  TreePoint at(const TreePoint& x, double r) const {
    if (x.is_vertex()) return vertex_at(x.vertex, r);
    const auto& e = tree_->edges[x.edge];
    const int v1 = e.parent_vertex, v2 = e.child_vertex;
    if (r <= total_ - depth_padded_[v2]) return x;
    if (r >= total_ - depth_padded_[v1]) return vertex_at(v1, r);
    // The deeper endpoint is retracting through this edge; the interior
    // point keeps its fraction of the shrinking segment.
    const double alpha = e.length > 0.0 ? x.offset / e.length : 0.0;
    const double arg = std::clamp(total_ - r, depth_padded_[v1], depth_padded_[v2]);
    const double s = rho_[v2]->eval(arg);
    const double off_tip =
        std::clamp(s - tree_->vertices[v1].depth, 0.0, e.length);
    const double off = alpha * off_tip;
    if (off <= 0.0) return TreePoint{-1, v1, 0.0};
    return TreePoint{x.edge, v2, off};
  }

 private:
  TreePoint vertex_at(int v, double r) const {
    if (!rho_[v].has_value()) return TreePoint{-1, 0, 0.0};  // root
    if (r <= total_ - depth_padded_[v]) return TreePoint{-1, v, 0.0};
    const double arg = std::clamp(total_ - r, 0.0, depth_padded_[v]);
    return paths_[v].at(rho_[v]->eval(arg));
  }

  const FactorTree* tree_;
  std::vector<double> padded_;
  std::vector<double> depth_padded_;
  std::vector<std::optional<MonotoneC1Map>> rho_;
  std::vector<RootPath> paths_;
  double total_ = 0.0;
};

}  // namespace

HomotopyGrid contract_tree(const SampledCurve& curve, const FactorTree& tree,
                           const Factorization& fact,
                           const std::vector<double>& padded_edge_lengths,
                           const HomotopyParams& params) {
  const ArclengthTable table = arclength_table(curve);
  const FoldMap fold(curve, table, tree);
  const TreeContraction chi(tree, padded_edge_lengths);
  const MonotoneC1Map halt = halt_profile(params.halt_delta);
  const int n = curve.sample_count();

  HomotopyGrid g;
  g.dim = curve.dim;
  g.t_params = curve.params;
  g.provenance = "contract_tree";

  std::vector<Vec> replica(n);
  for (int i = 0; i < n; ++i) replica[i] = fold(fact.tree_points[i]);

  // Blend band from the curve onto its factorization replica, then the
  // retraction itself. The retraction carries nearly all of the motion,
  // so it gets most of the row budget.
  const int blend_rows = std::max(9, params.rows / 8);
  const MonotoneC1Map blend = halt_profile(0.25);
  for (int j = 0; j < blend_rows; ++j) {
    const double w = blend.eval(static_cast<double>(j) / (blend_rows - 1));
    std::vector<Vec> row(n);
    for (int i = 0; i < n; ++i)
      row[i] = (1.0 - w) * curve.points[i] + w * replica[i];
    g.rows.push_back(std::move(row));
  }
  const int contract_rows = 3 * params.rows;
  for (int j = 1; j < contract_rows; ++j) {
    const double r =
        chi.total() * halt.eval(static_cast<double>(j) / (contract_rows - 1));
    std::vector<Vec> row(n);
    for (int i = 0; i < n; ++i) row[i] = fold(chi.at(fact.tree_points[i], r));
    g.rows.push_back(std::move(row));
  }
  g.r_params = uniform_params(static_cast<int>(g.rows.size()));
  return g;
}

HomotopyGrid glue_and_halt(const HomotopyGrid& grid, double halt_delta) {
  grid.validate();
  const MonotoneC1Map halt = halt_profile(halt_delta);
  HomotopyGrid out;
  out.dim = grid.dim;
  out.t_params = grid.t_params;
  out.r_params = grid.r_params;
  out.provenance = grid.provenance + "+halt";
  const int nr = grid.r_count();
  out.rows.reserve(nr);
  for (int j = 0; j < nr; ++j) {
    const double u = halt.eval(grid.r_params[j]) * (nr - 1);
    const int a = std::min(nr - 2, static_cast<int>(std::floor(u)));
    const double w = u - a;
    std::vector<Vec> row(grid.t_count());
    for (int i = 0; i < grid.t_count(); ++i)
      row[i] = (1.0 - w) * grid.rows[a][i] + w * grid.rows[a + 1][i];
    out.rows.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Step 4: simultaneous contraction of all maximal trivial subwords.

namespace {

// tau for one whisker segment: arclength -> tree point, assembled from
// the extended occurrence spans (they tile the segment's arclength
// range; dwells have zero arclength measure).
struct SpanMap {
  struct Span {
    double s_lo, s_hi;
    int edge;
    bool closing;
  };
  const FactorTree* tree = nullptr;
  std::vector<Span> spans;  // sorted by s_lo
  double s_begin = 0.0, s_end = 0.0;

  void build(const FactorTree& t, const ArclengthTable& table) {
    tree = &t;
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      const auto& edge = t.edges[e];
      spans.push_back({table.at_sample(edge.open_samples.lo),
                       table.at_sample(edge.open_samples.hi),
                       static_cast<int>(e), false});
      spans.push_back({table.at_sample(edge.close_samples.lo),
                       table.at_sample(edge.close_samples.hi),
                       static_cast<int>(e), true});
    }
    std::sort(spans.begin(), spans.end(),
              [](const Span& a, const Span& b) { return a.s_lo < b.s_lo; });
    s_begin = spans.front().s_lo;
    s_end = spans.back().s_hi;
  }

  TreePoint at(double s) const {
    s = std::clamp(s, s_begin, s_end);
    int lo = 0, hi = static_cast<int>(spans.size()) - 1;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      if (spans[mid].s_lo <= s)
        lo = mid;
      else
        hi = mid - 1;
    }
    const Span& sp = spans[lo];
    const auto& edge = tree->edges[sp.edge];
    const double width = sp.s_hi - sp.s_lo;
    double off;
    if (width <= 0.0) {
      off = sp.closing ? 0.0 : edge.length;
    } else if (!sp.closing) {
      off = std::clamp(s - sp.s_lo, 0.0, edge.length);
    } else {
      off = std::clamp(edge.length * (1.0 - (s - sp.s_lo) / width), 0.0,
                       edge.length);
    }
    const double snap = 1e-12 * (1.0 + edge.length);
    if (off <= snap) return TreePoint{-1, edge.parent_vertex, 0.0};
    if (off >= edge.length - snap) return TreePoint{-1, edge.child_vertex, 0.0};
    return TreePoint{sp.edge, edge.child_vertex, off};
  }
};

struct Segment {
  int pos_lo = 0, pos_hi = 0;       // word positions (inclusive)
  IndexRange sample_bounds{0, 0};   // leading/trailing gap bounds
  FactorTree tree;
  SpanMap tau;
  std::vector<double> padded;       // per edge, from the global pool
};

// Maximal runs of letters cancelled by the stack reduction.
std::vector<std::pair<int, int>> trivial_segments(const Word& w) {
  const int n = static_cast<int>(w.size());
  std::vector<char> cancelled(n, 0);
  std::vector<int> stack;
  for (int i = 0; i < n; ++i) {
    if (!stack.empty() && are_inverse(w.letters[stack.back()], w.letters[i])) {
      cancelled[stack.back()] = cancelled[i] = 1;
      stack.pop_back();
    } else {
      stack.push_back(i);
    }
  }
  std::vector<std::pair<int, int>> segs;
  for (int i = 0; i < n;) {
    if (!cancelled[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n && cancelled[j + 1]) ++j;
    segs.push_back({i, j});
    i = j + 1;
  }
  return segs;
}

}  // namespace

RemoveWhiskersResult remove_whiskers(const SampledCurve& input,
                                     const DecomposeParams& dparams,
                                     const FactorParams& fparams,
                                     const HomotopyParams& params) {
  RemoveWhiskersResult out;
  SampledCurve curve = input;
  ArcDecomposition decomp = decompose(curve, dparams);
  Word w = word_of(decomp);
  out.source_word = w;
  out.reduced_word = reduce(w);

  const int n = curve.sample_count();
  const MonotoneC1Map halt = halt_profile(params.halt_delta);

  HomotopyGrid g;
  g.dim = curve.dim;
  g.t_params = curve.params;

  auto seg_ranges = trivial_segments(w);
  out.segment_count = static_cast<int>(seg_ranges.size());
  if (seg_ranges.empty()) {
    // Nothing reducible: the identity homotopy.
    g.rows.assign(2, curve.points);
    g.r_params = uniform_params(2);
    g.provenance = "remove_whiskers (no whiskers)";
    out.grid = std::move(g);
    out.target = curve;
    return out;
  }

  ArclengthTable table = arclength_table(curve);
  const IndexRange full{0, n - 1};

  // Stage A: if any whisker root is transited at speed, reparametrize so
  // the derivative vanishes there (the "simpler Step 2" with at most two
  // critical values per complementary interval).
  {
    std::vector<double> root_values;
    for (auto [p0, p1] : seg_ranges) {
      for (int side = 0; side < 2; ++side) {
        const int lo = side == 0
                           ? (p0 == 0 ? 0 : decomp.intervals[p0 - 1].samples.hi + 1)
                           : decomp.intervals[p1].samples.hi + 1;
        const int hi = side == 0
                           ? decomp.intervals[p0].samples.lo - 1
                           : (p1 + 1 == static_cast<int>(w.size())
                                  ? n - 1
                                  : decomp.intervals[p1 + 1].samples.lo - 1);
        if (lo > hi) continue;
        bool has_slow = false;
        for (int i = lo; i <= hi; ++i)
          if (curve.speed(i) < decomp.v_min) has_slow = true;
        if (!has_slow)
          root_values.push_back(table.at_sample((lo + hi) / 2));
      }
    }
    if (!root_values.empty()) {
      const PhiMap phi_a = build_phi_for(curve, table, decomp.v_min, root_values);
      for (int j = 0; j < params.rows; ++j) {
        const double rt = halt.eval(static_cast<double>(j) / (params.rows - 1));
        std::vector<Vec> row(n);
        for (int i = 0; i < n; ++i) {
          const double l = table.at_sample(i);
          row[i] = point_at_arclength(curve, table, full,
                                      (1.0 - rt) * l + rt * phi_a.eval(l));
        }
        g.rows.push_back(std::move(row));
      }
      curve = SampledCurve::from_points(g.rows.back(), input.params, input.loop);
      decomp = decompose(curve, dparams);
      table = arclength_table(curve);
      if (canonical_relabel(word_of(decomp)) != canonical_relabel(w))
        throw ResolutionError(
            "remove_whiskers: word changed under root-halting reparametrization");
      w = word_of(decomp);
      seg_ranges = trivial_segments(w);
    }
  }

  // Per-segment factorizations and the pooled padded lengths.
  std::vector<Segment> segments;
  for (auto [p0, p1] : seg_ranges) {
    Segment s;
    s.pos_lo = p0;
    s.pos_hi = p1;
    s.sample_bounds = {
        p0 == 0 ? 0 : decomp.intervals[p0 - 1].samples.hi + 1,
        p1 + 1 == static_cast<int>(w.size())
            ? n - 1
            : decomp.intervals[p1 + 1].samples.lo - 1};
    Word sub;
    sub.letters.assign(w.letters.begin() + p0, w.letters.begin() + p1 + 1);
    const auto pairing = nesting_pairing(sub);
    if (!pairing.has_value())
      throw Error("remove_whiskers: segment fails to pair");
    const RelabeledWord relabeled = relabel_occurrences(sub, *pairing);
    const Nesting nest = build_nesting(relabeled);
    const FusedNesting fused =
        detect_spurious_corners(nest, curve, decomp, fparams.theta_tol, p0);
    s.tree = build_tree(fused, curve, decomp, p0, s.sample_bounds);
    segments.push_back(std::move(s));
  }
  for (Segment& s : segments) s.tau.build(s.tree, table);

  std::vector<double> pool;
  for (const Segment& s : segments)
    for (const auto& e : s.tree.edges) pool.push_back(e.length);
  const double pool_sum = std::accumulate(pool.begin(), pool.end(), 0.0);
  const std::vector<double> pool_padded = padded_lengths(pool, 2.0 * pool_sum);
  const double clock_total = 2.0 * pool_sum;
  {
    std::size_t k = 0;
    for (Segment& s : segments) {
      s.padded.assign(pool_padded.begin() + k,
                      pool_padded.begin() + k + s.tree.edges.size());
      k += s.tree.edges.size();
    }
  }

  std::vector<FoldMap> folds;
  std::vector<TreeContraction> chis;
  folds.reserve(segments.size());
  chis.reserve(segments.size());
  for (Segment& s : segments) {
    folds.emplace_back(curve, table, s.tree);
    chis.emplace_back(s.tree, s.padded, clock_total);
  }

  // Composite evaluator: position along the curve at arclength s, folded
  // through the segment trees, optionally contracted to clock r.
  auto eval = [&](double s, double r) -> Vec {
    for (std::size_t k = 0; k < segments.size(); ++k) {
      const SpanMap& tau = segments[k].tau;
      if (s >= tau.s_begin && s <= tau.s_end) {
        TreePoint p = tau.at(s);
        if (r >= 0.0) p = chis[k].at(p, r);
        return folds[k](p);
      }
    }
    return point_at_arclength(curve, table, full, s);
  };

  std::vector<double> l_of(n);
  for (int i = 0; i < n; ++i) l_of[i] = table.at_sample(i);

  // Band: blend onto the fold replica.
  {
    std::vector<Vec> replica(n);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      replica[i] = eval(l_of[i], -1.0);
      err = std::max(err, (replica[i] - curve.points[i]).norm());
    }
    out.replica_error = err;
    const int blend_rows = std::max(9, params.rows / 8);
    const MonotoneC1Map blend = halt_profile(0.25);
    for (int j = 0; j < blend_rows; ++j) {
      const double wgt = blend.eval(static_cast<double>(j) / (blend_rows - 1));
      std::vector<Vec> row(n);
      for (int i = 0; i < n; ++i)
        row[i] = (1.0 - wgt) * curve.points[i] + wgt * replica[i];
      g.rows.push_back(std::move(row));
    }
  }

  // Band: vanish at vertices (within the segments).
  std::vector<double> s_final(n);
  {
    std::vector<double> forced;
    for (const Segment& s : segments)
      for (const auto& fv :
           fast_vertex_values(curve, table, s.tree, decomp.v_min))
        forced.push_back(fv);
    std::sort(forced.begin(), forced.end());
    const PhiMap phi_b = build_phi_for(curve, table, decomp.v_min, forced);
    const int vanish_rows = std::max(17, params.rows / 2);
    for (int j = 1; j < vanish_rows; ++j) {
      const double rt = halt.eval(static_cast<double>(j) / (vanish_rows - 1));
      std::vector<Vec> row(n);
      for (int i = 0; i < n; ++i)
        row[i] = eval((1.0 - rt) * l_of[i] + rt * phi_b.eval(l_of[i]), -1.0);
      g.rows.push_back(std::move(row));
    }
    for (int i = 0; i < n; ++i) s_final[i] = phi_b.eval(l_of[i]);
  }

  // Band: contract all segment trees on the common clock.
  {
    const int contract_rows = 3 * params.rows;
    for (int j = 1; j < contract_rows; ++j) {
      const double r =
          clock_total * halt.eval(static_cast<double>(j) / (contract_rows - 1));
      std::vector<Vec> row(n);
      for (int i = 0; i < n; ++i) row[i] = eval(s_final[i], r);
      g.rows.push_back(std::move(row));
    }
  }

  g.r_params = uniform_params(static_cast<int>(g.rows.size()));
  g.provenance = "remove_whiskers";
  out.grid = std::move(g);
  out.target = SampledCurve::from_points(out.grid.rows.back(), input.params,
                                         input.loop);
  return out;
}

}  // namespace thinloop
