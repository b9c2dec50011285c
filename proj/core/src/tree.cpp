#include "thinloop/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thinloop {

RelabeledWord relabel_occurrences(const Word& w, const Pairing& pairing) {
  if (!pairing_valid(w, pairing))
    throw ValidationError("relabel_occurrences: invalid pairing");
  RelabeledWord out;
  out.word.letters.resize(w.size());
  // Matches are sorted by opening position already; that order names the
  // new letters.
  for (std::size_t k = 0; k < pairing.matches.size(); ++k) {
    const auto [i, j] = pairing.matches[k];
    const Letter opening = w.letters[i];
    out.word.letters[i] = {static_cast<std::int32_t>(k), +1};
    out.word.letters[j] = {static_cast<std::int32_t>(k), -1};
    out.pairs.push_back({i, j, opening.arc, opening.sign < 0});
  }
  return out;
}

std::vector<std::string> relabeled_names(const RelabeledWord& w,
                                         const std::vector<std::string>& names) {
  std::map<int, int> used;
  std::vector<std::string> out;
  for (const auto& p : w.pairs) {
    const int occurrence = ++used[p.source_arc];
    std::string base = p.source_arc >= 0 &&
                               p.source_arc < static_cast<int>(names.size())
                           ? names[p.source_arc]
                           : letter_name(p.source_arc);
    out.push_back(base + std::to_string(occurrence));
  }
  return out;
}

Nesting build_nesting(const RelabeledWord& w) {
  const int n = static_cast<int>(w.word.size());
  Nesting nest;
  nest.annuli.resize(w.pairs.size());
  nest.gap_annulus.assign(n + 1, -1);
  std::vector<int> stack;
  for (int pos = 0; pos < n; ++pos) {
    const Letter l = w.word.letters[pos];
    if (l.sign > 0) {
      SemiAnnulus& a = nest.annuli[l.arc];
      a.letter = l.arc;
      a.open_pos = pos;
      a.parent = stack.empty() ? -1 : stack.back();
      if (a.parent < 0)
        nest.top.push_back(l.arc);
      else
        nest.annuli[a.parent].children.push_back(l.arc);
      stack.push_back(l.arc);
    } else {
      if (stack.empty() || stack.back() != l.arc)
        throw ValidationError("build_nesting: word is not well-nested");
      nest.annuli[l.arc].close_pos = pos;
      stack.pop_back();
    }
    nest.gap_annulus[pos + 1] = stack.empty() ? -1 : stack.back();
  }
  if (!stack.empty())
    throw ValidationError("build_nesting: unbalanced word");
  return nest;
}

RegionKind region_kind_of(const Nesting& nesting, int annulus) {
  if (annulus < 0) return RegionKind::Root;
  const std::size_t c = nesting.annuli[annulus].children.size();
  if (c == 0) return RegionKind::Tip;
  if (c == 1) return RegionKind::Corner;
  return RegionKind::Branch;
}

FusedNesting fused_from_nesting(const Nesting& nesting) {
  FusedNesting f;
  f.pairs.resize(nesting.annuli.size());
  for (std::size_t k = 0; k < nesting.annuli.size(); ++k) {
    const SemiAnnulus& a = nesting.annuli[k];
    f.pairs[k].open_positions = {a.open_pos};
    f.pairs[k].close_positions = {a.close_pos};
    f.pairs[k].parent = a.parent;
    f.pairs[k].children = a.children;
  }
  f.top = nesting.top;
  return f;
}

namespace {

// Unit tangent at the junction between two stratum intervals, linearly
// extrapolated in arclength from the last moving samples of the
// incoming side (or the first of the outgoing side).
Vec junction_direction(const SampledCurve& c, const ArclengthTable& table,
                       const StratumInterval& iv, bool incoming,
                       double junction_s) {
  const int edge = incoming ? iv.samples.hi : iv.samples.lo;
  const int step = incoming ? -1 : +1;
  int other = edge;
  for (int k = 0; k < 3; ++k) {
    const int cand = other + step;
    if (cand < iv.samples.lo || cand > iv.samples.hi) break;
    other = cand;
  }
  Vec u_edge = c.tangents[edge].normalized();
  if (!incoming) u_edge = -u_edge;  // point toward the junction
  Vec u_other = c.tangents[other].normalized();
  if (!incoming) u_other = -u_other;
  const double s_edge = table.at_sample(edge), s_other = table.at_sample(other);
  if (std::abs(s_edge - s_other) < 1e-30) return u_edge;
  const double t = (junction_s - s_edge) / (s_edge - s_other);
  Vec dir = u_edge + t * (u_edge - u_other);
  const double norm = dir.norm();
  return norm > 1e-30 ? Vec(dir / norm) : u_edge;
}

// Angle between the incoming and outgoing motion at the junction
// separating word positions pos_before and pos_before+1.
double junction_angle(const SampledCurve& c, const ArclengthTable& table,
                      const ArcDecomposition& d, int pos_before) {
  const StratumInterval& a = d.intervals[pos_before];
  const StratumInterval& b = d.intervals[pos_before + 1];
  const double sj =
      0.5 * (table.at_sample(a.samples.hi) + table.at_sample(b.samples.lo));
  // Incoming motion direction, extrapolated to the junction.
  const Vec din = junction_direction(c, table, a, true, sj);
  // Outgoing direction, extrapolated back to the junction. Note the
  // sign: junction_direction points toward the junction, flip it.
  const Vec dout = -junction_direction(c, table, b, false, sj);
  const double cosang = std::clamp(din.dot(dout), -1.0, 1.0);
  return std::acos(cosang);
}

}  // namespace

FusedNesting detect_spurious_corners(const Nesting& nesting,
                                     const SampledCurve& curve,
                                     const ArcDecomposition& decomp,
                                     double theta_tol, int position_offset) {
  FusedNesting f = fused_from_nesting(nesting);
  const ArclengthTable table = arclength_table(curve);
  std::vector<char> alive(f.pairs.size(), 1);

  bool fused_any = true;
  while (fused_any) {
    fused_any = false;
    for (std::size_t p = 0; p < f.pairs.size(); ++p) {
      if (!alive[p] || f.pairs[p].children.size() != 1) continue;
      const int q = f.pairs[p].children.front();
      auto& pp = f.pairs[p];
      auto& qq = f.pairs[q];
      // Crosswise pairing: the blocks must be word-adjacent. For finite
      // words this is forced by the nesting, but it is the stated
      // precondition, so check it.
      if (qq.open_positions.front() != pp.open_positions.back() + 1 ||
          qq.close_positions.back() != pp.close_positions.front() - 1)
        continue;
      const double ang1 = junction_angle(
          curve, table, decomp, position_offset + pp.open_positions.back());
      const double ang2 = junction_angle(
          curve, table, decomp, position_offset + qq.close_positions.back());
      if (ang1 > theta_tol || ang2 > theta_tol) continue;

      // Spurious: absorb q into p.
      pp.open_positions.insert(pp.open_positions.end(),
                               qq.open_positions.begin(),
                               qq.open_positions.end());
      std::vector<int> closes = qq.close_positions;
      closes.insert(closes.end(), pp.close_positions.begin(),
                    pp.close_positions.end());
      pp.close_positions = std::move(closes);
      pp.children = qq.children;
      for (int ch : pp.children) f.pairs[ch].parent = static_cast<int>(p);
      alive[q] = 0;
      ++f.fused_away;
      fused_any = true;
    }
  }

  // Compact the surviving pairs.
  std::vector<int> remap(f.pairs.size(), -1);
  FusedNesting out;
  for (std::size_t p = 0; p < f.pairs.size(); ++p)
    if (alive[p]) {
      remap[p] = static_cast<int>(out.pairs.size());
      out.pairs.push_back(f.pairs[p]);
    }
  for (auto& pr : out.pairs) {
    if (pr.parent >= 0) pr.parent = remap[pr.parent];
    for (int& ch : pr.children) ch = remap[ch];
  }
  for (int t : f.top)
    if (remap[t] >= 0) out.top.push_back(remap[t]);
  out.fused_away = f.fused_away;
  return out;
}

// ---------------------------------------------------------------------------

double FactorTree::total_edge_length() const {
  double sum = 0.0;
  for (const auto& e : edges) sum += e.length;
  return sum;
}

std::vector<int> FactorTree::root_path_edges(int vertex) const {
  std::vector<int> path;
  int v = vertex;
  while (vertices[v].parent_edge >= 0) {
    path.push_back(vertices[v].parent_edge);
    v = edges[vertices[v].parent_edge].parent_vertex;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::map<int, double> FactorTree::coordinate(int vertex) const {
  std::map<int, double> coord;
  for (int e : root_path_edges(vertex)) coord[e] = edges[e].length;
  return coord;
}

void FactorTree::validate() const {
  if (vertices.empty()) throw Error("tree: no root");
  if (edges.size() + 1 != vertices.size())
    throw Error("tree: edge count must be vertex count - 1");
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto& info = vertices[v];
    if (v == 0) {
      if (info.parent_edge != -1) throw Error("tree: root has a parent");
    } else {
      if (info.parent_edge < 0) throw Error("tree: disconnected vertex");
      if (edges[info.parent_edge].child_vertex != static_cast<int>(v))
        throw Error("tree: parent edge mismatch");
      const auto& e = edges[info.parent_edge];
      const double expect = vertices[e.parent_vertex].depth + e.length;
      if (std::abs(info.depth - expect) > 1e-12 * (1.0 + expect))
        throw Error("tree: depth is not the sum of ancestor lengths");
    }
  }
}

double depth_of(const FactorTree& tree, const TreePoint& p) {
  if (p.is_vertex()) return tree.vertices[p.vertex].depth;
  const auto& e = tree.edges[p.edge];
  return tree.vertices[e.parent_vertex].depth + p.offset;
}

namespace {

void path_rep(const FactorTree& tree, const TreePoint& p,
              std::vector<int>& edges, std::vector<double>& traversed) {
  const int base = p.is_vertex() ? p.vertex : tree.edges[p.edge].parent_vertex;
  edges = tree.root_path_edges(base);
  traversed.clear();
  for (int e : edges) traversed.push_back(tree.edges[e].length);
  if (!p.is_vertex()) {
    edges.push_back(p.edge);
    traversed.push_back(p.offset);
  }
}

}  // namespace

double tree_distance(const FactorTree& tree, const TreePoint& a,
                     const TreePoint& b) {
  std::vector<int> ea, eb;
  std::vector<double> ta, tb;
  path_rep(tree, a, ea, ta);
  path_rep(tree, b, eb, tb);
  const double da = std::accumulate(ta.begin(), ta.end(), 0.0);
  const double db = std::accumulate(tb.begin(), tb.end(), 0.0);
  double common = 0.0;
  for (std::size_t i = 0; i < ea.size() && i < eb.size() && ea[i] == eb[i]; ++i) {
    common += std::min(ta[i], tb[i]);
    if (ta[i] < tree.edges[ea[i]].length || tb[i] < tree.edges[eb[i]].length)
      break;
  }
  return da + db - 2.0 * common;
}

TreePoint random_tree_point(const FactorTree& tree, std::mt19937_64& rng) {
  const double total = tree.total_edge_length();
  if (total <= 0.0 || tree.edges.empty()) return TreePoint{-1, 0, 0.0};
  std::uniform_real_distribution<double> uni(0.0, total);
  double s = uni(rng);
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    if (s <= tree.edges[e].length)
      return TreePoint{static_cast<int>(e), tree.edges[e].child_vertex, s};
    s -= tree.edges[e].length;
  }
  const int last = static_cast<int>(tree.edges.size()) - 1;
  return TreePoint{last, tree.edges[last].child_vertex,
                   tree.edges[last].length};
}

RootPath::RootPath(const FactorTree& tree, const TreePoint& x) : tree_(&tree) {
  std::vector<double> traversed;
  path_rep(tree, x, edges_, traversed);
  cum_.resize(edges_.size() + 1);
  cum_[0] = 0.0;
  for (std::size_t k = 0; k < edges_.size(); ++k)
    cum_[k + 1] = cum_[k] + traversed[k];
  total_ = cum_.back();
}

TreePoint RootPath::at(double s) const {
  s = std::min(total_, std::max(0.0, s));
  if (edges_.empty()) return TreePoint{-1, 0, 0.0};
  auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  std::size_t k = (it == cum_.begin()) ? 0 : (it - cum_.begin() - 1);
  if (k >= edges_.size()) k = edges_.size() - 1;
  const int e = edges_[k];
  const double offset = s - cum_[k];
  const auto& edge = tree_->edges[e];
  if (offset <= 0.0) return TreePoint{-1, edge.parent_vertex, 0.0};
  if (offset >= edge.length && k + 1 < cum_.size() && s >= cum_[k + 1] &&
      std::abs(offset - edge.length) < 1e-30)
    return TreePoint{-1, edge.child_vertex, 0.0};
  if (offset >= edge.length) return TreePoint{-1, edge.child_vertex, 0.0};
  return TreePoint{e, edge.child_vertex, offset};
}

// ---------------------------------------------------------------------------
// Tree construction.

namespace {

struct Block {
  int pair = 0;
  bool opening = true;
  int first_pos = 0, last_pos = 0;
};

std::vector<Block> block_sequence(const FusedNesting& fused) {
  std::vector<Block> blocks;
  for (std::size_t p = 0; p < fused.pairs.size(); ++p) {
    const auto& pr = fused.pairs[p];
    blocks.push_back({static_cast<int>(p), true, pr.open_positions.front(),
                      pr.open_positions.back()});
    blocks.push_back({static_cast<int>(p), false, pr.close_positions.front(),
                      pr.close_positions.back()});
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.first_pos < b.first_pos; });
  return blocks;
}

FactorTree tree_skeleton(const FusedNesting& fused) {
  FactorTree tree;
  tree.vertices.resize(fused.pairs.size() + 1);
  tree.edges.resize(fused.pairs.size());
  tree.vertices[0].kind = RegionKind::Root;
  tree.vertices[0].parent_edge = -1;
  tree.vertices[0].depth = 0.0;

  // Edge k corresponds to fused pair k; its child vertex is k+1.
  for (std::size_t p = 0; p < fused.pairs.size(); ++p) {
    const auto& pr = fused.pairs[p];
    TreeEdgeInfo& e = tree.edges[p];
    e.parent_vertex = pr.parent < 0 ? 0 : pr.parent + 1;
    e.child_vertex = static_cast<int>(p) + 1;
    e.open_positions = pr.open_positions;
    e.close_positions = pr.close_positions;
    TreeVertexInfo& v = tree.vertices[p + 1];
    v.parent_edge = static_cast<int>(p);
    v.kind = pr.children.empty()
                 ? RegionKind::Tip
                 : (pr.children.size() == 1 ? RegionKind::Corner
                                            : RegionKind::Branch);
    for (int ch : pr.children) v.child_edges.push_back(ch);
  }
  for (int t : fused.top) tree.vertices[0].child_edges.push_back(t);
  return tree;
}

// Depth-first accumulation of depths once lengths are set.
void fill_depths(FactorTree& tree) {
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : tree.vertices[v].child_edges) {
      const auto& edge = tree.edges[e];
      tree.vertices[edge.child_vertex].depth =
          tree.vertices[v].depth + edge.length;
      stack.push_back(edge.child_vertex);
    }
  }
}

}  // namespace

FactorTree build_tree(const FusedNesting& fused, const SampledCurve& curve,
                      const ArcDecomposition& decomp, int position_offset,
                      IndexRange sample_bounds) {
  FactorTree tree = tree_skeleton(fused);
  const ArclengthTable table = arclength_table(curve);
  const int first_sample = sample_bounds.lo >= 0 ? sample_bounds.lo : 0;
  const int last_sample =
      sample_bounds.hi >= 0 ? sample_bounds.hi : curve.sample_count() - 1;

  if (fused.pairs.empty()) {
    tree.vertices[0].axis_components.push_back({first_sample, last_sample});
    tree.vertices[0].anchor_sample = (first_sample + last_sample) / 2;
    tree.validate();
    return tree;
  }

  // Occurrence blocks in word order, with the A0 gaps between them. Each
  // gap is split at its midpoint: the halves extend the neighbouring
  // occurrences, so the fold map is continuous across vertices by
  // construction. The midpoint sample anchors the vertex region.
  const std::vector<Block> blocks = block_sequence(fused);
  const int nb = static_cast<int>(blocks.size());

  auto block_range = [&](const Block& b) -> IndexRange {
    const auto& first = decomp.intervals[position_offset + b.first_pos];
    const auto& last = decomp.intervals[position_offset + b.last_pos];
    return {first.samples.lo, last.samples.hi};
  };

  // gap g sits before block g (g = 0..nb). Each gap is split at the
  // middle of its slowest run: for halted curves that is the exact dwell
  // point, so vertex anchors coincide with the junction images.
  std::vector<int> mids(nb + 1);
  std::vector<IndexRange> gap_ranges(nb + 1);
  for (int g = 0; g <= nb; ++g) {
    const int lo = g == 0 ? first_sample : block_range(blocks[g - 1]).hi + 1;
    const int hi = g == nb ? last_sample : block_range(blocks[g]).lo - 1;
    if (lo > hi)
      throw ResolutionError("no A0 samples between stratum intervals");
    gap_ranges[g] = {lo, hi};
    double slowest = 1e300;
    for (int i = lo; i <= hi; ++i) slowest = std::min(slowest, curve.speed(i));
    const double thr = slowest + 1e-12 * (1.0 + slowest);
    int run_lo = -1, run_hi = -1;
    for (int i = lo; i <= hi; ++i) {
      if (curve.speed(i) <= thr) {
        if (run_lo < 0) run_lo = i;
        run_hi = i;
      } else if (run_lo >= 0) {
        break;
      }
    }
    mids[g] = (run_lo + run_hi) / 2;
  }

  // Assign gaps to vertex regions by a stack sweep over the blocks.
  std::vector<int> stack;
  std::vector<int> gap_vertex(nb + 1);
  gap_vertex[0] = 0;
  for (int b = 0; b < nb; ++b) {
    if (blocks[b].opening)
      stack.push_back(blocks[b].pair);
    else
      stack.pop_back();
    gap_vertex[b + 1] = stack.empty() ? 0 : stack.back() + 1;
  }
  for (int g = 0; g <= nb; ++g) {
    auto& v = tree.vertices[gap_vertex[g]];
    v.axis_components.push_back(gap_ranges[g]);
    if (v.anchor_sample < 0) v.anchor_sample = mids[g];
  }

  // Extended occurrence ranges and edge lengths.
  for (int b = 0; b < nb; ++b) {
    const IndexRange ext{mids[b], mids[b + 1]};
    TreeEdgeInfo& e = tree.edges[blocks[b].pair];
    if (blocks[b].opening) {
      e.open_samples = ext;
      e.length = table.at_sample(ext.hi) - table.at_sample(ext.lo);
    } else {
      e.close_samples = ext;
    }
  }
  fill_depths(tree);
  tree.validate();
  return tree;
}

FactorTree build_tree_from_word(const FusedNesting& fused,
                                const std::vector<double>& lengths) {
  if (lengths.size() != fused.pairs.size())
    throw ValidationError("build_tree_from_word: lengths size mismatch");
  FactorTree tree = tree_skeleton(fused);
  for (std::size_t p = 0; p < fused.pairs.size(); ++p)
    tree.edges[p].length = lengths[p];
  fill_depths(tree);
  tree.validate();
  return tree;
}

// ---------------------------------------------------------------------------
// Factorization.

FoldMap::FoldMap(const SampledCurve& curve, const ArclengthTable& table,
                 const FactorTree& tree)
    : curve_(&curve), table_(&table), tree_(&tree) {}

Vec FoldMap::operator()(const TreePoint& p) const {
  if (p.is_vertex()) {
    const int anchor = tree_->vertices[p.vertex].anchor_sample;
    if (anchor < 0) throw Error("fold: vertex without anchor sample");
    return curve_->points[anchor];
  }
  const auto& e = tree_->edges[p.edge];
  if (e.open_samples.lo < 0)
    throw Error("fold: combinatorial tree has no sample ranges");
  return point_at_arclength(*curve_, *table_, e.open_samples,
                            std::clamp(p.offset, 0.0, e.length));
}

Factorization gamma_tilde(const SampledCurve& curve,
                          const ArcDecomposition& decomp,
                          const FactorTree& tree) {
  const ArclengthTable table = arclength_table(curve);
  const int n = curve.sample_count();
  Factorization fact;
  fact.tree_points.assign(n, TreePoint{-1, 0, 0.0});

  double max_len_mismatch = 0.0;
  for (const auto& e : tree.edges) {
    if (e.open_samples.lo < 0 || e.close_samples.lo < 0)
      throw ValidationError("gamma_tilde: tree lacks occurrence ranges");
    const double close_len =
        table.at_sample(e.close_samples.hi) - table.at_sample(e.close_samples.lo);
    max_len_mismatch =
        std::max(max_len_mismatch, std::abs(close_len - e.length));
  }

  // Vertex plateaus first (axis components), then edge walks overwrite
  // the shared midpoint boundaries consistently.
  for (std::size_t v = 0; v < tree.vertices.size(); ++v)
    for (const IndexRange& comp : tree.vertices[v].axis_components)
      for (int i = comp.lo; i <= comp.hi; ++i)
        fact.tree_points[i] = TreePoint{-1, static_cast<int>(v), 0.0};

  const double snap = 1e-12;
  for (std::size_t k = 0; k < tree.edges.size(); ++k) {
    const auto& e = tree.edges[k];
    const double s0 = table.at_sample(e.open_samples.lo);
    for (int i = e.open_samples.lo; i <= e.open_samples.hi; ++i) {
      const double off = table.at_sample(i) - s0;
      if (off <= snap * (1.0 + e.length)) {
        fact.tree_points[i] = TreePoint{-1, e.parent_vertex, 0.0};
      } else if (off >= e.length - snap * (1.0 + e.length)) {
        fact.tree_points[i] = TreePoint{-1, e.child_vertex, 0.0};
      } else {
        fact.tree_points[i] = TreePoint{static_cast<int>(k), e.child_vertex, off};
      }
    }
    const double c0 = table.at_sample(e.close_samples.lo);
    const double close_len = table.at_sample(e.close_samples.hi) - c0;
    const double scale = close_len > 0.0 ? e.length / close_len : 0.0;
    for (int i = e.close_samples.lo; i <= e.close_samples.hi; ++i) {
      const double off = e.length - scale * (table.at_sample(i) - c0);
      if (off >= e.length - snap * (1.0 + e.length)) {
        fact.tree_points[i] = TreePoint{-1, e.child_vertex, 0.0};
      } else if (off <= snap * (1.0 + e.length)) {
        fact.tree_points[i] = TreePoint{-1, e.parent_vertex, 0.0};
      } else {
        fact.tree_points[i] = TreePoint{static_cast<int>(k), e.child_vertex, off};
      }
    }
  }

  // Report: factorization error and vertex image coherence.
  const FoldMap fold(curve, table, tree);
  double max_err = 0.0;
  for (int i = 0; i < n; ++i)
    max_err = std::max(max_err, (fold(fact.tree_points[i]) - curve.points[i]).norm());
  double spread = 0.0;
  for (const auto& v : tree.vertices) {
    if (v.anchor_sample < 0) continue;
    const Vec& anchor = curve.points[v.anchor_sample];
    for (const IndexRange& comp : v.axis_components) {
      const int mid = (comp.lo + comp.hi) / 2;
      spread = std::max(spread, (curve.points[mid] - anchor).norm());
    }
  }
  fact.report.max_point_error = max_err;
  fact.report.max_length_mismatch = max_len_mismatch;
  fact.report.vertex_image_spread = spread;
  return fact;
}

double fold_lipschitz(const FoldMap& fold, const FactorTree& tree,
                      int pair_count, double min_sep, std::mt19937_64& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < pair_count; ++trial) {
    const TreePoint a = random_tree_point(tree, rng);
    const TreePoint b = random_tree_point(tree, rng);
    const double dist = tree_distance(tree, a, b);
    if (dist < min_sep) continue;
    worst = std::max(worst, (fold(a) - fold(b)).norm() / dist);
  }
  return worst;
}

TreeFactorization factor_curve(const SampledCurve& curve,
                               const ArcDecomposition& decomp,
                               const FactorParams& params) {
  const Word w = word_of(decomp);
  const auto pairing = nesting_pairing(w);
  if (!pairing.has_value())
    throw ValidationError("factor_curve: the curve's word is not a whisker");

  TreeFactorization out;
  out.relabeled = relabel_occurrences(w, *pairing);
  const Nesting nesting = build_nesting(out.relabeled);
  out.fused = detect_spurious_corners(nesting, curve, decomp, params.theta_tol);
  out.tree = build_tree(out.fused, curve, decomp);
  out.fact = gamma_tilde(curve, decomp, out.tree);

  const ArclengthTable table = arclength_table(curve);
  const FoldMap fold(curve, table, out.tree);
  std::mt19937_64 rng(params.seed);
  const double min_sep = 1e-3 * std::max(1e-12, out.tree.total_edge_length());
  out.fact.report.fold_lipschitz =
      fold_lipschitz(fold, out.tree, params.lip_pairs, min_sep, rng);
  return out;
}

}  // namespace thinloop
