#ifndef THINLOOP_TREE_HPP
#define THINLOOP_TREE_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "thinloop/curve.hpp"
#include "thinloop/types.hpp"
#include "thinloop/word.hpp"

namespace thinloop {

// Word with every letter occurring exactly twice, the positive
// occurrence first. Letters are renumbered 0..m-1 in order of their
// opening position; `pairs[k]` remembers where letter k came from.
struct RelabeledWord {
  Word word;
  struct PairInfo {
    int open_pos = 0;
    int close_pos = 0;
    int source_arc = 0;
    bool flipped = false;  // original first occurrence was negative
  };
  std::vector<PairInfo> pairs;
};

RelabeledWord relabel_occurrences(const Word& w, const Pairing& pairing);

// Display names for relabeled letters ("a1", "a2", ...), given the
// source alphabet.
std::vector<std::string> relabeled_names(const RelabeledWord& w,
                                         const std::vector<std::string>& names);

enum class RegionKind { Root, Tip, Corner, Branch };

// One semi-annulus per relabeled letter, ordered by nesting; the region
// directly below annulus k is dual to tree vertex k+1 (vertex 0 is the
// root region).
struct SemiAnnulus {
  int letter = 0;
  int open_pos = 0, close_pos = 0;
  int parent = -1;            // enclosing annulus, -1 if outermost
  std::vector<int> children;  // in word order
};

struct Nesting {
  std::vector<SemiAnnulus> annuli;
  std::vector<int> top;          // outermost annuli in word order
  std::vector<int> gap_annulus;  // per word gap g in 0..n: innermost open
                                 // annulus, -1 for the root region
};

Nesting build_nesting(const RelabeledWord& w);

RegionKind region_kind_of(const Nesting& nesting, int annulus);

// Fusion of spurious corners. A corner region (annulus with exactly one
// child, adjacent in the word) is spurious when the curve passes its
// junction images C1-smoothly in proper length; the two letter pairs
// then merge into one. Applied recursively to a fixpoint.
struct FusedNesting {
  struct FusedPair {
    std::vector<int> open_positions;   // ascending, consecutive word slots
    std::vector<int> close_positions;  // ascending
    int parent = -1;
    std::vector<int> children;
  };
  std::vector<FusedPair> pairs;
  std::vector<int> top;
  int fused_away = 0;  // how many pairs were absorbed
};

FusedNesting fused_from_nesting(const Nesting& nesting);  // no fusion applied

// `position_offset` shifts the nesting's word slots into decomp.intervals;
// nonzero when the nesting describes a subword (a whisker segment).
FusedNesting detect_spurious_corners(const Nesting& nesting,
                                     const SampledCurve& curve,
                                     const ArcDecomposition& decomp,
                                     double theta_tol, int position_offset = 0);

// ---------------------------------------------------------------------------
// The tree in l^1 (sparse coordinates) with the curve factorization.

struct TreeEdgeInfo {
  int parent_vertex = 0;
  int child_vertex = 0;
  double length = 0.0;
  IndexRange open_samples{-1, -1};   // left occurrence incl. fused gaps
  IndexRange close_samples{-1, -1};  // right occurrence
  std::vector<int> open_positions, close_positions;  // word slots
};

struct TreeVertexInfo {
  RegionKind kind = RegionKind::Root;
  int parent_edge = -1;
  double depth = 0.0;  // ||v||_1, the distance from the root
  std::vector<int> child_edges;
  std::vector<IndexRange> axis_components;  // A0 gaps of the dual region
  int anchor_sample = -1;  // first sample of the first axis component
};

struct FactorTree {
  std::vector<TreeVertexInfo> vertices;  // [0] is the root
  std::vector<TreeEdgeInfo> edges;

  double total_edge_length() const;
  std::vector<int> root_path_edges(int vertex) const;  // root -> vertex
  std::map<int, double> coordinate(int vertex) const;  // sparse l^1 coords
  void validate() const;
};

// A point of the tree: either a vertex, or an interior point of an edge
// at `offset` from the edge's parent-side vertex.
struct TreePoint {
  int edge = -1;  // -1: the point is `vertex`
  int vertex = 0;
  double offset = 0.0;

  bool is_vertex() const { return edge < 0; }
};

double depth_of(const FactorTree& tree, const TreePoint& p);
double tree_distance(const FactorTree& tree, const TreePoint& a,
                     const TreePoint& b);
TreePoint random_tree_point(const FactorTree& tree, std::mt19937_64& rng);

// Unit-speed path from the root to x: sigma_x(s) is the point at
// distance s from the root, s in [0, depth_of(x)].
class RootPath {
 public:
  RootPath(const FactorTree& tree, const TreePoint& x);
  double total() const { return total_; }
  TreePoint at(double s) const;
  const std::vector<int>& edges() const { return edges_; }
  const std::vector<double>& cumulative() const { return cum_; }

 private:
  const FactorTree* tree_;
  std::vector<int> edges_;
  std::vector<double> cum_;  // cum[k] = depth at the start of edges_[k]
  double total_ = 0.0;
};

// Tree construction from a fused nesting over a decomposed curve: edge
// lengths are the proper lengths of the opening occurrences. Every A0
// gap is split at its midpoint between the two neighbouring occurrences,
// which makes the fold map continuous across vertices by construction.
// `sample_bounds` restricts the leading/trailing gaps when the nesting
// covers only a segment of the curve ({-1,-1}: the whole curve).
FactorTree build_tree(const FusedNesting& fused, const SampledCurve& curve,
                      const ArcDecomposition& decomp, int position_offset = 0,
                      IndexRange sample_bounds = {-1, -1});

// Combinatorial variant for word-level tests: prescribed lengths per
// fused pair, no sample ranges.
FactorTree build_tree_from_word(const FusedNesting& fused,
                                const std::vector<double>& lengths);

// ---------------------------------------------------------------------------
// Factorization gamma = fold o gamma_tilde.

struct FactorizationReport {
  double max_point_error = 0.0;     // max ||gamma(t) - fold(gamma_tilde(t))||
  double max_length_mismatch = 0.0; // open vs close occurrence lengths
  double vertex_image_spread = 0.0; // axis components of one region
  double fold_lipschitz = 0.0;      // empirical, random pairs
};

struct Factorization {
  std::vector<TreePoint> tree_points;  // per curve sample
  FactorizationReport report;
};

// The fold map f : T -> R^d. Vertices go to their region's junction
// image; edge points are arclength lookups into the opening occurrence.
class FoldMap {
 public:
  FoldMap(const SampledCurve& curve, const ArclengthTable& table,
          const FactorTree& tree);
  Vec operator()(const TreePoint& p) const;

 private:
  const SampledCurve* curve_;
  const ArclengthTable* table_;
  const FactorTree* tree_;
};

Factorization gamma_tilde(const SampledCurve& curve,
                          const ArcDecomposition& decomp,
                          const FactorTree& tree);

// Empirical Lipschitz constant of fold over sampled tree point pairs
// separated by at least min_sep.
double fold_lipschitz(const FoldMap& fold, const FactorTree& tree,
                      int pair_count, double min_sep, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// The whole Step-1 pipeline.

struct FactorParams {
  double theta_tol = 1e-3;  // radians, junction smoothness test
  int lip_pairs = 10000;
  unsigned seed = 20240801;
};

struct TreeFactorization {
  RelabeledWord relabeled;
  FusedNesting fused;
  FactorTree tree;
  Factorization fact;
};

// Requires word_of(decomp) to be a whisker; throws ValidationError
// otherwise.
TreeFactorization factor_curve(const SampledCurve& curve,
                               const ArcDecomposition& decomp,
                               const FactorParams& params = {});

}  // namespace thinloop

#endif
