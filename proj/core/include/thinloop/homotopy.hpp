#ifndef THINLOOP_HOMOTOPY_HPP
#define THINLOOP_HOMOTOPY_HPP

#include <string>
#include <vector>

#include "thinloop/curve.hpp"
#include "thinloop/reparam.hpp"
#include "thinloop/tree.hpp"
#include "thinloop/types.hpp"

namespace thinloop {

// Discrete homotopy H on a (t, r) grid. Row j is the curve H(., r_j);
// row 0 is the source, the last row the target. The t grid is the
// source curve's parameter grid.
struct HomotopyGrid {
  std::vector<std::vector<Vec>> rows;  // rows[j][i] in R^d
  std::vector<double> t_params;
  std::vector<double> r_params;  // uniform in [0,1]
  int dim = 0;
  std::string provenance;

  int t_count() const { return static_cast<int>(t_params.size()); }
  int r_count() const { return static_cast<int>(r_params.size()); }
  SampledCurve row_curve(int j) const;
  void validate() const;
};

struct ThinnessTolerances {
  double tol_rank = 1e-3;  // relative to sup|Ht| * sup|Hr|
  double tol_edge = 1e-6;  // absolute, Definition-3 boundary partials
  double tol_c1 = 0.80;    // two-resolution modulus ratio bound
};

struct ThinnessReport {
  double max_minor_rel = 0.0;
  double max_edge_partial = 0.0;
  double sup_dt = 0.0, sup_dr = 0.0;
  double c1_ratio_t = 0.0, c1_ratio_r = 0.0;  // modulus(h)/modulus(2h)
  bool minors_ok = false, edges_ok = false, c1_ok = false;
  bool pass = false;
};

ThinnessReport check_thin(const HomotopyGrid& grid,
                          const ThinnessTolerances& tol = {});

// Max distance from grid points to the source row's sample set; the
// image-containment measure for the rank argument.
double image_containment(const HomotopyGrid& grid, double eps_geo);

struct HomotopyParams {
  int rows = 257;           // base row budget per construction band
  double halt_delta = 0.2;  // plateau fraction at each band end
  double v_min = 0.0;       // 0: auto
};

// Step 2: straight-line homotopy to the curve reparametrized so that the
// derivative vanishes at every vertex preimage. Rows are arclength
// lookups into the source curve; row 0 is the source exactly.
struct VanishResult {
  HomotopyGrid grid;
  SampledCurve target;
  PhiMap reparam_map;
  std::vector<double> forced_values;  // arclengths of fast vertex transits
};

VanishResult vanish_at_vertices(const SampledCurve& curve,
                                const ArcDecomposition& decomp,
                                const FactorTree& tree,
                                const HomotopyParams& params = {});

// Step 3: contraction of the tree onto its root. The grid starts with a
// short blend band from the curve onto its factorization replica
// fold(gamma_tilde), then retracts the replica; tips pause at every
// vertex they pass (the padded-length clocks).
HomotopyGrid contract_tree(const SampledCurve& curve, const FactorTree& tree,
                           const Factorization& fact,
                           const std::vector<double>& padded_edge_lengths,
                           const HomotopyParams& params = {});

// r-reparametrization by a plateaued C^1 ramp, interpolating rows; makes
// the boundary partials vanish identically at grid resolution.
HomotopyGrid glue_and_halt(const HomotopyGrid& grid, double halt_delta = 0.2);

// Step 4 (and the Theorem 3 (a)=>(b) route): all maximal trivial
// subwords are contracted simultaneously with one global padded-length
// pool. The target's word is the reduction of the source's word.
struct RemoveWhiskersResult {
  HomotopyGrid grid;
  SampledCurve target;
  Word source_word;
  Word reduced_word;
  int segment_count = 0;
  double replica_error = 0.0;  // fold(gamma_tilde) vs curve, sup norm
};

RemoveWhiskersResult remove_whiskers(const SampledCurve& curve,
                                     const DecomposeParams& dparams = {},
                                     const FactorParams& fparams = {},
                                     const HomotopyParams& params = {});

}  // namespace thinloop

#endif
