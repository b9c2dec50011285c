#ifndef THINLOOP_CURVE_HPP
#define THINLOOP_CURVE_HPP

#include <map>
#include <string>
#include <vector>

#include "thinloop/reparam.hpp"
#include "thinloop/types.hpp"
#include "thinloop/word.hpp"

namespace thinloop {

// A piecewise-C1 curve on [0,1] sampled on a strictly increasing
// parameter grid, with tangents either supplied or finite-differenced.
struct SampledCurve {
  int dim = 0;
  std::vector<double> params;
  std::vector<Vec> points;
  std::vector<Vec> tangents;
  bool loop = false;

  int sample_count() const { return static_cast<int>(points.size()); }
  double speed(int i) const { return tangents[i].norm(); }

  // max over interior samples of ||tangent_{i+1} - tangent_i|| / dt;
  // finite for discretely-C1 curves, reported rather than enforced.
  double c1_modulus() const;

  double bbox_diagonal() const;
  void validate() const;

  // Central finite-difference tangents; uniform params when omitted.
  static SampledCurve from_points(std::vector<Vec> pts,
                                  std::vector<double> params = {},
                                  bool loop = false);
};

SampledCurve reverse(const SampledCurve& c);

// Concatenation on half parameter ranges. Requires coinciding junction
// (the second curve is snapped onto the first) and vanishing endpoint
// tangents at the seam.
SampledCurve concat(const SampledCurve& a, const SampledCurve& b,
                    double tol_join = 1e-6);

// curve(psi(s)) sampled so that the polyline is unchanged: sample i
// moves to parameter psi^{-1}(t_i) and its tangent picks up psi'.
SampledCurve reparametrize(const SampledCurve& c, const MonotoneC1Map& psi_map);

// Proper length l(t) by trapezoidal quadrature of ||tangent||.
struct ArclengthTable {
  std::vector<double> cum;

  double total() const { return cum.back(); }
  double at_sample(int i) const { return cum[i]; }
  double at_param(const SampledCurve& c, double t) const;
  // Leftmost parameter where the length reaches s.
  double param_at(const SampledCurve& c, double s) const;
};
ArclengthTable arclength_table(const SampledCurve& c);

// Point at local arclength s (measured from cum[range.lo]) inside the
// given sample range, linearly interpolated between samples.
Vec point_at_arclength(const SampledCurve& c, const ArclengthTable& table,
                       IndexRange range, double s);

// ---------------------------------------------------------------------------
// Self-overlap structure: for every sample, the maximal runs of sample
// indices whose images lie within eps_geo. The number of runs is the
// discrete multiplicity of the sample's image point.

struct OverlapIndex {
  struct Run {
    std::int32_t lo = 0, hi = 0;
    friend bool operator==(const Run&, const Run&) = default;
  };
  std::vector<std::vector<Run>> clusters;  // per sample, sorted by lo
  std::vector<int> multiplicity;

  friend bool operator==(const OverlapIndex&, const OverlapIndex&) = default;
};

OverlapIndex self_overlap_index(const SampledCurve& c, double eps_geo);

// ---------------------------------------------------------------------------
// Synthesis from an arc/traversal description.

struct ArcSpec {
  std::string id;
  std::vector<Vec> points;  // injective polyline
};

struct TraversalStep {
  std::string arc;
  int dir = +1;  // +1 forward, -1 backward
};

struct CurveSpec {
  int dim = 0;
  std::vector<ArcSpec> arcs;
  std::vector<TraversalStep> traversal;
  double dwell = 0.02;  // pause inserted at junctions, as a fraction of a leg
};

struct SynthOptions {
  int samples_per_arc = 512;
  // Bump speed profile per leg, so tangents vanish at all junctions.
  // Disabling produces curves that transit junctions at speed.
  bool halt_at_junctions = true;
  double junction_tol = 1e-7;  // relative to the bounding box
};

struct SynthResult {
  SampledCurve curve;
  Word word;                       // ground truth traversal word
  std::vector<std::string> names;  // arc id per letter index
};

SynthResult synth_curve(const CurveSpec& spec, const SynthOptions& opts = {});

// ---------------------------------------------------------------------------
// Discrete arc decomposition (multiplicity strata + recovered arcs).

struct Arc {
  int id = 0;
  std::vector<Vec> points;
  double length = 0.0;
};

// Checks that no two non-adjacent segments of the polyline come within
// eps of each other (discrete embeddedness).
bool arc_is_embedded(const Arc& arc, double eps_geo);

struct StratumInterval {
  IndexRange samples;
  Interval param;
  int multiplicity = 0;  // n >= 1
  int arc = -1;
  int direction = +1;    // vs. the arc's fixed orientation
  double length = 0.0;   // arclength swept by the interval
};

struct ArcDecomposition {
  std::vector<StratumInterval> intervals;  // sorted by parameter
  std::vector<IndexRange> a0;              // complement components
  std::vector<Arc> arcs;
  std::map<int, std::vector<int>> strata;  // n -> indices into `intervals`
  double eps_geo = 0.0;
  double v_min = 0.0;
};

struct DecomposeParams {
  double eps_geo = 0.0;          // 0: 2.5 x max consecutive sample spacing
  double v_min = 0.0;            // 0: 0.05 x total arclength
  double blur_factor = 3.0;      // drop moving runs sweeping < blur*eps
  int min_run_samples = 3;
  int trim = 1;                  // boundary samples returned to A0
};

ArcDecomposition decompose(const SampledCurve& c,
                           const DecomposeParams& params = {});

Word word_of(const ArcDecomposition& d);

double resolve_eps_geo(const SampledCurve& c, double requested);
double resolve_v_min(const SampledCurve& c, double requested);

}  // namespace thinloop

#endif
