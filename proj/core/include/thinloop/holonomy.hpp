#ifndef THINLOOP_HOLONOMY_HPP
#define THINLOOP_HOLONOMY_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "thinloop/curve.hpp"
#include "thinloop/types.hpp"
#include "thinloop/word.hpp"

namespace thinloop {

using Mat = Eigen::MatrixXcd;

enum class GroupName { U1, SU2, SO3, SL2R };

// A matrix Lie group with a fixed algebra basis and a projection onto
// the group. U1 is deliberately included as the abelian counter-model
// for the semi-simplicity hypothesis.
struct LieGroupSpec {
  GroupName name = GroupName::SU2;
  int matrix_dim = 2;
  std::vector<Mat> algebra_basis;

  static LieGroupSpec make(GroupName n);
  static LieGroupSpec from_string(const std::string& s);
  std::string to_string() const;

  Mat identity() const;
  Mat exp(const Mat& algebra_element) const;
  Mat project(const Mat& near_group) const;
  double group_defect(const Mat& u) const;
  double algebra_defect(const Mat& x) const;
  Mat random_algebra(std::mt19937_64& rng, double scale) const;
  Mat random_element(std::mt19937_64& rng, double scale = 1.0) const;

  // Coordinates of an algebra element in the basis (real coefficients).
  std::vector<double> algebra_coordinates(const Mat& x) const;
};

// Scalar basis functions for connection coefficients: monomials of
// degree <= 2, sinusoids of affine forms, and compactly-supported tube
// profiles around an arc (used by the distinguishing construction).
struct BasisTerm {
  enum class Kind { Monomial, Sinusoid, Tube };
  Kind kind = Kind::Monomial;
  std::vector<int> exponents;   // monomial
  std::vector<double> freq;     // sinusoid: sin(freq . x + phase)
  double phase = 0.0;
  std::vector<Vec> arc_points;  // tube centerline
  double tube_radius = 0.0;
  double shrink = 0.1;          // arclength fraction trimmed at each end
  Vec bbox_lo, bbox_hi;         // centerline bounds, for fast rejection
};

struct ConnectionTerm {
  int mu = -1;  // coordinate it multiplies; -1 for tube terms
  BasisTerm basis;
  std::vector<double> algebra_coeffs;  // per algebra basis element
};

// A_mu(x) dx^mu with values in the group's algebra (by construction:
// every term is a scalar function times a real combination of the
// algebra basis).
struct ConnectionField {
  LieGroupSpec group;
  int dim = 0;
  std::vector<ConnectionTerm> terms;
  std::uint64_t seed = 0;  // generator seed when random, 0 if explicit

  // A_mu(gamma) gammadot^mu: the algebra-valued integrand.
  Mat eval(const Vec& x, const Vec& velocity) const;
};

struct RandomConnectionOptions {
  int degree = 2;
  bool sinusoids = true;
  double coeff_scale = 0.6;
};

ConnectionField random_connection(const LieGroupSpec& group, int dim,
                                  std::uint64_t seed,
                                  const RandomConnectionOptions& opts = {});

// ---------------------------------------------------------------------------
// Parallel transport: dU/dt = A(gamma(t)) gammadot(t) U, U(0) = I,
// integrated segment-by-segment over the polyline (RK4 with group
// projection each step). Later parameter times multiply on the left, so
// transport(a.b) = transport(b) transport(a).

struct HolonomyResult {
  Mat transport;
  int total_substeps = 0;
  double group_defect = 0.0;
  double richardson_error = 0.0;  // ||U_2N - U_N|| / 15
};

// `steps` is a lower bound on the number of RK4 substeps, distributed
// over the polyline segments by length (at least one per segment).
HolonomyResult transport(const SampledCurve& curve, const ConnectionField& conn,
                         int steps = 1024);

// Single integration pass with every segment's substep count scaled by
// `multiplier`; used for convergence-order probes.
Mat transport_at(const SampledCurve& curve, const ConnectionField& conn,
                 int steps, int multiplier);

struct TrivialityReport {
  bool trivial = false;
  double worst_deviation = 0.0;  // max ||U - I||_F over the sample
  int worst_index = -1;
  int connections = 0;
};

TrivialityReport holonomy_trivial(const SampledCurve& loop,
                                  const LieGroupSpec& group, int n_connections,
                                  std::uint64_t seed, double tol,
                                  int steps = 1024);

// Substitution product for a word: letters map to group elements, later
// letters multiply on the left (the transport composition convention).
Mat word_map_eval(const Word& w, const std::vector<Mat>& assignment,
                  const LieGroupSpec& group);

// Connection supported on disjoint tubes around the decomposition's
// arcs: transport along the curve realizes the word map at
// g_i = exp(xi[i]). Throws ResolutionError when the arcs leave no room
// for disjoint tubes.
ConnectionField distinguishing_connection(const SampledCurve& curve,
                                          const ArcDecomposition& decomp,
                                          const LieGroupSpec& group,
                                          const std::vector<Mat>& xi,
                                          double shrink = 0.1);

}  // namespace thinloop

#endif
