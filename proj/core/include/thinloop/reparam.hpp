#ifndef THINLOOP_REPARAM_HPP
#define THINLOOP_REPARAM_HPP

#include <vector>

#include "thinloop/types.hpp"

namespace thinloop {

// The bump profile f(x) = x - sin(2 pi x) / (2 pi) on [0,1]:
// monotone onto, f' = 1 - cos(2 pi x) in [0,2], zero exactly at the
// endpoints, sup f' = 2 (at x = 1/2).
double bump(double x);
double bump_deriv(double x);

// Pads a sequence of positive lengths so that the sum hits `target`
// exactly: l'_n = l_n + s 2^{-rank(n)}, rank by non-increasing length.
// Guarantees l'_n >= l_n elementwise and sum l' = target.
std::vector<double> padded_lengths(const std::vector<double>& lengths,
                                   double target);

// Monotone C^1 map given by nodes x_0 < ... < x_m, y_0 <= ... <= y_m.
// Between nodes the map is an affine image of the bump profile, so the
// derivative vanishes at every node (and on plateau pieces where
// consecutive y's coincide). Critical values are exactly the node
// values.
class MonotoneC1Map {
 public:
  MonotoneC1Map() = default;
  MonotoneC1Map(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double deriv(double x) const;

  Interval domain() const { return {xs_.front(), xs_.back()}; }
  Interval range() const { return {ys_.front(), ys_.back()}; }

  // Largest preimage endpoint: returns the leftmost x with eval(x) = y.
  double inverse(double y) const;

  // Analytic sup of the derivative (2 max dy/dx over pieces).
  double sup_deriv() const;

  const std::vector<double>& node_positions() const { return xs_; }
  const std::vector<double>& node_values() const { return ys_; }

 private:
  std::vector<double> xs_, ys_;
};

// Appendix lemma construction: monotone increasing surjection of [0,1]
// whose critical values are exactly S together with {0,1}. Built on
// [0,2] from padded complement lengths and then precomposed with
// x -> 2x, which certifies sup |psi'| <= 4.
MonotoneC1Map psi(const std::vector<double>& s_values);

// Affine conjugate of psi living on the interval J; critical values are
// S together with the endpoints of J. The derivative bound is unchanged.
MonotoneC1Map psi_scaled(Interval j, const std::vector<double>& s_values);

// Direct node-interpolation variant: prescribed (x_k, y_k) with zero
// derivative at every node. Used for the retraction clocks, where both
// coordinates of the nodes are given.
MonotoneC1Map interpolate_critical(const std::vector<double>& xs,
                                   const std::vector<double>& ys);

// C^1 ramp on [0,1] that is exactly 0 on [0, delta] and exactly 1 on
// [1 - delta, 1]. Used to halt homotopies at the grid edges so the
// discrete boundary partials vanish identically.
MonotoneC1Map halt_profile(double delta = 0.125);

// The Step-2 reparametrization of [0, L]: identity on the closed set
// given by `fixed` (a disjoint list of closed intervals containing the
// endpoints' components or not), and on every complementary open
// interval a psi_scaled with the prescribed interior critical values.
class PhiMap {
 public:
  PhiMap() = default;
  PhiMap(double total, std::vector<Interval> fixed,
         const std::vector<double>& critical_values);

  double operator()(double s) const { return eval(s); }
  double eval(double s) const;
  double deriv(double s) const;
  double total() const { return total_; }
  double sup_deriv() const;

  const std::vector<Interval>& fixed_intervals() const { return fixed_; }
  const std::vector<MonotoneC1Map>& gap_maps() const { return gaps_; }

 private:
  double total_ = 0.0;
  std::vector<Interval> fixed_;        // sorted, disjoint
  std::vector<MonotoneC1Map> gaps_;    // one per complementary interval
  std::vector<Interval> gap_ranges_;
};

PhiMap phi(double total, std::vector<Interval> fixed,
           const std::vector<double>& critical_values);

}  // namespace thinloop

#endif
