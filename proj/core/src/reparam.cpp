#include "thinloop/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace thinloop {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double bump(double x) { return x - std::sin(kTwoPi * x) / kTwoPi; }
double bump_deriv(double x) { return 1.0 - std::cos(kTwoPi * x); }

std::vector<double> padded_lengths(const std::vector<double>& lengths,
                                   double target) {
  if (lengths.empty()) throw ValidationError("padded_lengths: empty input");
  for (double l : lengths)
    if (!(l > 0.0) || !std::isfinite(l))
      throw ValidationError("padded_lengths: lengths must be positive");
  const double sum = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  if (!(target >= sum))
    throw ValidationError("padded_lengths: target below current sum");

  // Rank by non-increasing length (stable on ties).
  std::vector<std::size_t> order(lengths.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lengths[a] > lengths[b];
  });
  std::vector<double> weight(lengths.size());
  double weight_sum = 0.0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    weight[order[rank]] = std::ldexp(1.0, -static_cast<int>(rank) - 1);
    weight_sum += weight[order[rank]];
  }
  const double s = (target - sum) / weight_sum;
  std::vector<double> padded(lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i)
    padded[i] = lengths[i] + s * weight[i];
  return padded;
}

MonotoneC1Map::MonotoneC1Map(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size())
    throw ValidationError("MonotoneC1Map: need matching node lists, size >= 2");
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    if (!(xs_[i] < xs_[i + 1]))
      throw ValidationError("MonotoneC1Map: node positions not increasing");
    if (ys_[i] > ys_[i + 1])
      throw ValidationError("MonotoneC1Map: node values decreasing");
  }
}

namespace {
double domain_clamp(double x, double lo, double hi, const char* who) {
  const double tol = 1e-9 * (1.0 + hi - lo);
  if (x < lo - tol || x > hi + tol)
    throw ValidationError(std::string(who) + ": argument outside domain");
  return std::min(hi, std::max(lo, x));
}
}  // namespace

double MonotoneC1Map::eval(double x) const {
  x = domain_clamp(x, xs_.front(), xs_.back(), "MonotoneC1Map::eval");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t k = (it == xs_.begin()) ? 0 : (it - xs_.begin() - 1);
  if (k + 1 >= xs_.size()) k = xs_.size() - 2;
  const double w = xs_[k + 1] - xs_[k];
  const double u = (x - xs_[k]) / w;
  return ys_[k] + (ys_[k + 1] - ys_[k]) * bump(u);
}

double MonotoneC1Map::deriv(double x) const {
  x = domain_clamp(x, xs_.front(), xs_.back(), "MonotoneC1Map::deriv");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t k = (it == xs_.begin()) ? 0 : (it - xs_.begin() - 1);
  if (k + 1 >= xs_.size()) k = xs_.size() - 2;
  const double w = xs_[k + 1] - xs_[k];
  const double u = (x - xs_[k]) / w;
  return (ys_[k + 1] - ys_[k]) / w * bump_deriv(u);
}

double MonotoneC1Map::inverse(double y) const {
  y = domain_clamp(y, ys_.front(), ys_.back(), "MonotoneC1Map::inverse");
  // Leftmost preimage: first node value >= y.
  auto it = std::lower_bound(ys_.begin(), ys_.end(), y);
  std::size_t k = it - ys_.begin();
  if (k < ys_.size() && ys_[k] == y) return xs_[k];
  k = k - 1;  // y strictly inside piece k
  double lo = xs_[k], hi = xs_[k + 1];
  const double target = (y - ys_[k]) / (ys_[k + 1] - ys_[k]);
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double u = (mid - xs_[k]) / (xs_[k + 1] - xs_[k]);
    (bump(u) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double MonotoneC1Map::sup_deriv() const {
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k)
    m = std::max(m, 2.0 * (ys_[k + 1] - ys_[k]) / (xs_[k + 1] - xs_[k]));
  return m;
}

namespace {
// Shared body of psi / psi_scaled, working in normalized [0,1] value
// space: sorted unique critical values including both endpoints.
MonotoneC1Map psi_from_values(const std::vector<double>& values) {
  const std::size_t m = values.size() - 1;  // gap count
  std::vector<double> gap(m);
  for (std::size_t k = 0; k < m; ++k) gap[k] = values[k + 1] - values[k];
  std::vector<double> padded = padded_lengths(gap, 2.0);
  // Domain breakpoints after precomposing with x -> 2x.
  std::vector<double> xs(m + 1);
  xs[0] = 0.0;
  for (std::size_t k = 0; k < m; ++k) xs[k + 1] = xs[k] + 0.5 * padded[k];
  xs[m] = 1.0;  // snap the accumulated sum
  return MonotoneC1Map(xs, values);
}

std::vector<double> sorted_unique_with_ends(std::vector<double> s, double lo,
                                            double hi) {
  for (double v : s)
    if (!(v >= lo && v <= hi))
      throw ValidationError("psi: critical value outside the interval");
  s.push_back(lo);
  s.push_back(hi);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end(),
                      [&](double a, double b) {
                        return std::abs(a - b) <= 1e-14 * (1.0 + hi - lo);
                      }),
          s.end());
  return s;
}
}  // namespace

MonotoneC1Map psi(const std::vector<double>& s_values) {
  return psi_from_values(sorted_unique_with_ends(s_values, 0.0, 1.0));
}

MonotoneC1Map psi_scaled(Interval j, const std::vector<double>& s_values) {
  if (!(j.lo < j.hi)) throw ValidationError("psi_scaled: empty interval");
  std::vector<double> normalized;
  normalized.reserve(s_values.size());
  for (double v : s_values) {
    if (!(v >= j.lo && v <= j.hi))
      throw ValidationError("psi_scaled: critical value outside interval");
    normalized.push_back((v - j.lo) / (j.hi - j.lo));
  }
  MonotoneC1Map unit = psi(normalized);
  std::vector<double> xs = unit.node_positions();
  std::vector<double> ys = unit.node_values();
  for (double& x : xs) x = j.lo + (j.hi - j.lo) * x;
  for (double& y : ys) y = j.lo + (j.hi - j.lo) * y;
  xs.front() = j.lo;
  xs.back() = j.hi;
  ys.front() = j.lo;
  ys.back() = j.hi;
  return MonotoneC1Map(std::move(xs), std::move(ys));
}

MonotoneC1Map interpolate_critical(const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
  return MonotoneC1Map(xs, ys);
}

MonotoneC1Map halt_profile(double delta) {
  if (!(delta > 0.0 && delta < 0.5))
    throw ValidationError("halt_profile: delta must be in (0, 1/2)");
  return MonotoneC1Map({0.0, delta, 1.0 - delta, 1.0}, {0.0, 0.0, 1.0, 1.0});
}

PhiMap::PhiMap(double total, std::vector<Interval> fixed,
               const std::vector<double>& critical_values)
    : total_(total), fixed_(std::move(fixed)) {
  if (!(total > 0.0)) throw ValidationError("PhiMap: nonpositive total");
  std::sort(fixed_.begin(), fixed_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& f : fixed_)
    if (f.lo < -1e-12 || f.hi > total + 1e-12 || f.lo > f.hi)
      throw ValidationError("PhiMap: fixed interval outside [0, total]");
  for (std::size_t i = 0; i + 1 < fixed_.size(); ++i)
    if (fixed_[i].hi > fixed_[i + 1].lo)
      throw ValidationError("PhiMap: fixed intervals overlap");

  // Complementary open intervals, with the prescribed interior critical
  // values routed to the gap containing them.
  std::vector<Interval> gaps;
  double cursor = 0.0;
  for (const Interval& f : fixed_) {
    if (f.lo > cursor) gaps.push_back({cursor, f.lo});
    cursor = std::max(cursor, f.hi);
  }
  if (cursor < total) gaps.push_back({cursor, total});

  for (const Interval& g : gaps) {
    std::vector<double> inside;
    for (double v : critical_values)
      if (v > g.lo && v < g.hi) inside.push_back(v);
    gaps_.push_back(psi_scaled(g, inside));
    gap_ranges_.push_back(g);
  }
  for (double v : critical_values) {
    bool covered = false;
    for (const Interval& f : fixed_)
      if (v >= f.lo - 1e-12 && v <= f.hi + 1e-12) covered = true;
    for (const Interval& g : gap_ranges_)
      if (v >= g.lo - 1e-12 && v <= g.hi + 1e-12) covered = true;
    if (!covered) throw ValidationError("PhiMap: critical value outside domain");
  }
}

double PhiMap::eval(double s) const {
  s = domain_clamp(s, 0.0, total_, "PhiMap::eval");
  for (std::size_t k = 0; k < gap_ranges_.size(); ++k)
    if (s >= gap_ranges_[k].lo && s <= gap_ranges_[k].hi)
      return gaps_[k].eval(s);
  return s;  // in the fixed set
}

double PhiMap::deriv(double s) const {
  s = domain_clamp(s, 0.0, total_, "PhiMap::deriv");
  for (std::size_t k = 0; k < gap_ranges_.size(); ++k)
    if (s > gap_ranges_[k].lo && s < gap_ranges_[k].hi)
      return gaps_[k].deriv(s);
  // Interior of the fixed set and gap endpoints. Gap endpoints have a
  // vanishing one-sided derivative from inside and slope-1 from the
  // fixed side; report the fixed side.
  return 1.0;
}

double PhiMap::sup_deriv() const {
  double m = fixed_.empty() ? 0.0 : 1.0;
  for (const auto& g : gaps_) m = std::max(m, g.sup_deriv());
  return m;
}

PhiMap phi(double total, std::vector<Interval> fixed,
           const std::vector<double>& critical_values) {
  return PhiMap(total, std::move(fixed), critical_values);
}

}  // namespace thinloop
