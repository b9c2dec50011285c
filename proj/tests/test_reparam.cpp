#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "thinloop/reparam.hpp"

using namespace thinloop;

namespace {

// Recovers the critical values of a map by scanning its derivative on a
// grid and clustering the values where it (nearly) vanishes.
std::vector<double> grid_critical_values(const MonotoneC1Map& m, int grid,
                                         double deriv_tol, double cluster_tol) {
  const auto dom = m.domain();
  std::vector<double> vals;
  for (int i = 0; i <= grid; ++i) {
    const double x = dom.lo + (dom.hi - dom.lo) * i / grid;
    if (std::abs(m.deriv(x)) < deriv_tol) vals.push_back(m.eval(x));
  }
  std::sort(vals.begin(), vals.end());
  std::vector<double> reps;
  for (std::size_t i = 0; i < vals.size();) {
    std::size_t j = i;
    while (j + 1 < vals.size() && vals[j + 1] - vals[j] <= cluster_tol) ++j;
    reps.push_back(0.5 * (vals[i] + vals[j]));
    i = j + 1;
  }
  return reps;
}

double deriv_modulus(const MonotoneC1Map& m, double h, int grid) {
  const auto dom = m.domain();
  double worst = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double x = dom.lo + (dom.hi - dom.lo - h) * i / grid;
    worst = std::max(worst, std::abs(m.deriv(x + h) - m.deriv(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("bump profile endpoints and slope") {
  CHECK(bump(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(bump(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bump_deriv(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bump_deriv(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bump_deriv(0.5) == doctest::Approx(2.0));
  double prev = -1e-18;
  for (int i = 0; i <= 10000; ++i) {
    const double v = bump(i / 10000.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("padded lengths") {
  CHECK(padded_lengths({1.0}, 2.0) == std::vector<double>{2.0});

  const auto two = padded_lengths({0.5, 0.5}, 2.0);
  CHECK(two[0] == doctest::Approx(0.5 + 2.0 / 3.0).epsilon(1e-14));
  CHECK(two[1] == doctest::Approx(0.5 + 1.0 / 3.0).epsilon(1e-14));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> len(0.01, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> ls;
    double sum = 0.0;
    for (int i = 0; i < 1 + trial % 12; ++i) {
      ls.push_back(len(rng));
      sum += ls.back();
    }
    const double target = 2.0 * sum;
    const auto padded = padded_lengths(ls, target);
    double padded_sum = 0.0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      CHECK(padded[i] >= ls[i]);
      padded_sum += padded[i];
    }
    CHECK(padded_sum == doctest::Approx(target).epsilon(1e-12));
  }
  CHECK_THROWS_AS(padded_lengths({}, 2.0), ValidationError);
  CHECK_THROWS_AS(padded_lengths({1.0, 1.0}, 1.0), ValidationError);
}

TEST_CASE("psi with no interior critical values") {
  const auto m = psi({});
  CHECK(m.eval(0.0) == 0.0);
  CHECK(m.eval(1.0) == 1.0);
  const auto crit = grid_critical_values(m, 100000, 1e-3, 1e-4);
  REQUIRE(crit.size() == 2);
  CHECK(std::abs(crit[0] - 0.0) <= 1e-4);
  CHECK(std::abs(crit[1] - 1.0) <= 1e-4);
  CHECK(m.sup_deriv() <= 4.0 + 1e-12);
}

TEST_CASE("psi with S = {1/2}") {
  const auto m = psi({0.5});
  // The interior critical point maps to 1/2.
  bool found = false;
  for (int i = 0; i <= 100000; ++i) {
    const double x = i / 100000.0;
    if (x > 1e-3 && x < 1.0 - 1e-3 && std::abs(m.deriv(x)) < 1e-6) {
      CHECK(m.eval(x) == doctest::Approx(0.5).epsilon(1e-9));
      found = true;
    }
  }
  CHECK(found);
  const auto crit = grid_critical_values(m, 100000, 1e-3, 1e-4);
  REQUIRE(crit.size() == 3);
  CHECK(crit[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("psi critical-value recovery for random finite sets") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> uni(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s;
    const int count = trial % 9;
    while (static_cast<int>(s.size()) < count) {
      const double v = uni(rng);
      bool ok = true;
      for (double u : s)
        if (std::abs(u - v) < 0.03) ok = false;
      if (ok) s.push_back(v);
    }
    const auto m = psi(s);
    CHECK(m.eval(0.0) == 0.0);
    CHECK(m.eval(1.0) == 1.0);
    CHECK(m.sup_deriv() <= 4.0 + 1e-12);

    std::vector<double> expected = s;
    expected.push_back(0.0);
    expected.push_back(1.0);
    std::sort(expected.begin(), expected.end());
    const auto crit = grid_critical_values(m, 100000, 1e-3, 1e-4);
    REQUIRE(crit.size() == expected.size());
    for (std::size_t i = 0; i < crit.size(); ++i)
      CHECK(std::abs(crit[i] - expected[i]) <= 1e-4);

    // Two-resolution derivative continuity.
    const double m1 = deriv_modulus(m, 1e-4, 20000);
    const double m2 = deriv_modulus(m, 5e-5, 20000);
    CHECK(m2 <= 0.75 * m1 + 1e-9);

    // Monotone on a grid.
    double prev = -1e-18;
    for (int i = 0; i <= 10000; ++i) {
      const double v = m.eval(i / 10000.0);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("psi_scaled is an affine conjugate") {
  const Interval j{2.0, 5.0};
  const auto m = psi_scaled(j, {2.75, 4.0});
  CHECK(m.eval(2.0) == 2.0);
  CHECK(m.eval(5.0) == 5.0);
  CHECK(m.sup_deriv() <= 4.0 + 1e-12);
  const auto crit = grid_critical_values(m, 100000, 1e-3, 3e-4);
  REQUIRE(crit.size() == 4);
  CHECK(std::abs(crit[1] - 2.75) <= 3e-4);
  CHECK(std::abs(crit[2] - 4.0) <= 3e-4);
  CHECK_THROWS_AS(psi_scaled(j, {1.0}), ValidationError);
}

TEST_CASE("monotone map inverse") {
  const auto m = psi({0.3, 0.7});
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double y = uni(rng);
    const double x = m.inverse(y);
    CHECK(m.eval(x) == doctest::Approx(y).epsilon(1e-10));
  }
}

TEST_CASE("halt profile has exact plateaus") {
  const auto h = halt_profile(0.125);
  CHECK(h.eval(0.0) == 0.0);
  CHECK(h.eval(0.1) == 0.0);
  CHECK(h.eval(0.125) == 0.0);
  CHECK(h.eval(0.9) == 1.0);
  CHECK(h.eval(1.0) == 1.0);
  CHECK(h.deriv(0.05) == 0.0);
  CHECK(h.deriv(0.95) == 0.0);
  CHECK(h.eval(0.5) == doctest::Approx(0.5));
}

TEST_CASE("phi fixes the critical set and is A-Lipschitz") {
  const double total = 10.0;
  const std::vector<Interval> fixed{{0.0, 1.0}, {4.0, 4.5}, {9.0, 10.0}};
  const auto f = phi(total, fixed, {2.0, 6.0, 7.5});

  for (double s : {0.0, 0.5, 1.0, 4.0, 4.2, 4.5, 9.0, 9.9, 10.0})
    CHECK(f.eval(s) == s);

  // Monotone and Lipschitz with the certified constant.
  const double a = 4.0;
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> uni(0.0, total);
  for (int trial = 0; trial < 10000; ++trial) {
    double s1 = uni(rng), s2 = uni(rng);
    if (s1 > s2) std::swap(s1, s2);
    const double d = f.eval(s2) - f.eval(s1);
    CHECK(d >= -1e-12);
    CHECK(d <= a * (s2 - s1) + 1e-12);
  }

  // Branch values become critical values of the gap maps.
  CHECK(std::abs(f.deriv(f.gap_maps()[0].inverse(2.0))) < 1e-12);

  // Degenerate cases.
  const auto ident = phi(1.0, {{0.0, 1.0}}, {});
  CHECK(ident.eval(0.37) == 0.37);
  const auto pure = phi(1.0, {}, {});
  CHECK(pure.eval(0.0) == 0.0);
  CHECK(pure.eval(1.0) == 1.0);
}

TEST_CASE("interpolate_critical pins nodes with zero derivative") {
  const auto m = interpolate_critical({0.0, 1.0, 3.0}, {0.0, 0.5, 2.0});
  CHECK(m.eval(0.0) == 0.0);
  CHECK(m.eval(1.0) == 0.5);
  CHECK(m.eval(3.0) == 2.0);
  CHECK(m.deriv(1.0) == doctest::Approx(0.0).epsilon(1e-12));
}
