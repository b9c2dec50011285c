#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "thinloop/signature.hpp"

using namespace thinloop;
using testsupport::segment_polyline;
using testsupport::vec2;

TEST_CASE("signature of a straight segment is the tensor exponential") {
  std::vector<Vec> pts;
  for (int i = 0; i <= 64; ++i)
    pts.push_back(vec2(0.4 * i / 64.0, -0.9 * i / 64.0));
  const auto seg = SampledCurve::from_points(std::move(pts));
  const auto s = signature(seg, 4);
  const double v[2] = {0.4, -0.9};
  // Level 1 is the displacement exactly.
  CHECK(s.levels[0][0] == doctest::Approx(v[0]).epsilon(1e-13));
  CHECK(s.levels[0][1] == doctest::Approx(v[1]).epsilon(1e-13));
  // Level k entry (i1..ik) = prod v_i / k!.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(s.levels[1][i * 2 + j] ==
            doctest::Approx(v[i] * v[j] / 2.0).epsilon(1e-12));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        CHECK(s.levels[2][(i * 2 + j) * 2 + k] ==
              doctest::Approx(v[i] * v[j] * v[k] / 6.0).epsilon(1e-12));
}

TEST_CASE("level one telescopes to the total displacement") {
  std::mt19937_64 rng(73);
  std::normal_distribution<double> step(0.0, 0.1);
  std::vector<Vec> pts{vec2(0, 0)};
  for (int i = 0; i < 500; ++i)
    pts.push_back(pts.back() + vec2(step(rng), step(rng)));
  const Vec disp = pts.back() - pts.front();
  const auto c = SampledCurve::from_points(std::move(pts));
  const auto s = signature(c, 3);
  CHECK(std::abs(s.levels[0][0] - disp[0]) < 1e-12);
  CHECK(std::abs(s.levels[0][1] - disp[1]) < 1e-12);
}

TEST_CASE("whisker loops have vanishing signature") {
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(1, 0.2), 2048)});
  spec.arcs.push_back(
      {"b", testsupport::circle_polyline(vec2(1.4, 0.2), 0.4, M_PI, -M_PI_2, 2048)});
  spec.traversal = {{"a", +1}, {"b", +1}, {"b", -1}, {"a", -1}};
  const auto r = synth_curve(spec);
  const auto s = signature(r.curve, 4);
  for (int level = 1; level <= 4; ++level)
    CHECK(s.level_max_abs(level) <= 1e-10);
}

TEST_CASE("unit square area via the level-2 antisymmetric part") {
  std::vector<Vec> pts;
  const int n = 256;
  for (int i = 0; i < n; ++i) pts.push_back(vec2(i / (n - 1.0), 0.0));
  for (int i = 1; i < n; ++i) pts.push_back(vec2(1.0, i / (n - 1.0)));
  for (int i = 1; i < n; ++i) pts.push_back(vec2(1.0 - i / (n - 1.0), 1.0));
  for (int i = 1; i < n; ++i) pts.push_back(vec2(0.0, 1.0 - i / (n - 1.0)));
  const auto square = SampledCurve::from_points(std::move(pts), {}, true);
  const auto s = signature(square, 2);
  CHECK(std::abs(signature_area_2d(s) - 1.0) <= 1e-9);
}

TEST_CASE("iterated integrals with forms") {
  const auto u1 = LieGroupSpec::make(GroupName::U1);

  // Constant form around any loop vanishes by telescoping.
  CurveSpec spec;
  spec.dim = 2;
  spec.arcs.push_back({"a", testsupport::petal_polyline(0.0, 1.0, 2048)});
  spec.traversal = {{"a", +1}};
  const auto loop = synth_curve(spec);
  REQUIRE(loop.curve.loop);
  ConnectionField constant;
  constant.group = u1;
  constant.dim = 2;
  {
    ConnectionTerm t;
    t.mu = 0;
    t.basis.kind = BasisTerm::Kind::Monomial;
    t.basis.exponents = {0, 0};
    t.algebra_coeffs = {1.0};
    constant.terms.push_back(t);
  }
  const auto vals = iterated_integrals_with_forms(loop.curve, {constant});
  CHECK(vals[0].norm() <= 1e-12);

  // Depth 1 agrees with an independent trapezoid line integral.
  const auto form = random_connection(u1, 2, 17);
  const auto v1 = iterated_integrals_with_forms(loop.curve, {form});
  std::complex<double> trap = 0.0;
  const auto& c = loop.curve;
  for (int i = 0; i + 1 < c.sample_count(); ++i) {
    const double dt = c.params[i + 1] - c.params[i];
    trap += 0.5 * dt *
            (form.eval(c.points[i], c.tangents[i])(0, 0) +
             form.eval(c.points[i + 1], c.tangents[i + 1])(0, 0));
  }
  CHECK(std::abs(v1[0](0, 0) - trap) < 2e-4 * (1.0 + std::abs(trap)));

  // Tree-like loops kill all depths (matrix-valued too).
  CurveSpec wspec;
  wspec.dim = 2;
  wspec.arcs.push_back({"a", segment_polyline(vec2(0, 0), vec2(0.8, 0.5), 2048)});
  wspec.traversal = {{"a", +1}, {"a", -1}};
  const auto whisker = synth_curve(wspec);
  const auto su2 = LieGroupSpec::make(GroupName::SU2);
  const std::vector<ConnectionField> forms{random_connection(su2, 2, 5),
                                           random_connection(su2, 2, 6),
                                           random_connection(su2, 2, 7)};
  const auto vals3 = iterated_integrals_with_forms(whisker.curve, forms);
  REQUIRE(vals3.size() == 3);
  for (const Mat& m : vals3) CHECK(m.norm() <= 1e-6);
}
