#include "thinloop/signature.hpp"

#include <algorithm>
#include <cmath>

namespace thinloop {

namespace {

std::size_t level_size(int dim, int level) {
  std::size_t s = 1;
  for (int k = 0; k < level; ++k) s *= dim;
  return s;
}

// Signature of a straight segment: level k is disp^{tensor k} / k!.
void sig_of_segment(int dim, int depth, const Vec& disp,
                    std::vector<std::vector<double>>& out) {
  out.assign(depth, {});
  out[0].resize(dim);
  for (int i = 0; i < dim; ++i) out[0][i] = disp[i];
  for (int level = 2; level <= depth; ++level) {
    const auto& prev = out[level - 2];
    auto& cur = out[level - 1];
    cur.assign(level_size(dim, level), 0.0);
    std::size_t idx = 0;
    for (double p : prev)
      for (int i = 0; i < dim; ++i) cur[idx++] = p * disp[i] / level;
  }
}

// Chen concatenation: a <- a * b (a's path first).
void concat_into(int dim, int depth, std::vector<std::vector<double>>& a,
                 const std::vector<std::vector<double>>& b) {
  for (int level = depth; level >= 1; --level) {
    auto& dest = a[level - 1];
    for (int alev = level - 1; alev >= 1; --alev) {
      const int blev = level - alev;
      const auto& av = a[alev - 1];
      const auto& bv = b[blev - 1];
      std::size_t idx = 0;
      for (double x : av)
        for (double y : bv) dest[idx++] += x * y;
    }
    const auto& bv = b[level - 1];
    for (std::size_t i = 0; i < bv.size(); ++i) dest[i] += bv[i];
  }
}

}  // namespace

double SignatureTensor::level_max_abs(int level) const {
  double m = 0.0;
  for (double v : levels[level - 1]) m = std::max(m, std::abs(v));
  return m;
}

double& SignatureTensor::at(int level, const std::vector<int>& index) {
  std::size_t idx = 0;
  for (int i : index) idx = idx * dim + i;
  return levels[level - 1][idx];
}

SignatureTensor signature(const SampledCurve& c, int depth) {
  if (depth < 1 || depth > 5)
    throw ValidationError("signature: depth must be in 1..5");
  SignatureTensor s;
  s.dim = c.dim;
  s.depth = depth;
  s.levels.assign(depth, {});
  for (int level = 1; level <= depth; ++level)
    s.levels[level - 1].assign(level_size(c.dim, level), 0.0);

  std::vector<std::vector<double>> seg;
  bool first = true;
  for (int i = 0; i + 1 < c.sample_count(); ++i) {
    const Vec disp = c.points[i + 1] - c.points[i];
    if (disp.norm() == 0.0) continue;
    sig_of_segment(c.dim, depth, disp, seg);
    if (first) {
      s.levels = seg;
      first = false;
    } else {
      concat_into(c.dim, depth, s.levels, seg);
    }
  }
  return s;
}

double signature_area_2d(const SignatureTensor& s) {
  if (s.dim != 2 || s.depth < 2)
    throw ValidationError("signature_area_2d: need dim 2, depth >= 2");
  const auto& l2 = s.levels[1];
  return 0.5 * (l2[0 * 2 + 1] - l2[1 * 2 + 0]);
}

std::vector<Mat> iterated_integrals_with_forms(
    const SampledCurve& c, const std::vector<ConnectionField>& forms) {
  const int depth = static_cast<int>(forms.size());
  if (depth < 1 || depth > 3)
    throw ValidationError("iterated integrals: depth must be in 1..3");
  const int n = forms.front().group.matrix_dim;
  for (const auto& f : forms)
    if (f.group.matrix_dim != n || f.dim != c.dim)
      throw ValidationError("iterated integrals: mismatched forms");
  const Mat id = Mat::Identity(n, n);

  // j[a][b] (a <= b, 1-based) is the integral with forms a..b, the
  // earliest form outermost among a..b... more precisely form a is
  // applied at the latest time. Segment increments are frozen at the
  // segment midpoint, so a retraced segment cancels exactly.
  Mat j11 = Mat::Zero(n, n), j22 = Mat::Zero(n, n), j33 = Mat::Zero(n, n);
  Mat j12 = Mat::Zero(n, n), j23 = Mat::Zero(n, n), j13 = Mat::Zero(n, n);

  for (int i = 0; i + 1 < c.sample_count(); ++i) {
    const Vec disp = c.points[i + 1] - c.points[i];
    if (disp.norm() == 0.0) continue;
    const Vec mid = 0.5 * (c.points[i] + c.points[i + 1]);
    Mat m1 = forms[0].eval(mid, disp);
    Mat m2 = depth >= 2 ? forms[1].eval(mid, disp) : Mat();
    Mat m3 = depth >= 3 ? forms[2].eval(mid, disp) : Mat();

    // New times are later than everything accumulated, so they occupy
    // the leftmost slots.
    if (depth >= 3) {
      j13 = j13 + m1 * j23 + (m1 * m2 / 2.0) * j33 + m1 * m2 * m3 / 6.0;
      j23 = j23 + m2 * j33 + m2 * m3 / 2.0;
      j33 = j33 + m3;
    }
    if (depth >= 2) {
      j12 = j12 + m1 * j22 + m1 * m2 / 2.0;
      j22 = j22 + m2;
    }
    j11 = j11 + m1;
  }
  std::vector<Mat> out{j11};
  if (depth >= 2) out.push_back(j12);
  if (depth >= 3) out.push_back(j13);
  (void)id;
  return out;
}

}  // namespace thinloop
