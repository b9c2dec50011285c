#include "thinloop/holonomy.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "thinloop/reparam.hpp"

namespace thinloop {

namespace {
const std::complex<double> kI{0.0, 1.0};
}

LieGroupSpec LieGroupSpec::make(GroupName n) {
  LieGroupSpec g;
  g.name = n;
  switch (n) {
    case GroupName::U1: {
      g.matrix_dim = 1;
      Mat b(1, 1);
      b << kI;
      g.algebra_basis = {b};
      break;
    }
    case GroupName::SU2: {
      g.matrix_dim = 2;
      Mat x(2, 2), y(2, 2), z(2, 2);
      x << 0, kI, kI, 0;                       // i sigma_x
      y << 0, 1, -1, 0;                        // i sigma_y
      z << kI, 0, 0, -kI;                      // i sigma_z
      g.algebra_basis = {0.5 * x, 0.5 * y, 0.5 * z};
      break;
    }
    case GroupName::SO3: {
      g.matrix_dim = 3;
      Mat lx = Mat::Zero(3, 3), ly = Mat::Zero(3, 3), lz = Mat::Zero(3, 3);
      lx(1, 2) = -1; lx(2, 1) = 1;
      ly(0, 2) = 1;  ly(2, 0) = -1;
      lz(0, 1) = -1; lz(1, 0) = 1;
      g.algebra_basis = {lx, ly, lz};
      break;
    }
    case GroupName::SL2R: {
      g.matrix_dim = 2;
      Mat h(2, 2), e(2, 2), f(2, 2);
      h << 1, 0, 0, -1;
      e << 0, 1, 0, 0;
      f << 0, 0, 1, 0;
      g.algebra_basis = {h, e, f};
      break;
    }
  }
  return g;
}

LieGroupSpec LieGroupSpec::from_string(const std::string& s) {
  if (s == "U1" || s == "u1") return make(GroupName::U1);
  if (s == "SU2" || s == "su2") return make(GroupName::SU2);
  if (s == "SO3" || s == "so3") return make(GroupName::SO3);
  if (s == "SL2R" || s == "sl2r") return make(GroupName::SL2R);
  throw ValidationError("unknown group '" + s + "' (U1, SU2, SO3, SL2R)");
}

std::string LieGroupSpec::to_string() const {
  switch (name) {
    case GroupName::U1: return "U1";
    case GroupName::SU2: return "SU2";
    case GroupName::SO3: return "SO3";
    case GroupName::SL2R: return "SL2R";
  }
  return "?";
}

Mat LieGroupSpec::identity() const {
  return Mat::Identity(matrix_dim, matrix_dim);
}

Mat LieGroupSpec::exp(const Mat& x) const { return x.exp(); }

Mat LieGroupSpec::project(const Mat& u) const {
  switch (name) {
    case GroupName::U1: {
      const std::complex<double> z = u(0, 0);
      const double a = std::abs(z);
      Mat r(1, 1);
      r << (a > 0 ? z / a : std::complex<double>(1.0));
      return r;
    }
    case GroupName::SU2: {
      Eigen::JacobiSVD<Mat> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Mat p = svd.matrixU() * svd.matrixV().adjoint();
      const std::complex<double> d = p.determinant();
      // d lies on the unit circle; divide out half its phase.
      const double arg = std::arg(d);
      return p * std::exp(-kI * (arg / 2.0));
    }
    case GroupName::SO3: {
      Eigen::MatrixXd ur = u.real();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(
          ur, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::MatrixXd p = svd.matrixU() * svd.matrixV().transpose();
      if (p.determinant() < 0) {
        Eigen::MatrixXd w = svd.matrixU();
        w.col(2) *= -1.0;
        p = w * svd.matrixV().transpose();
      }
      return p.cast<std::complex<double>>();
    }
    case GroupName::SL2R: {
      Eigen::MatrixXd ur = u.real();
      const double det = ur.determinant();
      if (!(det > 0))
        throw Error("SL2R projection: nonpositive determinant");
      return (ur / std::sqrt(det)).cast<std::complex<double>>();
    }
  }
  return u;
}

double LieGroupSpec::group_defect(const Mat& u) const {
  switch (name) {
    case GroupName::U1:
      return std::abs(std::abs(u(0, 0)) - 1.0);
    case GroupName::SU2:
      return (u.adjoint() * u - identity()).norm() +
             std::abs(u.determinant() - 1.0);
    case GroupName::SO3:
      return (u.transpose() * u - identity()).norm() +
             std::abs(u.determinant() - 1.0) + u.imag().norm();
    case GroupName::SL2R:
      return std::abs(u.determinant() - 1.0) + u.imag().norm();
  }
  return 0.0;
}

double LieGroupSpec::algebra_defect(const Mat& x) const {
  switch (name) {
    case GroupName::U1:
      return (x + x.adjoint()).norm();
    case GroupName::SU2:
      return (x + x.adjoint()).norm() + std::abs(x.trace());
    case GroupName::SO3:
      return (x + x.transpose()).norm() + x.imag().norm();
    case GroupName::SL2R:
      return std::abs(x.trace()) + x.imag().norm();
  }
  return 0.0;
}

Mat LieGroupSpec::random_algebra(std::mt19937_64& rng, double scale) const {
  std::uniform_real_distribution<double> uni(-scale, scale);
  Mat x = Mat::Zero(matrix_dim, matrix_dim);
  for (const Mat& b : algebra_basis) x += uni(rng) * b;
  return x;
}

Mat LieGroupSpec::random_element(std::mt19937_64& rng, double scale) const {
  return exp(random_algebra(rng, scale));
}

std::vector<double> LieGroupSpec::algebra_coordinates(const Mat& x) const {
  // Least squares in the real span of the basis.
  const int m = matrix_dim * matrix_dim * 2;
  const int k = static_cast<int>(algebra_basis.size());
  Eigen::MatrixXd a(m, k);
  Eigen::VectorXd b(m);
  for (int j = 0; j < k; ++j) {
    int row = 0;
    for (int r = 0; r < matrix_dim; ++r)
      for (int c = 0; c < matrix_dim; ++c) {
        a(row++, j) = algebra_basis[j](r, c).real();
        a(row++, j) = algebra_basis[j](r, c).imag();
      }
  }
  {
    int row = 0;
    for (int r = 0; r < matrix_dim; ++r)
      for (int c = 0; c < matrix_dim; ++c) {
        b(row++) = x(r, c).real();
        b(row++) = x(r, c).imag();
      }
  }
  Eigen::VectorXd sol = a.colPivHouseholderQr().solve(b);
  std::vector<double> out(k);
  for (int j = 0; j < k; ++j) out[j] = sol(j);
  return out;
}

// ---------------------------------------------------------------------------
// Connection evaluation.

namespace {

double tube_profile(const BasisTerm& t, const Vec& x, const Vec& v,
                    double& direction_dot) {
  if (t.bbox_lo.size() == x.size()) {
    for (int k = 0; k < x.size(); ++k)
      if (x[k] < t.bbox_lo[k] - t.tube_radius ||
          x[k] > t.bbox_hi[k] + t.tube_radius)
        return 0.0;
  }
  // Nearest point on the centerline within the tube radius.
  const auto& pts = t.arc_points;
  const int m = static_cast<int>(pts.size());
  double best = 1e300, best_s = 0.0;
  Vec best_dir;
  double cum = 0.0;
  for (int i = 0; i + 1 < m; ++i) {
    const Vec d = pts[i + 1] - pts[i];
    const double len2 = d.squaredNorm();
    if (len2 <= 0.0) continue;
    const double u = std::clamp((x - pts[i]).dot(d) / len2, 0.0, 1.0);
    const Vec p = pts[i] + u * d;
    const double dist = (x - p).norm();
    if (dist < best) {
      best = dist;
      best_s = cum + u * std::sqrt(len2);
      best_dir = d / std::sqrt(len2);
    }
    cum += std::sqrt(len2);
  }
  const double total = cum;
  if (best > t.tube_radius || total <= 0.0) return 0.0;
  const double lo = t.shrink * total, hi = (1.0 - t.shrink) * total;
  if (best_s <= lo || best_s >= hi) return 0.0;
  // Unit-mass longitudinal profile times a C^1 radial cutoff.
  const double u = (best_s - lo) / (hi - lo);
  const double lambda = bump_deriv(u) / (hi - lo);
  const double q = best / t.tube_radius;
  const double cutoff = (1.0 - q * q) * (1.0 - q * q);
  direction_dot = best_dir.dot(v);
  return lambda * cutoff;
}

}  // namespace

Mat ConnectionField::eval(const Vec& x, const Vec& velocity) const {
  Mat out = Mat::Zero(group.matrix_dim, group.matrix_dim);
  for (const ConnectionTerm& term : terms) {
    double scalar = 0.0;
    switch (term.basis.kind) {
      case BasisTerm::Kind::Monomial: {
        double p = 1.0;
        for (int k = 0; k < dim; ++k)
          for (int e = 0; e < term.basis.exponents[k]; ++e) p *= x[k];
        scalar = p * velocity[term.mu];
        break;
      }
      case BasisTerm::Kind::Sinusoid: {
        double arg = term.basis.phase;
        for (int k = 0; k < dim; ++k) arg += term.basis.freq[k] * x[k];
        scalar = std::sin(arg) * velocity[term.mu];
        break;
      }
      case BasisTerm::Kind::Tube: {
        double ddot = 0.0;
        const double w = tube_profile(term.basis, x, velocity, ddot);
        scalar = w * ddot;
        break;
      }
    }
    if (scalar == 0.0) continue;
    for (std::size_t b = 0; b < group.algebra_basis.size(); ++b)
      if (term.algebra_coeffs[b] != 0.0)
        out += (scalar * term.algebra_coeffs[b]) * group.algebra_basis[b];
  }
  return out;
}

ConnectionField random_connection(const LieGroupSpec& group, int dim,
                                  std::uint64_t seed,
                                  const RandomConnectionOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(-M_PI, M_PI);
  ConnectionField conn;
  conn.group = group;
  conn.dim = dim;
  conn.seed = seed;

  std::vector<std::vector<int>> exps;
  exps.push_back(std::vector<int>(dim, 0));
  if (opts.degree >= 1)
    for (int i = 0; i < dim; ++i) {
      std::vector<int> e(dim, 0);
      e[i] = 1;
      exps.push_back(e);
    }
  if (opts.degree >= 2)
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        std::vector<int> e(dim, 0);
        e[i] += 1;
        e[j] += 1;
        exps.push_back(e);
      }

  const int nb = static_cast<int>(group.algebra_basis.size());
  for (int mu = 0; mu < dim; ++mu) {
    for (const auto& e : exps) {
      ConnectionTerm t;
      t.mu = mu;
      t.basis.kind = BasisTerm::Kind::Monomial;
      t.basis.exponents = e;
      for (int b = 0; b < nb; ++b)
        t.algebra_coeffs.push_back(opts.coeff_scale * uni(rng));
      conn.terms.push_back(std::move(t));
    }
    if (opts.sinusoids) {
      ConnectionTerm t;
      t.mu = mu;
      t.basis.kind = BasisTerm::Kind::Sinusoid;
      for (int k = 0; k < dim; ++k) t.basis.freq.push_back(freq(rng));
      t.basis.phase = freq(rng);
      for (int b = 0; b < nb; ++b)
        t.algebra_coeffs.push_back(opts.coeff_scale * uni(rng));
      conn.terms.push_back(std::move(t));
    }
  }
  return conn;
}

// ---------------------------------------------------------------------------
// Transport.

namespace {

struct Segment {
  Vec x0, dx;
  double len;
};

std::vector<Segment> polyline_segments(const SampledCurve& c) {
  std::vector<Segment> segs;
  for (int i = 0; i + 1 < c.sample_count(); ++i) {
    const Vec dx = c.points[i + 1] - c.points[i];
    const double len = dx.norm();
    if (len > 0.0) segs.push_back({c.points[i], dx, len});
  }
  return segs;
}

Mat integrate(const std::vector<Segment>& segs, const ConnectionField& conn,
              int steps, int multiplier, int& substeps_done) {
  double total = 0.0;
  for (const Segment& s : segs) total += s.len;
  Mat u = conn.group.identity();
  substeps_done = 0;
  for (const Segment& s : segs) {
    const int base =
        std::max(1, static_cast<int>(std::lround(steps * s.len / total)));
    const int n = base * multiplier;
    const double h = 1.0 / n;
    for (int k = 0; k < n; ++k) {
      const double t0 = k * h;
      const Mat f0 = conn.eval(s.x0 + t0 * s.dx, s.dx);
      const Mat fm = conn.eval(s.x0 + (t0 + 0.5 * h) * s.dx, s.dx);
      const Mat f1 = conn.eval(s.x0 + (t0 + h) * s.dx, s.dx);
      const Mat k1 = f0 * u;
      const Mat k2 = fm * (u + 0.5 * h * k1);
      const Mat k3 = fm * (u + 0.5 * h * k2);
      const Mat k4 = f1 * (u + h * k3);
      u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      u = conn.group.project(u);
      ++substeps_done;
    }
  }
  if (!u.allFinite()) throw Error("transport: non-finite result");
  return u;
}

}  // namespace

Mat transport_at(const SampledCurve& curve, const ConnectionField& conn,
                 int steps, int multiplier) {
  const auto segs = polyline_segments(curve);
  if (segs.empty()) return conn.group.identity();
  int done = 0;
  return integrate(segs, conn, steps, multiplier, done);
}

HolonomyResult transport(const SampledCurve& curve, const ConnectionField& conn,
                         int steps) {
  if (steps < 64) throw ValidationError("transport: steps must be >= 64");
  const auto segs = polyline_segments(curve);
  HolonomyResult out;
  if (segs.empty()) {
    out.transport = conn.group.identity();
    return out;
  }
  int n1 = 0, n2 = 0;
  const Mat coarse = integrate(segs, conn, steps, 1, n1);
  Mat fine = integrate(segs, conn, steps, 2, n2);
  out.richardson_error = (fine - coarse).norm() / 15.0;
  out.transport = conn.group.project(fine);
  out.total_substeps = n2;
  out.group_defect = conn.group.group_defect(out.transport);
  return out;
}

TrivialityReport holonomy_trivial(const SampledCurve& loop,
                                  const LieGroupSpec& group, int n_connections,
                                  std::uint64_t seed, double tol, int steps) {
  if (!loop.loop) throw ValidationError("holonomy_trivial: not a loop");
  TrivialityReport rep;
  rep.connections = n_connections;
  for (int k = 0; k < n_connections; ++k) {
    const ConnectionField conn =
        random_connection(group, loop.dim, seed + static_cast<std::uint64_t>(k));
    const HolonomyResult h = transport(loop, conn, steps);
    const double dev = (h.transport - group.identity()).norm();
    if (dev > rep.worst_deviation) {
      rep.worst_deviation = dev;
      rep.worst_index = k;
    }
  }
  rep.trivial = rep.worst_deviation <= tol;
  return rep;
}

Mat word_map_eval(const Word& w, const std::vector<Mat>& assignment,
                  const LieGroupSpec& group) {
  Mat u = group.identity();
  for (const Letter& l : w.letters) {
    if (l.arc < 0 || l.arc >= static_cast<std::int32_t>(assignment.size()))
      throw ValidationError("word_map_eval: unassigned letter");
    const Mat& g = assignment[l.arc];
    // Later letters multiply on the left: the holonomy convention.
    u = (l.sign > 0 ? g : Mat(g.inverse())) * u;
  }
  return u;
}

ConnectionField distinguishing_connection(const SampledCurve& curve,
                                          const ArcDecomposition& decomp,
                                          const LieGroupSpec& group,
                                          const std::vector<Mat>& xi,
                                          double shrink) {
  if (xi.size() != decomp.arcs.size())
    throw ValidationError(
        "distinguishing_connection: one algebra element per arc required");

  // Tube radius: a third of the closest approach between any arc's
  // supported middle section and any other arc.
  auto middle = [&](const Arc& arc) {
    std::vector<Vec> pts;
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i + 1 < arc.points.size(); ++i)
      cum.push_back(cum.back() + (arc.points[i + 1] - arc.points[i]).norm());
    const double lo = shrink * cum.back(), hi = (1.0 - shrink) * cum.back();
    for (std::size_t i = 0; i < arc.points.size(); ++i)
      if (cum[i] >= lo && cum[i] <= hi) pts.push_back(arc.points[i]);
    return pts;
  };

  double min_dist = 1e300;
  for (std::size_t a = 0; a < decomp.arcs.size(); ++a) {
    const auto mid = middle(decomp.arcs[a]);
    for (std::size_t b = 0; b < decomp.arcs.size(); ++b) {
      if (a == b) continue;
      for (const Vec& p : mid)
        for (const Vec& q : decomp.arcs[b].points)
          min_dist = std::min(min_dist, (p - q).norm());
    }
    // Self-approach at a genuine arclength separation bounds the usable
    // tube radius as well (the reach of the centerline).
    const auto& pts = decomp.arcs[a].points;
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      cum.push_back(cum.back() + (pts[i + 1] - pts[i]).norm());
    const double gap = 0.15 * cum.back();
    for (std::size_t i = 0; i < pts.size(); i += 2)
      for (std::size_t j = i + 1; j < pts.size(); j += 2)
        if (cum[j] - cum[i] >= gap)
          min_dist = std::min(min_dist, (pts[i] - pts[j]).norm());
  }
  if (!(min_dist > 0.0) || !(min_dist < 1e300))
    throw ResolutionError(
        "distinguishing_connection: arcs leave no room for disjoint tubes");

  ConnectionField conn;
  conn.group = group;
  conn.dim = curve.dim;
  for (std::size_t a = 0; a < decomp.arcs.size(); ++a) {
    ConnectionTerm t;
    t.mu = -1;
    t.basis.kind = BasisTerm::Kind::Tube;
    t.basis.arc_points = decomp.arcs[a].points;
    t.basis.tube_radius = min_dist / 3.0;
    t.basis.shrink = shrink;
    t.basis.bbox_lo = t.basis.arc_points.front();
    t.basis.bbox_hi = t.basis.arc_points.front();
    for (const Vec& p : t.basis.arc_points) {
      t.basis.bbox_lo = t.basis.bbox_lo.cwiseMin(p);
      t.basis.bbox_hi = t.basis.bbox_hi.cwiseMax(p);
    }
    t.algebra_coeffs = group.algebra_coordinates(xi[a]);
    conn.terms.push_back(std::move(t));
  }
  return conn;
}

}  // namespace thinloop
