#ifndef THINLOOP_TESTS_SUPPORT_HPP
#define THINLOOP_TESTS_SUPPORT_HPP

// Independent oracles and generators used by the unit and acceptance
// suites. Everything here is deliberately written the slow, obvious way
// and must stay independent of the library implementation paths it
// checks.

#include <cmath>
#include <random>
#include <vector>

#include "thinloop/curve.hpp"
#include "thinloop/types.hpp"
#include "thinloop/word.hpp"

namespace testsupport {

using thinloop::Letter;
using thinloop::Vec;
using thinloop::Word;

// Free reduction by exhaustive rewriting: delete the first adjacent
// inverse pair, repeat to a fixpoint.
inline Word brute_reduce(const Word& w) {
  std::vector<Letter> ls = w.letters;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
      if (thinloop::are_inverse(ls[i], ls[i + 1])) {
        ls.erase(ls.begin() + i, ls.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  return Word(std::move(ls));
}

// In-place variant on small fixed buffers for the exhaustive sweeps.
// Returns the reduced length; buf is clobbered.
inline int brute_reduce_fast(Letter* buf, int len) {
  int pos = 0;
  while (pos >= 0) {
    int hit = -1;
    for (int i = std::max(0, pos - 1); i + 1 < len; ++i)
      if (thinloop::are_inverse(buf[i], buf[i + 1])) {
        hit = i;
        break;
      }
    if (hit < 0) break;
    for (int i = hit; i + 2 < len; ++i) buf[i] = buf[i + 2];
    len -= 2;
    pos = hit;
  }
  return len;
}

inline Word word_from(const std::string& text) {
  std::vector<std::string> names = thinloop::default_names(26);
  return thinloop::parse_word(text, names);
}

inline Word random_word(std::mt19937_64& rng, int len, int alphabet) {
  std::uniform_int_distribution<int> arc(0, alphabet - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  Word w;
  for (int i = 0; i < len; ++i)
    w.letters.push_back({arc(rng), sgn(rng) ? +1 : -1});
  return w;
}

// Uniformly-ish random whisker built by the grammar W -> eps | x W x' W.
inline void random_whisker_into(std::mt19937_64& rng, int pairs, int alphabet,
                                Word& w) {
  if (pairs == 0) return;
  std::uniform_int_distribution<int> arc(0, alphabet - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::uniform_int_distribution<int> split(0, pairs - 1);
  const int inside = split(rng);
  const Letter x{arc(rng), sgn(rng) ? +1 : -1};
  w.letters.push_back(x);
  random_whisker_into(rng, inside, alphabet, w);
  w.letters.push_back(thinloop::inverse_of(x));
  random_whisker_into(rng, pairs - 1 - inside, alphabet, w);
}

inline Word random_whisker(std::mt19937_64& rng, int pairs, int alphabet) {
  Word w;
  random_whisker_into(rng, pairs, alphabet, w);
  return w;
}

// All-pairs self-overlap, the oracle for the spatial-hash version.
inline thinloop::OverlapIndex brute_overlap_index(
    const thinloop::SampledCurve& c, double eps) {
  const int n = c.sample_count();
  thinloop::OverlapIndex out;
  out.clusters.resize(n);
  out.multiplicity.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::int32_t> near;
    for (int j = 0; j < n; ++j)
      if ((c.points[j] - c.points[i]).norm() <= eps) near.push_back(j);
    for (std::size_t k = 0; k < near.size();) {
      std::size_t m = k;
      while (m + 1 < near.size() && near[m + 1] == near[m] + 1) ++m;
      out.clusters[i].push_back({near[k], near[m]});
      k = m + 1;
    }
    out.multiplicity[i] = static_cast<int>(out.clusters[i].size());
  }
  return out;
}

inline Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

// Dense polyline for a circular arc, angles in radians.
inline std::vector<Vec> circle_polyline(Vec center, double radius, double a0,
                                        double a1, int n) {
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double a = a0 + (a1 - a0) * i / (n - 1);
    pts.push_back(testsupport::vec2(center[0] + radius * std::cos(a),
                                    center[1] + radius * std::sin(a)));
  }
  return pts;
}

inline std::vector<Vec> segment_polyline(Vec a, Vec b, int n) {
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i)
    pts.push_back(a + (b - a) * (static_cast<double>(i) / (n - 1)));
  return pts;
}

// Closed petal through the origin: r = sin(2 (theta - theta0)) traced for
// theta in [theta0, theta0 + pi/2]. Leaves the origin along theta0 and
// returns along theta0 + pi/2, so two petals a quarter-turn apart meet
// only at the origin and transversally (or along opposite rays).
inline std::vector<Vec> petal_polyline(double theta0, double scale, int n) {
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    const double th = theta0 + u * M_PI_2;
    const double r = scale * std::sin(2.0 * (th - theta0));
    pts.push_back(vec2(r * std::cos(th), r * std::sin(th)));
  }
  pts.front() = vec2(0, 0);
  pts.back() = vec2(0, 0);
  return pts;
}

}  // namespace testsupport

#endif
