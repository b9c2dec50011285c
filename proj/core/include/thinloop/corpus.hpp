#ifndef THINLOOP_CORPUS_HPP
#define THINLOOP_CORPUS_HPP

#include <string>
#include <vector>

#include "thinloop/curve.hpp"

namespace thinloop {

// Arc geometry builders for synthesized curves.
std::vector<Vec> segment_arc(const Vec& a, const Vec& b, int n = 2048);
std::vector<Vec> circle_arc(const Vec& center, double radius, double a0,
                            double a1, int n = 2048);
// Closed petal through the origin along direction theta0 (returns along
// theta0 + pi/2); two petals a quarter-turn apart meet only there.
std::vector<Vec> petal_arc(double theta0, double scale, int n = 2048);
// Smooth planar S-curve from a to b.
std::vector<Vec> s_curve_arc(const Vec& a, const Vec& b, double sway,
                             int n = 2048);
// Helical arc in R^3.
std::vector<Vec> helix_arc(double radius, double pitch, double turns,
                           int n = 2048);

struct CorpusEntry {
  std::string name;
  CurveSpec spec;
  std::string word;  // ground truth, token syntax over the spec arc ids
  bool loop = false;
  bool whisker = false;  // reduced word is empty
};

// The bundled corpus: whisker loops, non-whisker loops and open curves
// at desk scale. Deterministic.
const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);

}  // namespace thinloop

#endif
