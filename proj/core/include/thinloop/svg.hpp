#ifndef THINLOOP_SVG_HPP
#define THINLOOP_SVG_HPP

#include <string>
#include <vector>

#include "thinloop/curve.hpp"
#include "thinloop/homotopy.hpp"
#include "thinloop/tree.hpp"

namespace thinloop {

// Semi-annulus picture of a factorization: the word's intervals on the
// axis, one shaded annular band per letter pair, and the dual tree drawn
// to the right.
std::string semi_annulus_svg(const FactorTree& tree,
                             const ArcDecomposition& decomp,
                             const std::vector<std::string>& edge_names);

// Plain curve drawing (first two coordinates).
std::string curve_svg(const SampledCurve& curve);

// Homotopy snapshots: all rows overlaid with fading strokes, source and
// target emphasized.
std::string homotopy_svg(const HomotopyGrid& grid, int stride = 16);

}  // namespace thinloop

#endif
