#ifndef THINLOOP_SIGNATURE_HPP
#define THINLOOP_SIGNATURE_HPP

#include <vector>

#include "thinloop/curve.hpp"
#include "thinloop/holonomy.hpp"
#include "thinloop/types.hpp"

namespace thinloop {

// Truncated path signature: levels[k-1] holds the d^k iterated
// integrals of level k, indices row-major with the earliest integration
// variable leading.
struct SignatureTensor {
  int dim = 0;
  int depth = 0;
  std::vector<std::vector<double>> levels;

  double level_max_abs(int level) const;  // 1-based
  double& at(int level, const std::vector<int>& index);
};

// Exact polyline signature: per segment the tensor exponential of the
// displacement, segments combined by the Chen concatenation product.
SignatureTensor signature(const SampledCurve& c, int depth);

// Antisymmetric part of level 2 for planar curves: the signed enclosed
// area of a loop.
double signature_area_2d(const SignatureTensor& s);

// Matrix-valued iterated integrals against 1-forms from the connection
// family: value k is the k-fold integral of forms[0] ... forms[k-1]
// with the latest time outermost (leftmost). Depth at most 3.
std::vector<Mat> iterated_integrals_with_forms(
    const SampledCurve& c, const std::vector<ConnectionField>& forms);

}  // namespace thinloop

#endif
