#ifndef THINLOOP_TYPES_HPP
#define THINLOOP_TYPES_HPP

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace thinloop {

using Vec = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The input defeats the configured geometric resolution (ambiguous
// multiplicity, arcs at sub-eps separation, inconsistent occurrence
// images). Deliberately distinct from ValidationError: callers should
// report "undecided" rather than a wrong answer.
class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& what) : Error(what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// Closed parameter interval.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Inclusive range of sample indices.
struct IndexRange {
  std::int32_t lo = 0;
  std::int32_t hi = 0;
  std::int32_t count() const { return hi - lo + 1; }
};

}  // namespace thinloop

#endif
