#ifndef THINLOOP_SRC_SPATIAL_HASH_HPP
#define THINLOOP_SRC_SPATIAL_HASH_HPP

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "thinloop/types.hpp"

namespace thinloop::detail {

// Uniform-grid hash over points in R^d with cell size = query radius.
// Candidate gathering scans the 3^d neighbor cells, so a distance
// filter on the candidates reproduces the brute-force result exactly
// (hash collisions only ever add candidates).
class SpatialHash {
 public:
  SpatialHash(const std::vector<Vec>& pts, double cell)
      : pts_(&pts), cell_(cell), dim_(pts.empty() ? 0 : static_cast<int>(pts.front().size())) {
    qcoords_.resize(pts.size() * dim_);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (int k = 0; k < dim_; ++k)
        qcoords_[i * dim_ + k] =
            static_cast<std::int64_t>(std::floor(pts[i][k] / cell_));
      buckets_[key(&qcoords_[i * dim_])].push_back(static_cast<std::int32_t>(i));
    }
  }

  // Calls f(j) for every stored index whose cell is within one cell of
  // p's cell in every coordinate. May repeat an index if distinct cells
  // collide under the hash; callers dedupe or tolerate repeats.
  template <class F>
  void for_candidates(const Vec& p, F&& f) const {
    std::vector<std::int64_t> base(dim_), probe(dim_);
    for (int k = 0; k < dim_; ++k)
      base[k] = static_cast<std::int64_t>(std::floor(p[k] / cell_));
    std::vector<int> offset(dim_, -1);
    while (true) {
      for (int k = 0; k < dim_; ++k) probe[k] = base[k] + offset[k];
      auto it = buckets_.find(key(probe.data()));
      if (it != buckets_.end())
        for (std::int32_t j : it->second) f(j);
      int k = 0;
      while (k < dim_ && offset[k] == 1) offset[k++] = -1;
      if (k == dim_) break;
      ++offset[k];
    }
  }

  double min_dist_within(const Vec& p, double cap) const {
    double best = cap;
    for_candidates(p, [&](std::int32_t j) {
      best = std::min(best, ((*pts_)[j] - p).norm());
    });
    return best;
  }

 private:
  std::uint64_t key(const std::int64_t* q) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int k = 0; k < dim_; ++k) {
      std::uint64_t v = static_cast<std::uint64_t>(q[k]);
      v *= 0xbf58476d1ce4e5b9ull;
      v ^= v >> 31;
      h = h * 0x94d049bb133111ebull + v;
    }
    return h;
  }

  const std::vector<Vec>* pts_;
  double cell_;
  int dim_;
  std::vector<std::int64_t> qcoords_;
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> buckets_;
};

}  // namespace thinloop::detail

#endif
