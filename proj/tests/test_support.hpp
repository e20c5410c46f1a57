#ifndef PERFSIM_TEST_SUPPORT_HPP
#define PERFSIM_TEST_SUPPORT_HPP

// Test-only oracles, kept independent of the library's implementation paths.

#include <cmath>
#include <cstddef>
#include <vector>

#include "perfsim/geometry.hpp"
#include "perfsim/rng.hpp"

namespace perfsim::testing {

inline std::size_t brute_close_pairs(const PointSet& pts, double r) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (i < j && std::sqrt((pts[i].x - pts[j].x) * (pts[i].x - pts[j].x) +
                             (pts[i].y - pts[j].y) * (pts[i].y - pts[j].y)) <= r)
        ++count;
  return count;
}

inline std::size_t brute_cross_pairs(const PointSet& a, const PointSet& b, double r) {
  std::size_t count = 0;
  for (const Point& p : a)
    for (const Point& q : b)
      if (std::hypot(p.x - q.x, p.y - q.y) <= r) ++count;
  return count;
}

inline PointSet random_points(RngStream& s, std::size_t n, const Rect& region) {
  PointSet pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(uniform_point(s, region));
  return pts;
}

// Pearson goodness of fit with cells pooled from the right until each
// expected count >= 5. Returns {statistic, dof}.
inline std::pair<double, std::size_t> pearson(const std::vector<double>& observed,
                                              const std::vector<double>& probs,
                                              double total) {
  std::vector<double> obs, expd;
  double o = 0.0, e = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    o += i < observed.size() ? observed[i] : 0.0;
    e += probs[i] * total;
    if (e >= 5.0) {
      obs.push_back(o);
      expd.push_back(e);
      o = e = 0.0;
    }
  }
  for (std::size_t i = probs.size(); i < observed.size(); ++i) o += observed[i];
  if (!expd.empty()) {
    obs.back() += o;
    expd.back() += e;
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) stat += (obs[i] - expd[i]) * (obs[i] - expd[i]) / expd[i];
  return {stat, obs.size() - 1};
}

}  // namespace perfsim::testing

#endif
