#include "perfsim/strauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace perfsim {

void StraussParams::validate() const {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument("lambda must be finite and >= 0");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
  if (!std::isfinite(r) || !(r > 0.0)) {
    throw std::invalid_argument("r must be finite and > 0");
  }
}

double strauss_penalty(std::span<const Point> points, double gamma, double r) {
  if (gamma == 1.0) return 1.0;
  if (gamma == 0.0) return count_close_pairs_capped(points, r, 1) == 0 ? 1.0 : 0.0;
  return std::pow(gamma, static_cast<double>(count_close_pairs(points, r)));
}

PointSet sample_ppp(const Rect& region, double lambda, RngStream& s) {
  const std::uint64_t n = poisson(s, lambda * region.area());
  PointSet points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) points.push_back(uniform_point(s, region));
  return points;
}

namespace {

constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

// Smallest pair count c with gamma^c <= u, i.e. the first count that rejects
// under the rule "accept iff u < gamma^c". Counting can stop there.
std::size_t rejection_cap(double gamma, double u) {
  if (gamma == 1.0) return kNoCap;
  if (gamma == 0.0) return 1;
  if (u <= 0.0) return kNoCap;
  const auto rejects = [&](double c) { return std::pow(gamma, c) <= u; };
  double c = std::max(0.0, std::floor(std::log(u) / std::log(gamma)));
  while (c > 0.0 && rejects(c - 1.0)) c -= 1.0;
  while (!rejects(c)) c += 1.0;
  return static_cast<std::size_t>(c);
}

class StraussSampler {
 public:
  StraussSampler(const StraussParams& params, const SamplerOptions& options)
      : params_(params), options_(options) {}

  SampleStats& stats() { return stats_; }

  void check_deadline() const {
    if (options_.deadline.expired()) throw TimeoutError(stats_);
  }

  // Plain AR on `region`. The acceptance uniform is drawn first so the
  // proposal can be abandoned at the first pair that forces rejection;
  // the remaining points of a rejected proposal are never generated.
  // Acceptance tests are only counted when AR is the top-level method.
  PointSet accept_reject(const Rect& region, RngStream& s, bool count_checks) {
    ++stats_.base_case_calls;
    const double r2 = params_.r * params_.r;
    const PoissonSampler count(params_.lambda * region.area());
    PointSet points;
    while (true) {
      check_deadline();
      ++stats_.proposals;
      if (count_checks) ++stats_.accept_checks;
      const double u = uniform01(s);
      const std::size_t cap = rejection_cap(params_.gamma, u);
      const std::uint64_t n = count(s);
      points.clear();
      std::size_t close_pairs = 0;
      bool rejected = false;
      for (std::uint64_t k = 0; k < n && !rejected; ++k) {
        const Point p = uniform_point(s, region);
        if (cap != kNoCap) {
          for (const Point& q : points) {
            const double dx = p.x - q.x;
            const double dy = p.y - q.y;
            if (dx * dx + dy * dy <= r2 && ++close_pairs >= cap) {
              rejected = true;
              break;
            }
          }
        }
        points.push_back(p);
      }
      if (!rejected) return points;
    }
  }

  // Recursive stitching. With `single_level`, the children are plain AR and
  // the root splits regardless of the base threshold.
  PointSet stitch(const Rect& region, RngStream& s, std::uint32_t depth,
                  bool single_level) {
    stats_.max_recursion_depth = std::max(stats_.max_recursion_depth, depth);
    const bool easy = params_.lambda * region.area() <= options_.base_threshold;
    if (easy && !(single_level && depth == 0)) {
      return accept_reject(region, s, false);
    }
    const Split split = split_region(region);
    for (std::uint64_t retry = 0;; ++retry) {
      check_deadline();
      RngStream lower_stream = s.child(2 * retry);
      RngStream upper_stream = s.child(2 * retry + 1);
      PointSet lower, upper;
      if (single_level) {
        stats_.max_recursion_depth = std::max(stats_.max_recursion_depth, depth + 1);
        lower = accept_reject(split.lower, lower_stream, false);
        upper = accept_reject(split.upper, upper_stream, false);
      } else {
        lower = stitch(split.lower, lower_stream, depth + 1, false);
        upper = stitch(split.upper, upper_stream, depth + 1, false);
      }
      const double u = uniform01(s);
      ++stats_.accept_checks;
      const std::size_t cap = rejection_cap(params_.gamma, u);
      std::size_t crossing = 0;
      if (cap != kNoCap && !lower.empty() && !upper.empty()) {
        if (options_.use_strips) {
          const PointSet lower_strip = strip_near_cut(lower, split.cut, params_.r);
          const PointSet upper_strip = strip_near_cut(upper, split.cut, params_.r);
          crossing = count_cross_pairs_capped(lower_strip, upper_strip, params_.r, cap);
        } else {
          crossing = count_cross_pairs_capped(lower, upper, params_.r, cap);
        }
      }
      if (crossing < cap) {
        lower.insert(lower.end(), upper.begin(), upper.end());
        return lower;
      }
    }
  }

  PointSet partial_rejection(RngStream& s) {
    const Rect& region = params_.region;
    const double r2 = params_.r * params_.r;
    ++stats_.proposals;
    PointSet points = sample_ppp(region, params_.lambda, s);
    std::vector<char> bad;
    while (true) {
      check_deadline();
      const std::size_t n = points.size();
      bad.assign(n, 0);
      bool any_bad = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double dx = points[i].x - points[j].x;
          const double dy = points[i].y - points[j].y;
          if (dx * dx + dy * dy > r2) continue;
          if (params_.gamma == 0.0 || !(uniform01(s) < params_.gamma)) {
            bad[i] = bad[j] = 1;
            any_bad = true;
          }
        }
      }
      if (!any_bad) return points;
      ++stats_.accept_checks;

      PointSet good, removed;
      for (std::size_t i = 0; i < n; ++i) (bad[i] ? removed : good).push_back(points[i]);

      // Fresh Poisson points within r of a removed point. The bounding box of
      // those disks (clipped to the region) contains the whole resampling set.
      double bx0 = region.x1(), by0 = region.y1(), bx1 = region.x0(), by1 = region.y0();
      for (const Point& p : removed) {
        bx0 = std::min(bx0, p.x);
        by0 = std::min(by0, p.y);
        bx1 = std::max(bx1, p.x);
        by1 = std::max(by1, p.y);
      }
      const Rect box(std::max(region.x0(), bx0 - params_.r),
                     std::max(region.y0(), by0 - params_.r),
                     std::min(region.x1(), bx1 + params_.r),
                     std::min(region.y1(), by1 + params_.r));
      ++stats_.proposals;
      for (const Point& candidate : sample_ppp(box, params_.lambda, s)) {
        const bool near = std::any_of(removed.begin(), removed.end(), [&](const Point& b) {
          const double dx = candidate.x - b.x;
          const double dy = candidate.y - b.y;
          return dx * dx + dy * dy <= r2;
        });
        if (near) good.push_back(candidate);
      }
      points = std::move(good);
    }
  }

 private:
  const StraussParams& params_;
  const SamplerOptions& options_;
  SampleStats stats_;
};

template <typename Body>
StraussDraw timed_run(const StraussParams& params, const SamplerOptions& options,
                      Body&& body) {
  params.validate();
  StraussSampler sampler(params, options);
  const auto start = Clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  try {
    StraussDraw draw{body(sampler), {}};
    draw.stats = sampler.stats();
    draw.stats.wall_time = elapsed();
    return draw;
  } catch (const TimeoutError& e) {
    SampleStats partial = e.partial();
    partial.wall_time = elapsed();
    throw TimeoutError(partial);
  }
}

}  // namespace

StraussDraw ar_strauss(const StraussParams& params, RngStream& s,
                       const SamplerOptions& options) {
  return timed_run(params, options, [&](StraussSampler& sampler) {
    return sampler.accept_reject(params.region, s, true);
  });
}

StraussDraw stitch_strauss(const StraussParams& params, RngStream& s,
                           const SamplerOptions& options) {
  return timed_run(params, options, [&](StraussSampler& sampler) {
    return sampler.stitch(params.region, s, 0, false);
  });
}

StraussDraw split_once_strauss(const StraussParams& params, RngStream& s,
                               const SamplerOptions& options) {
  return timed_run(params, options, [&](StraussSampler& sampler) {
    return sampler.stitch(params.region, s, 0, true);
  });
}

StraussDraw prs_strauss(const StraussParams& params, RngStream& s,
                        const SamplerOptions& options) {
  return timed_run(params, options, [&](StraussSampler& sampler) {
    return sampler.partial_rejection(s);
  });
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::ar: return "ar";
    case Method::stitch: return "stitch";
    case Method::prs: return "prs";
    case Method::split_once: return "split_once";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::ar, Method::stitch, Method::prs, Method::split_once}) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

StraussDraw sample_strauss(Method method, const StraussParams& params,
                           RngStream& s, const SamplerOptions& options) {
  switch (method) {
    case Method::ar: return ar_strauss(params, s, options);
    case Method::stitch: return stitch_strauss(params, s, options);
    case Method::prs: return prs_strauss(params, s, options);
    case Method::split_once: return split_once_strauss(params, s, options);
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace perfsim
