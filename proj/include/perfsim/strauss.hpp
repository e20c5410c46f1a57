#ifndef PERFSIM_STRAUSS_HPP
#define PERFSIM_STRAUSS_HPP

#include <span>
#include <string_view>

#include "perfsim/geometry.hpp"
#include "perfsim/rng.hpp"
#include "perfsim/stats.hpp"

namespace perfsim {

// Strauss process on `region`: density gamma^{c_r(X)} with respect to a
// Poisson point process of intensity `lambda`.
struct StraussParams {
  Rect region = Rect::unit();
  double lambda = 1.0;
  double gamma = 1.0;
  double r = 0.1;

  // Throws std::invalid_argument unless lambda >= 0, gamma in [0, 1], r > 0
  // (all finite).
  void validate() const;
};

struct SamplerOptions {
  // Regions with lambda * area at or below this are drawn by plain AR.
  double base_threshold = 5.0;
  // Count merge interactions using only points within r of the cut.
  bool use_strips = true;
  Deadline deadline;
};

struct StraussDraw {
  PointSet points;
  SampleStats stats;
};

// gamma^{c_r(X)}, with 0^0 = 1.
double strauss_penalty(std::span<const Point> points, double gamma, double r);

// Poisson point process of intensity lambda on region.
PointSet sample_ppp(const Rect& region, double lambda, RngStream& s);

// Plain acceptance rejection: propose PPP(lambda), accept with probability
// gamma^{c_r}.
StraussDraw ar_strauss(const StraussParams& params, RngStream& s,
                       const SamplerOptions& options = {});

// Recursive acceptance-rejection stitching with an AR base case.
StraussDraw stitch_strauss(const StraussParams& params, RngStream& s,
                           const SamplerOptions& options = {});

// One level of stitching over plain-AR halves.
StraussDraw split_once_strauss(const StraussParams& params, RngStream& s,
                               const SamplerOptions& options = {});

// Partial rejection sampling. Exact only for gamma == 0; for gamma in (0, 1)
// each close pair fails independently with probability 1 - gamma per sweep,
// which carries no exactness guarantee.
StraussDraw prs_strauss(const StraussParams& params, RngStream& s,
                        const SamplerOptions& options = {});

enum class Method { ar, stitch, prs, split_once };

std::string_view method_name(Method method);
// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);

StraussDraw sample_strauss(Method method, const StraussParams& params,
                           RngStream& s, const SamplerOptions& options = {});

}  // namespace perfsim

#endif  // PERFSIM_STRAUSS_HPP
