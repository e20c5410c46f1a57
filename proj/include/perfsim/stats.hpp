#ifndef PERFSIM_STATS_HPP
#define PERFSIM_STATS_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace perfsim {

// Effort counters attached to every draw.
//
//  proposals            reference-measure draws (a Poisson point set, or a
//                       uniform leaf color for Ising)
//  accept_checks        merge tests for stitching samplers, acceptance tests
//                       for plain AR, bad-pair sweeps for PRS
//  base_case_calls      invocations of the base-case AR sampler
//  max_recursion_depth  deepest recursion level reached (root = 0)
//  wall_time            seconds spent inside the sampler call
struct SampleStats {
  std::uint64_t proposals = 0;
  std::uint64_t accept_checks = 0;
  std::uint64_t base_case_calls = 0;
  std::uint32_t max_recursion_depth = 0;
  double wall_time = 0.0;

  // Everything except wall_time.
  bool same_counts(const SampleStats& o) const {
    return proposals == o.proposals && accept_checks == o.accept_checks &&
           base_case_calls == o.base_case_calls &&
           max_recursion_depth == o.max_recursion_depth;
  }
};

using Clock = std::chrono::steady_clock;

// Optional wall-clock budget shared by a sampler call and all recursive work.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after(double seconds) {
    Deadline d;
    d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(seconds));
    return d;
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  bool bounded() const { return at_.has_value(); }

 private:
  std::optional<Clock::time_point> at_;
};

// Thrown when a sampler exceeds its Deadline; carries the work done so far.
class TimeoutError : public std::runtime_error {
 public:
  explicit TimeoutError(const SampleStats& partial)
      : std::runtime_error("sampler exceeded its time budget"), partial_(partial) {}

  const SampleStats& partial() const { return partial_; }

 private:
  SampleStats partial_;
};

}  // namespace perfsim

#endif  // PERFSIM_STATS_HPP
