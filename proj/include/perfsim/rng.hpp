#ifndef PERFSIM_RNG_HPP
#define PERFSIM_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

#include "perfsim/geometry.hpp"

namespace perfsim {

// Counter-based random stream built on Philox4x32-10.
//
// A stream is identified by (seed, stream id). The seed becomes the Philox
// key and the stream id occupies the high 64 bits of the 128-bit counter, so
// each stream walks its own disjoint block sequence. child(tag) derives a new
// stream id by hashing (id, tag); it never touches the parent's position, so
// a child's output depends only on the path of tags that produced it.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  RngStream child(std::uint64_t tag) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() {
    if (used_ == kBuffered) refill();
    return buffer_[used_++];
  }
  std::uint64_t operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::array<std::uint32_t, 2> key_;
  // Two Philox blocks are computed per refill (independent counters, so
  // the rounds interleave); the output sequence is block 0, 1, 2, ...
  static constexpr unsigned kBlocksPerRefill = 2;
  static constexpr unsigned kBuffered = 2 * kBlocksPerRefill;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, kBuffered> buffer_{};
  unsigned used_ = kBuffered;
};

// 53-bit uniform in [0, 1).
inline double uniform01(RngStream& s) {
  return static_cast<double>(s.next_u64() >> 11) * 0x1.0p-53;
}

// Poisson(mean) variate: inversion for mean <= 10, PTRS transformed
// rejection above. Throws std::invalid_argument on negative/non-finite mean.
std::uint64_t poisson(RngStream& s, double mean);

// Poisson sampler with the per-mean constants precomputed; same variates as
// poisson() for the same stream state.
class PoissonSampler {
 public:
  // Throws std::invalid_argument on negative/non-finite mean.
  explicit PoissonSampler(double mean);

  double mean() const { return mean_; }
  std::uint64_t operator()(RngStream& s) const;

 private:
  double mean_;
  double exp_neg_mean_ = 0.0;
  double log_mean_ = 0.0, b_ = 0.0, a_ = 0.0, log_inv_alpha_ = 0.0, vr_ = 0.0;
};

Point uniform_point(RngStream& s, const Rect& region);

}  // namespace perfsim

#endif  // PERFSIM_RNG_HPP
