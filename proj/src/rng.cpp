#include "perfsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace perfsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

// Philox4x32-10 on N independent counters at once.
template <unsigned N>
void philox4x32_10(std::array<std::array<std::uint32_t, 4>, N>& ctr,
                   std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    for (unsigned j = 0; j < N; ++j) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(kPhiloxM0, ctr[j][0], hi0, lo0);
      mulhilo(kPhiloxM1, ctr[j][2], hi1, lo1);
      ctr[j] = {hi1 ^ ctr[j][1] ^ key[0], lo1, hi0 ^ ctr[j][3] ^ key[1], lo0};
    }
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  const std::uint64_t key = splitmix64(seed_);
  key_ = {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
}

RngStream RngStream::child(std::uint64_t tag) const {
  return RngStream(seed_, splitmix64(splitmix64(stream_) ^ splitmix64(~tag)));
}

void RngStream::refill() {
  std::array<std::array<std::uint32_t, 4>, kBlocksPerRefill> ctr;
  for (unsigned j = 0; j < kBlocksPerRefill; ++j) {
    const std::uint64_t block = block_ + j;
    ctr[j] = {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
              static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  }
  philox4x32_10<kBlocksPerRefill>(ctr, key_);
  for (unsigned j = 0; j < kBlocksPerRefill; ++j) {
    buffer_[2 * j] = (static_cast<std::uint64_t>(ctr[j][1]) << 32) | ctr[j][0];
    buffer_[2 * j + 1] = (static_cast<std::uint64_t>(ctr[j][3]) << 32) | ctr[j][2];
  }
  block_ += kBlocksPerRefill;
  used_ = 0;
}

PoissonSampler::PoissonSampler(double mean) : mean_(mean) {
  if (!std::isfinite(mean) || mean < 0.0) {
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  }
  exp_neg_mean_ = std::exp(-mean);
  if (mean > 10.0) {
    log_mean_ = std::log(mean);
    b_ = 0.931 + 2.53 * std::sqrt(mean);
    a_ = -0.059 + 0.02483 * b_;
    log_inv_alpha_ = std::log(1.1239 + 1.1328 / (b_ - 3.4));
    vr_ = 0.9277 - 3.6224 / (b_ - 2.0);
  }
}

std::uint64_t PoissonSampler::operator()(RngStream& s) const {
  if (mean_ == 0.0) return 0;
  if (mean_ <= 10.0) {
    // Sequential inversion. cdf saturates near 1 in double; the cap only
    // matters for u within an ulp of 1.
    const double u = uniform01(s);
    double p = exp_neg_mean_;
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf && k < 1000) {
      ++k;
      p *= mean_ / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // PTRS: Hormann (1993), "The transformed rejection method for generating
  // Poisson random variables". Exact for mean >= 10.
  while (true) {
    const double u = uniform01(s) - 0.5;
    const double v = uniform01(s);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a_ / us + b_) * u + mean_ + 0.43);
    if (us >= 0.07 && v <= vr_) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + log_inv_alpha_ - std::log(a_ / (us * us) + b_) <=
        -mean_ + k * log_mean_ - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

std::uint64_t poisson(RngStream& s, double mean) { return PoissonSampler(mean)(s); }

Point uniform_point(RngStream& s, const Rect& region) {
  const auto affine = [](double lo, double hi, double u) {
    const double v = lo + u * (hi - lo);
    return v < hi ? v : std::nextafter(hi, lo);
  };
  const double ux = uniform01(s);
  const double uy = uniform01(s);
  return {affine(region.x0(), region.x1(), ux),
          affine(region.y0(), region.y1(), uy)};
}

}  // namespace perfsim
