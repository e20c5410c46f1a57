#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "perfsim/oracle.hpp"
#include "perfsim/rng.hpp"
#include "test_support.hpp"

using namespace perfsim;

TEST_CASE("uniform01 range and determinism") {
  RngStream a(42, 3), b(42, 3);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(a);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == uniform01(b));
  }
}

TEST_CASE("uniform01 mean over 1e5 draws") {
  RngStream s(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += uniform01(s);
  CHECK(std::abs(sum / 1e5 - 0.5) < 0.01);
}

TEST_CASE("streams differ by seed, index and child tag; children are path stable") {
  RngStream base(7, 0);
  CHECK(RngStream(7, 0).next_u64() == RngStream(7, 0).next_u64());
  CHECK(RngStream(7, 0).next_u64() != RngStream(8, 0).next_u64());
  CHECK(RngStream(7, 0).next_u64() != RngStream(7, 1).next_u64());
  CHECK(base.child(0).next_u64() != base.child(1).next_u64());

  // Deriving a child does not depend on how far the parent has advanced.
  RngStream advanced(7, 0);
  for (int i = 0; i < 17; ++i) advanced.next_u64();
  CHECK(advanced.child(5).next_u64() == base.child(5).next_u64());
  CHECK(base.child(1).child(2).next_u64() == RngStream(7, 0).child(1).child(2).next_u64());
}

TEST_CASE("interleaved substreams pass a chi-square uniformity test") {
  constexpr int kStreams = 16;
  constexpr int kBins = 64;
  constexpr int kPerStream = 20000;
  const RngStream root(2024, 0);
  std::vector<RngStream> streams;
  for (int i = 0; i < kStreams; ++i) streams.push_back(root.child(static_cast<std::uint64_t>(i)));
  std::vector<double> bins(kBins, 0.0);
  // Also check first-draw uniformity across many sibling streams.
  std::vector<double> first_bins(kBins, 0.0);
  for (int round = 0; round < kPerStream; ++round) {
    for (auto& s : streams) bins[static_cast<int>(uniform01(s) * kBins)] += 1.0;
    RngStream sibling = root.child(1000 + static_cast<std::uint64_t>(round));
    first_bins[static_cast<int>(uniform01(sibling) * kBins)] += 1.0;
  }
  const std::vector<double> flat(kBins, 1.0 / kBins);
  const auto [stat, dof] = testing::pearson(bins, flat, kStreams * kPerStream);
  CHECK(chi_square_survival(stat, dof) > 1e-3);
  const auto [stat1, dof1] = testing::pearson(first_bins, flat, kPerStream);
  CHECK(chi_square_survival(stat1, dof1) > 1e-3);
}

TEST_CASE("poisson edge cases") {
  RngStream s(3);
  for (int i = 0; i < 100; ++i) CHECK(poisson(s, 0.0) == 0);
  CHECK_THROWS_AS(poisson(s, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(poisson(s, NAN), std::invalid_argument);
  CHECK_THROWS_AS(poisson(s, INFINITY), std::invalid_argument);
  const auto big = poisson(s, 200.0);
  CHECK(big < 1000);
}

TEST_CASE("poisson(4) sample mean") {
  RngStream s(4);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += static_cast<double>(poisson(s, 4.0));
  CHECK(std::abs(sum / 1e5 - 4.0) < 3.0 * 2.0 / std::sqrt(1e5));
}

TEST_CASE("poisson matches its pmf for inversion and PTRS branches") {
  for (double mean : {0.7, 4.0, 10.0, 10.5, 30.0, 200.0}) {
    CAPTURE(mean);
    RngStream s(5, static_cast<std::uint64_t>(mean * 10));
    const auto n_max = poisson_truncation(mean, 1e-12).first;
    std::vector<double> counts(n_max + 1, 0.0);
    constexpr int kDraws = 100000;
    for (int i = 0; i < kDraws; ++i) {
      const auto k = poisson(s, mean);
      if (k >= counts.size()) counts.resize(k + 1, 0.0);
      counts[k] += 1.0;
    }
    const auto [stat, dof] = testing::pearson(counts, poisson_pmf(mean, n_max), kDraws);
    CHECK(chi_square_survival(stat, dof) > 1e-3);
  }
}

TEST_CASE("PoissonSampler reproduces poisson()") {
  RngStream a(6), b(6);
  const PoissonSampler sampler(37.5);
  for (int i = 0; i < 1000; ++i) CHECK(sampler(a) == poisson(b, 37.5));
}

TEST_CASE("uniform_point support and mean") {
  RngStream s(8);
  const Rect shifted(2, 5, 3, 6);
  for (int i = 0; i < 10000; ++i) {
    const Point p = uniform_point(s, shifted);
    CHECK(p.x >= 2.0);
    CHECK(p.x < 3.0);
    CHECK(p.y >= 5.0);
    CHECK(p.y < 6.0);
  }
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += uniform_point(s, Rect::unit()).x;
  CHECK(std::abs(sum / 1e5 - 0.5) < 0.003);
}
