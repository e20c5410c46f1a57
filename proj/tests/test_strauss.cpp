#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "perfsim/oracle.hpp"
#include "perfsim/strauss.hpp"
#include "test_support.hpp"

using namespace perfsim;

namespace {

// Internal nodes of the stitching tree: every split halves the area.
std::uint64_t internal_nodes(double mass, double threshold) {
  return mass <= threshold ? 0 : 1 + 2 * internal_nodes(mass / 2.0, threshold);
}

std::vector<double> as_counts(const std::vector<std::size_t>& values) {
  std::vector<double> counts;
  for (auto v : values) {
    if (v >= counts.size()) counts.resize(v + 1, 0.0);
    counts[v] += 1.0;
  }
  return counts;
}

void check_support(const PointSet& pts, const Rect& region) {
  for (const Point& p : pts) CHECK(region.contains(p));
}

}  // namespace

TEST_CASE("strauss_penalty") {
  const PointSet three_close{{0, 0}, {0, 0.01}, {0.01, 0}};
  CHECK(strauss_penalty(three_close, 1.0, 0.1) == 1.0);
  CHECK(strauss_penalty(PointSet{{0, 0}, {0.5, 0.5}}, 0.0, 0.1) == 1.0);
  CHECK(strauss_penalty(three_close, 0.0, 0.1) == 0.0);
  CHECK(strauss_penalty({}, 0.0, 0.1) == 1.0);
  CHECK(strauss_penalty(three_close, 0.5, 0.1) == doctest::Approx(0.125));
}

TEST_CASE("StraussParams validation") {
  CHECK_THROWS(StraussParams{Rect::unit(), -1.0, 0.5, 0.1}.validate());
  CHECK_THROWS(StraussParams{Rect::unit(), 1.0, 1.5, 0.1}.validate());
  CHECK_THROWS(StraussParams{Rect::unit(), 1.0, -0.1, 0.1}.validate());
  CHECK_THROWS(StraussParams{Rect::unit(), 1.0, 0.5, 0.0}.validate());
  CHECK_THROWS(StraussParams{Rect::unit(), NAN, 0.5, 0.1}.validate());
  CHECK_NOTHROW(StraussParams{Rect::unit(), 0.0, 0.0, 0.1}.validate());
}

TEST_CASE("sample_ppp") {
  RngStream s(1);
  CHECK(sample_ppp(Rect::unit(), 0.0, s).empty());
  double total = 0.0;
  const Rect region = Rect::unit();
  for (int i = 0; i < 10000; ++i) {
    const PointSet pts = sample_ppp(region, 200.0, s);
    total += static_cast<double>(pts.size());
    if (i < 50) check_support(pts, region);
  }
  CHECK(std::abs(total / 1e4 - 200.0) < 3.0 * std::sqrt(200.0) / 100.0);
}

TEST_CASE("every sampler with gamma = 1 accepts at the first opportunity") {
  const StraussParams params{Rect::unit(), 20.0, 1.0, 0.2};
  RngStream s(2);
  const StraussDraw ar = ar_strauss(params, s);
  CHECK(ar.stats.proposals == 1);
  CHECK(ar.stats.accept_checks == 1);

  const StraussDraw st = stitch_strauss(params, s);
  CHECK(st.stats.accept_checks == internal_nodes(20.0, 5.0));
  CHECK(st.stats.accept_checks == 3);
  CHECK(st.stats.base_case_calls == 4);
  CHECK(st.stats.proposals == 4);
  CHECK(st.stats.max_recursion_depth == 2);

  const StraussDraw big = stitch_strauss({Rect(0, 0, 3, 2), 37.0, 1.0, 0.1}, s);
  CHECK(big.stats.accept_checks == internal_nodes(6 * 37.0, 5.0));

  const StraussDraw once = split_once_strauss(params, s);
  CHECK(once.stats.accept_checks == 1);
  CHECK(once.stats.proposals == 2);

  const StraussDraw prs = prs_strauss(params, s);
  CHECK(prs.stats.accept_checks == 0);
}

TEST_CASE("stitching below the base threshold is a single AR call") {
  const StraussParams params{Rect::unit(), 3.0, 0.5, 0.3};
  RngStream a(3), b(3);
  const StraussDraw st = stitch_strauss(params, a);
  const StraussDraw ar = ar_strauss(params, b);
  CHECK(st.stats.base_case_calls == 1);
  CHECK(st.stats.accept_checks == 0);
  CHECK(st.stats.proposals == ar.stats.proposals);
  CHECK(st.points == ar.points);
}

TEST_CASE("hard-core invariant for every sampler") {
  const StraussParams params{Rect::unit(), 30.0, 0.0, 0.1};
  for (Method m : {Method::ar, Method::stitch, Method::prs, Method::split_once}) {
    CAPTURE(method_name(m));
    const EmpiricalRuns runs = run_replicates({m, params, {}, 4}, m == Method::ar ? 100 : 1000);
    for (auto c : runs.close_pairs) REQUIRE(c == 0);
  }
}

TEST_CASE("support invariant on an offset rectangle") {
  const StraussParams params{Rect(-2, 3, 0.5, 4.2), 8.0, 0.4, 0.2};
  for (Method m : {Method::ar, Method::stitch, Method::prs, Method::split_once}) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      RngStream s(5, i);
      check_support(sample_strauss(m, params, s).points, params.region);
    }
  }
}

TEST_CASE("runs are reproducible from the seed") {
  const StraussParams params{Rect::unit(), 60.0, 0.2, 0.1};
  for (Method m : {Method::ar, Method::stitch, Method::prs, Method::split_once}) {
    if (m == Method::ar) continue;
    RngStream a(6), b(6);
    const StraussDraw x = sample_strauss(m, params, a);
    const StraussDraw y = sample_strauss(m, params, b);
    CHECK(x.points == y.points);
    CHECK(x.stats.same_counts(y.stats));
  }
}

TEST_CASE("strip filtering leaves stitched output unchanged") {
  SamplerOptions full;
  full.use_strips = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const StraussParams params{Rect(0, 0, 2, 1), 40.0, 0.3, 0.12};
    RngStream a(seed), b(seed);
    const StraussDraw with = stitch_strauss(params, a);
    const StraussDraw without = stitch_strauss(params, b, full);
    CHECK(with.points == without.points);
    CHECK(with.stats.same_counts(without.stats));
  }
}

TEST_CASE("gamma = 1 output counts are Poisson for every sampler") {
  const StraussParams params{Rect::unit(), 12.0, 1.0, 0.2};
  const auto n_max = poisson_truncation(12.0, 1e-12).first;
  for (Method m : {Method::ar, Method::stitch, Method::prs, Method::split_once}) {
    CAPTURE(method_name(m));
    const EmpiricalRuns runs = run_replicates({m, params, {}, 7}, 10000);
    const auto [stat, dof] =
        testing::pearson(as_counts(runs.point_counts), poisson_pmf(12.0, n_max), 10000);
    CHECK(chi_square_survival(stat, dof) > 1e-3);
  }
}

TEST_CASE("samplers agree on the joint law of (N, c_r)") {
  // Two levels of stitching at lambda = 12 with the default threshold.
  const StraussParams params{Rect::unit(), 12.0, 0.5, 0.2};
  constexpr std::size_t kRuns = 20000;
  constexpr std::size_t kPairCells = 6;
  const auto joint = [&](Method m, std::uint64_t seed) {
    const EmpiricalRuns runs = run_replicates({m, params, {}, seed}, kRuns);
    std::vector<double> probs;
    for (std::size_t i = 0; i < kRuns; ++i) {
      const std::size_t key =
          runs.point_counts[i] * kPairCells + std::min(runs.close_pairs[i], kPairCells - 1);
      if (key >= probs.size()) probs.resize(key + 1, 0.0);
      probs[key] += 1.0 / kRuns;
    }
    return probs;
  };
  const auto ar = joint(Method::ar, 100);
  const auto st = joint(Method::stitch, 200);
  const auto once = joint(Method::split_once, 300);
  CHECK(compare_distributions(ar, st, kRuns, kRuns).p_value > 1e-3);
  CHECK(compare_distributions(ar, once, kRuns, kRuns).p_value > 1e-3);
  CHECK(compare_distributions(st, once, kRuns, kRuns).p_value > 1e-3);
}

TEST_CASE("prs agrees with ar in the hard-core case") {
  const StraussParams params{Rect::unit(), 6.0, 0.0, 0.3};
  constexpr std::size_t kRuns = 20000;
  const auto ar = histogram(run_replicates({Method::ar, params, {}, 8}, kRuns).point_counts);
  const auto prs = histogram(run_replicates({Method::prs, params, {}, 9}, kRuns).point_counts);
  CHECK(compare_distributions(ar, prs, kRuns, kRuns).p_value > 1e-3);
}

TEST_CASE("split-once effort matches (1/p1 + 1/p2) / p3") {
  const StraussParams params{Rect::unit(), 8.0, 0.5, 0.3};
  const Split halves = split_region(params.region);
  constexpr std::size_t kRuns = 20000;
  const auto mean = [](const std::vector<std::uint64_t>& v) {
    double s = 0.0;
    for (auto x : v) s += static_cast<double>(x);
    return s / static_cast<double>(v.size());
  };
  // p1, p2 from standalone AR on each half; p3 from split-once merge tests.
  const double inv_p1 = mean(run_replicates({Method::ar, {halves.lower, 8.0, 0.5, 0.3}, {}, 10}, kRuns).proposals);
  const double inv_p2 = mean(run_replicates({Method::ar, {halves.upper, 8.0, 0.5, 0.3}, {}, 11}, kRuns).proposals);
  double proposals = 0.0, checks = 0.0;
  for (std::size_t i = 0; i < kRuns; ++i) {
    RngStream s(12, i);
    const StraussDraw d = split_once_strauss(params, s);
    proposals += static_cast<double>(d.stats.proposals);
    checks += static_cast<double>(d.stats.accept_checks);
  }
  const double inv_p3 = checks / kRuns;
  CHECK(proposals / kRuns == doctest::Approx((inv_p1 + inv_p2) * inv_p3).epsilon(0.05));
  CHECK(inv_p3 > 1.0);
}

TEST_CASE("AR proposal counts are geometric with mean 1/Z") {
  const StraussParams params{Rect::unit(), 3.0, 0.5, 0.3};
  const OracleEstimate oracle = strauss_count_oracle(params, 20000, RngStream(13));
  const EmpiricalRuns runs = run_replicates({Method::ar, params, {}, 14}, 50000);
  const double z = oracle.z_hat;
  std::vector<double> counts;
  for (auto p : runs.proposals) {
    if (p >= counts.size()) counts.resize(p + 1, 0.0);
    counts[p] += 1.0;
  }
  std::vector<double> geometric(counts.size() + 50, 0.0);
  for (std::size_t k = 1; k < geometric.size(); ++k) geometric[k] = z * std::pow(1.0 - z, k - 1.0);
  const auto [stat, dof] = testing::pearson(counts, geometric, 50000);
  CHECK(chi_square_survival(stat, dof) > 1e-3);
}

TEST_CASE("stitching needs far fewer proposals than AR at lambda = 50, gamma = 0, r = 0.1") {
  const StraussParams params{Rect::unit(), 50.0, 0.0, 0.1};
  const auto mean = [](const std::vector<std::uint64_t>& v) {
    double s = 0.0;
    for (auto x : v) s += static_cast<double>(x);
    return s / static_cast<double>(v.size());
  };
  const double stitch = mean(run_replicates({Method::stitch, params, {}, 15}, 200).proposals);
  const double ar = mean(run_replicates({Method::ar, params, {}, 16}, 2).proposals);
  MESSAGE("mean proposals: stitch=" << stitch << " ar=" << ar);
  CHECK(stitch < ar);
}

TEST_CASE("a deadline aborts with partial statistics") {
  SamplerOptions options;
  options.deadline = Deadline::after(0.05);
  RngStream s(17);
  try {
    ar_strauss({Rect::unit(), 150.0, 0.0, 0.15}, s, options);
    FAIL("expected a timeout");
  } catch (const TimeoutError& e) {
    CHECK(e.partial().proposals > 0);
    CHECK(e.partial().wall_time >= 0.05);
  }
}

TEST_CASE("method names round trip") {
  for (Method m : {Method::ar, Method::stitch, Method::prs, Method::split_once}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_method("dcftp"), std::invalid_argument);
}
