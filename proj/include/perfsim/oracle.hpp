#ifndef PERFSIM_ORACLE_HPP
#define PERFSIM_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "perfsim/rng.hpp"
#include "perfsim/strauss.hpp"

namespace perfsim {

// Law of the point count N, indexed by n = 0..n_max.
struct CountDistribution {
  std::vector<double> probabilities;
  std::size_t n_max = 0;
  // Reference-measure mass beyond n_max that the table does not represent.
  double tail_mass_bound = 0.0;
};

struct OracleEstimate {
  CountDistribution distribution;
  double z_hat = 0.0;            // normalizing constant estimate
  double z_std_error = 0.0;
  std::vector<double> std_error;  // per entry of distribution.probabilities
  std::size_t num_samples = 0;    // per stratum
  // Estimated E[gamma^{c_r} | n uniform points], per n.
  std::vector<double> conditional_weight;
};

inline constexpr double kOracleTailMass = 1e-9;
inline constexpr std::size_t kOracleMinSamples = 10'000;

// Stratified conditional Monte Carlo for the Strauss count law:
// P(N = n) is proportional to Poisson(lambda * area)(n) * E[gamma^{c_r} | n],
// each expectation estimated from m sets of n i.i.d. uniform points drawn
// from stream s.child(n). Truncates where the Poisson tail drops below
// kOracleTailMass. Throws std::invalid_argument when m < kOracleMinSamples.
OracleEstimate strauss_count_oracle(const StraussParams& params, std::size_t m,
                                    const RngStream& s);

// Smallest n with P(Poisson(mean) > n) < tail; also returns that tail mass.
std::pair<std::size_t, double> poisson_truncation(double mean, double tail);

std::vector<double> poisson_pmf(double mean, std::size_t n_max);

// Independent runs of one sampler configuration; run i uses
// RngStream(seed, i).
struct RunSpec {
  Method method = Method::ar;
  StraussParams params;
  SamplerOptions options;
  std::uint64_t seed = 0;
};

struct EmpiricalRuns {
  std::vector<std::size_t> point_counts;
  std::vector<std::size_t> close_pairs;
  std::vector<std::uint64_t> proposals;
};

EmpiricalRuns run_replicates(const RunSpec& spec, std::size_t runs);

// Throws std::invalid_argument when runs < 1000.
CountDistribution empirical_count_distribution(const RunSpec& spec, std::size_t runs);

CountDistribution histogram(const std::vector<std::size_t>& values);

struct ComparisonReport {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
  double total_variation = 0.0;
  std::size_t cells = 0;  // after pooling
};

// Chi-square comparison of two count laws over pooled cells (adjacent cells
// merged until every expected count is at least 5) plus unpooled total
// variation distance.
//
// With nb > 0 this is the two-sample test of a (na observations) against b
// (nb observations). With nb == 0, b is taken as the exact reference law and
// the test is goodness of fit of a.
// Throws std::invalid_argument when pooling leaves a single cell.
ComparisonReport compare_distributions(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       std::size_t na, std::size_t nb);

inline ComparisonReport compare_distributions(const CountDistribution& a,
                                              const CountDistribution& b,
                                              std::size_t na, std::size_t nb) {
  return compare_distributions(a.probabilities, b.probabilities, na, nb);
}

double chi_square_survival(double statistic, std::size_t degrees_of_freedom);

}  // namespace perfsim

#endif  // PERFSIM_ORACLE_HPP
