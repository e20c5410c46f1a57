#include "perfsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace perfsim {

std::vector<double> poisson_pmf(double mean, std::size_t n_max) {
  std::vector<double> pmf(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double k = static_cast<double>(n);
    pmf[n] = mean == 0.0 ? (n == 0 ? 1.0 : 0.0)
                         : std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
  }
  return pmf;
}

std::pair<std::size_t, double> poisson_truncation(double mean, double tail) {
  if (mean == 0.0) return {0, 0.0};
  // Sum the upper tail directly to avoid cancellation in 1 - cdf.
  std::size_t n = static_cast<std::size_t>(std::floor(mean));
  while (true) {
    double term = std::exp(static_cast<double>(n + 1) * std::log(mean) - mean -
                           std::lgamma(static_cast<double>(n + 2)));
    double upper = 0.0;
    for (std::size_t k = n + 1; term > 1e-300 && (term > upper * 1e-17); ++k) {
      upper += term;
      term *= mean / static_cast<double>(k + 1);
    }
    if (upper < tail) return {n, upper};
    ++n;
  }
}

OracleEstimate strauss_count_oracle(const StraussParams& params, std::size_t m,
                                    const RngStream& s) {
  params.validate();
  if (m < kOracleMinSamples) {
    throw std::invalid_argument("oracle needs at least 10^4 samples per stratum");
  }
  const double mean = params.lambda * params.region.area();
  const auto [n_max, tail] = poisson_truncation(mean, kOracleTailMass);
  const std::vector<double> pmf = poisson_pmf(mean, n_max);

  OracleEstimate est;
  est.num_samples = m;
  est.conditional_weight.assign(n_max + 1, 1.0);
  std::vector<double> weight_var(n_max + 1, 0.0);
  PointSet points;
  for (std::size_t n = 2; n <= n_max; ++n) {
    if (params.gamma == 1.0) break;
    RngStream stratum = s.child(n);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      points.clear();
      for (std::size_t k = 0; k < n; ++k) points.push_back(uniform_point(stratum, params.region));
      const double w = strauss_penalty(points, params.gamma, params.r);
      sum += w;
      sum_sq += w * w;
    }
    const double md = static_cast<double>(m);
    const double w_mean = sum / md;
    est.conditional_weight[n] = w_mean;
    weight_var[n] = std::max(0.0, (sum_sq - md * w_mean * w_mean) / (md - 1.0));
  }

  // Unnormalized masses u_n and their sampling variances.
  std::vector<double> mass(n_max + 1), mass_var(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    mass[n] = pmf[n] * est.conditional_weight[n];
    mass_var[n] = pmf[n] * pmf[n] * weight_var[n] / static_cast<double>(m);
  }
  const double z = std::accumulate(mass.begin(), mass.end(), 0.0);
  const double total_var = std::accumulate(mass_var.begin(), mass_var.end(), 0.0);
  if (!(z > 0.0)) throw std::runtime_error("oracle estimated a zero normalizing constant");
  est.z_hat = params.gamma == 1.0 ? 1.0 : z;
  est.z_std_error = std::sqrt(total_var);

  est.distribution.n_max = n_max;
  est.distribution.tail_mass_bound = tail;
  est.distribution.probabilities.resize(n_max + 1);
  est.std_error.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double p = mass[n] / z;
    est.distribution.probabilities[n] = p;
    // Delta method for u_n / sum(u), strata independent.
    const double var = (mass_var[n] * (1.0 - 2.0 * p) + p * p * total_var) / (z * z);
    est.std_error[n] = std::sqrt(std::max(0.0, var));
  }
  return est;
}

EmpiricalRuns run_replicates(const RunSpec& spec, std::size_t runs) {
  EmpiricalRuns out;
  out.point_counts.reserve(runs);
  out.close_pairs.reserve(runs);
  out.proposals.reserve(runs);
  for (std::size_t i = 0; i < runs; ++i) {
    RngStream s(spec.seed, i);
    const StraussDraw draw = sample_strauss(spec.method, spec.params, s, spec.options);
    out.point_counts.push_back(draw.points.size());
    out.close_pairs.push_back(count_close_pairs(draw.points, spec.params.r));
    out.proposals.push_back(draw.stats.proposals);
  }
  return out;
}

CountDistribution histogram(const std::vector<std::size_t>& values) {
  CountDistribution dist;
  if (values.empty()) return dist;
  dist.n_max = *std::max_element(values.begin(), values.end());
  dist.probabilities.assign(dist.n_max + 1, 0.0);
  for (std::size_t v : values) dist.probabilities[v] += 1.0;
  for (double& p : dist.probabilities) p /= static_cast<double>(values.size());
  return dist;
}

CountDistribution empirical_count_distribution(const RunSpec& spec, std::size_t runs) {
  if (runs < 1000) throw std::invalid_argument("empirical distribution needs >= 1000 runs");
  return histogram(run_replicates(spec, runs).point_counts);
}

double chi_square_survival(double statistic, std::size_t degrees_of_freedom) {
  if (statistic <= 0.0) return 1.0;
  const boost::math::chi_squared_distribution<double> chi2(
      static_cast<double>(degrees_of_freedom));
  return boost::math::cdf(boost::math::complement(chi2, statistic));
}

ComparisonReport compare_distributions(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       std::size_t na, std::size_t nb) {
  if (na == 0) throw std::invalid_argument("first sample must be nonempty");
  const std::size_t cells = std::max(a.size(), b.size());
  const auto at = [](const std::vector<double>& v, std::size_t i) {
    return i < v.size() ? v[i] : 0.0;
  };
  const double dna = static_cast<double>(na);
  const double dnb = static_cast<double>(nb);
  const bool reference = nb == 0;

  ComparisonReport report;
  for (std::size_t i = 0; i < cells; ++i) {
    report.total_variation += 0.5 * std::abs(at(a, i) - at(b, i));
  }

  // Observed counts per cell, then pooled in index order.
  struct Cell {
    double obs_a = 0.0, obs_b = 0.0, prob_b = 0.0;
  };
  const auto expected_ok = [&](const Cell& c) {
    if (reference) return dna * c.prob_b >= 5.0;
    const double pooled = (c.obs_a + c.obs_b) / (dna + dnb);
    return dna * pooled >= 5.0 && dnb * pooled >= 5.0;
  };
  std::vector<Cell> pooled;
  Cell current;
  for (std::size_t i = 0; i < cells; ++i) {
    current.obs_a += at(a, i) * dna;
    current.obs_b += at(b, i) * dnb;
    current.prob_b += at(b, i);
    if (expected_ok(current)) {
      pooled.push_back(current);
      current = {};
    }
  }
  if (current.obs_a > 0.0 || current.obs_b > 0.0 || current.prob_b > 0.0) {
    if (pooled.empty()) {
      pooled.push_back(current);
    } else {
      pooled.back().obs_a += current.obs_a;
      pooled.back().obs_b += current.obs_b;
      pooled.back().prob_b += current.prob_b;
    }
  }
  if (pooled.size() < 2) {
    throw std::invalid_argument("all mass pools into a single chi-square cell");
  }

  for (const Cell& c : pooled) {
    if (reference) {
      const double expected = dna * c.prob_b;
      report.statistic += (c.obs_a - expected) * (c.obs_a - expected) / expected;
    } else {
      const double pooled_p = (c.obs_a + c.obs_b) / (dna + dnb);
      const double ea = dna * pooled_p, eb = dnb * pooled_p;
      report.statistic += (c.obs_a - ea) * (c.obs_a - ea) / ea +
                          (c.obs_b - eb) * (c.obs_b - eb) / eb;
    }
  }
  report.cells = pooled.size();
  report.degrees_of_freedom = pooled.size() - 1;
  report.p_value = chi_square_survival(report.statistic, report.degrees_of_freedom);
  return report;
}

}  // namespace perfsim
