#include "perfsim/verify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "perfsim/csv.hpp"
#include "perfsim/ising.hpp"
#include "perfsim/oracle.hpp"
#include "perfsim/strauss.hpp"

namespace perfsim {

namespace {

constexpr double kSignificance = 1e-3;

std::vector<ReportRow> count_rows(const std::vector<double>& reference,
                                  const std::vector<double>& empirical,
                                  const std::vector<double>& std_error) {
  std::vector<ReportRow> rows;
  const std::size_t n = std::max(reference.size(), empirical.size());
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back({i, i < reference.size() ? reference[i] : 0.0,
                    i < empirical.size() ? empirical[i] : 0.0,
                    i < std_error.size() ? std_error[i] : 0.0});
  }
  return rows;
}

SuiteReport strauss_small(std::uint64_t seed) {
  const StraussParams params{Rect::unit(), 3.0, 0.5, 0.3};
  const std::size_t runs = 100'000;
  const OracleEstimate oracle = strauss_count_oracle(params, 100'000, RngStream(seed, 1));
  const CountDistribution empirical =
      empirical_count_distribution({Method::stitch, params, {}, seed}, runs);
  const ComparisonReport cmp = compare_distributions(empirical, oracle.distribution, runs, 0);

  SuiteReport report{"strauss-small", cmp.p_value > kSignificance && cmp.total_variation < 0.02,
                     cmp.p_value, {}, count_rows(oracle.distribution.probabilities,
                                                 empirical.probabilities, oracle.std_error)};
  std::ostringstream detail;
  detail << "tv=" << cmp.total_variation << " chi2=" << cmp.statistic
         << " df=" << cmp.degrees_of_freedom;
  report.detail = detail.str();
  return report;
}

SuiteReport gamma_one(std::uint64_t seed) {
  const StraussParams params{Rect::unit(), 20.0, 1.0, 0.15};
  const std::size_t runs = 10'000;
  const CountDistribution empirical =
      empirical_count_distribution({Method::stitch, params, {}, seed}, runs);
  const auto [n_max, tail] = poisson_truncation(20.0, kOracleTailMass);
  const std::vector<double> pmf =
      poisson_pmf(20.0, std::max(n_max, empirical.probabilities.size()));
  const ComparisonReport cmp = compare_distributions(empirical.probabilities, pmf, runs, 0);
  SuiteReport report{"gamma-one", cmp.p_value > kSignificance, cmp.p_value, {},
                     count_rows(pmf, empirical.probabilities, {})};
  std::ostringstream detail;
  detail << "chi2=" << cmp.statistic << " df=" << cmp.degrees_of_freedom << " tail=" << tail;
  report.detail = detail.str();
  return report;
}

SuiteReport hardcore(std::uint64_t seed) {
  const StraussParams params{Rect::unit(), 50.0, 0.0, 0.1};
  const std::size_t runs = 1000;
  std::ostringstream detail;
  bool passed = true;
  for (Method m : {Method::ar, Method::stitch, Method::prs}) {
    const EmpiricalRuns results = run_replicates({m, params, {}, seed}, runs);
    std::size_t violations = 0;
    for (std::size_t c : results.close_pairs) violations += c != 0;
    passed = passed && violations == 0;
    detail << method_name(m) << "_violations=" << violations << ' ';
  }
  return {"hardcore", passed, passed ? 1.0 : 0.0, detail.str(), {}};
}

SuiteReport geometric_trials(std::uint64_t seed) {
  const StraussParams params{Rect::unit(), 3.0, 0.5, 0.3};
  const std::size_t runs = 100'000;
  const OracleEstimate oracle = strauss_count_oracle(params, 100'000, RngStream(seed, 1));
  const EmpiricalRuns results = run_replicates({Method::ar, params, {}, seed}, runs);
  double mean = 0.0;
  for (auto p : results.proposals) mean += static_cast<double>(p);
  mean /= static_cast<double>(runs);
  double var = 0.0;
  for (auto p : results.proposals) var += (static_cast<double>(p) - mean) * (static_cast<double>(p) - mean);
  var /= static_cast<double>(runs - 1);
  const double z = oracle.z_hat;
  const double mean_target = 1.0 / z;
  const double var_target = (1.0 - z) / (z * z);
  const double mean_rel = std::abs(mean - mean_target) / mean_target;
  const double var_rel = std::abs(var - var_target) / var_target;
  std::ostringstream detail;
  detail << "z_hat=" << z << " mean=" << mean << " target=" << mean_target
         << " var=" << var << " var_target=" << var_target;
  return {"geometric-trials", mean_rel < 0.05 && var_rel < 0.15, 1.0, detail.str(), {}};
}

SuiteReport ising_exact(std::uint64_t seed) {
  const std::size_t runs = 100'000;
  const IsingInstance path = IsingInstance::path(4, 2, 0.5);
  const std::vector<double> exact = exact_ising_distribution(path);
  std::vector<double> freq(exact.size(), 0.0);
  for (std::size_t i = 0; i < runs; ++i) {
    RngStream s(seed, i);
    freq[coloring_index(ising_stitch(path, s).colors, path.q)] += 1.0 / static_cast<double>(runs);
  }
  const ComparisonReport cmp = compare_distributions(freq, exact, runs, 0);

  const IsingInstance edge = IsingInstance::path(2, 2, 0.5);
  std::size_t same = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    RngStream s(seed + 1, i);
    const Coloring c = ising_stitch(edge, s).colors;
    same += c[0] == c[1];
  }
  const double p_same = 1.0 / (1.0 + std::exp(-1.0));
  const double sigma = std::sqrt(p_same * (1.0 - p_same) / static_cast<double>(runs));
  const double observed = static_cast<double>(same) / static_cast<double>(runs);
  const bool edge_ok = std::abs(observed - p_same) <= 3.0 * sigma;

  std::ostringstream detail;
  detail << "path4_chi2=" << cmp.statistic << " df=" << cmp.degrees_of_freedom
         << " edge_same=" << observed << " expected=" << p_same;
  return {"ising-exact", cmp.p_value > kSignificance && edge_ok, cmp.p_value, detail.str(),
          count_rows(exact, freq, {})};
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"strauss-small", "ising-exact", "gamma-one",
                                                   "hardcore", "geometric-trials"};
  return names;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
  if (name == "strauss-small") return strauss_small(seed);
  if (name == "ising-exact") return ising_exact(seed);
  if (name == "gamma-one") return gamma_one(seed);
  if (name == "hardcore") return hardcore(seed);
  if (name == "geometric-trials") return geometric_trials(seed);
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

void write_report(std::ostream& out, const SuiteReport& report) {
  out << "n,prob_oracle,prob_empirical,stderr\n";
  for (const ReportRow& row : report.rows) {
    out << row.n << ',' << format_double(row.prob_oracle) << ','
        << format_double(row.prob_empirical) << ',' << format_double(row.std_error) << '\n';
  }
  out << (report.passed ? "PASS" : "FAIL") << " suite=" << report.name
      << " p=" << report.p_value << ' ' << report.detail << '\n';
}

}  // namespace perfsim
