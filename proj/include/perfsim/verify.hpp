#ifndef PERFSIM_VERIFY_HPP
#define PERFSIM_VERIFY_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace perfsim {

struct ReportRow {
  std::size_t n = 0;  // point count, or coloring index for Ising suites
  double prob_oracle = 0.0;
  double prob_empirical = 0.0;
  double std_error = 0.0;
};

struct SuiteReport {
  std::string name;
  bool passed = false;
  double p_value = 1.0;
  std::string detail;
  std::vector<ReportRow> rows;
};

inline constexpr std::uint64_t kDefaultVerifySeed = 20240601;

const std::vector<std::string_view>& suite_names();

// Throws std::invalid_argument for an unknown suite name.
SuiteReport run_suite(std::string_view name, std::uint64_t seed = kDefaultVerifySeed);

// CSV "n,prob_oracle,prob_empirical,stderr" then "PASS|FAIL p=<p> <detail>".
void write_report(std::ostream& out, const SuiteReport& report);

}  // namespace perfsim

#endif  // PERFSIM_VERIFY_HPP
