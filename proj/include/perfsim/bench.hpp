#ifndef PERFSIM_BENCH_HPP
#define PERFSIM_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "perfsim/strauss.hpp"

namespace perfsim {

struct BenchRecord {
  Method method = Method::ar;
  double lambda = 0.0;
  double gamma = 0.0;
  double r = 0.0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  double seconds = 0.0;  // the timeout budget when timed_out
  std::uint64_t proposals = 0;
  std::uint64_t accept_checks = 0;
  bool timed_out = false;
};

inline constexpr std::string_view kBenchHeader =
    "method,lambda,gamma,r,replicate,seed,seconds,proposals,accept_checks,timed_out";

void write_bench_row(std::ostream& out, const BenchRecord& record);

struct BenchConfig {
  std::vector<Method> methods;
  std::vector<double> lambdas;
  double gamma = 0.0;
  double r = 0.15;
  Rect region = Rect::unit();
  std::size_t reps = 1;
  double timeout_secs = 60.0;
  std::uint64_t seed = 0;
  double base_threshold = 5.0;
  unsigned workers = 1;
};

// "START:STOP:STEP", inclusive of STOP when it lies on the grid.
std::vector<double> parse_lambda_grid(std::string_view text);

// Comma-separated method names; throws on any unknown name.
std::vector<Method> parse_method_list(std::string_view text);

// Runs every (method, lambda, replicate) cell; replicate i uses seed
// config.seed + i on stream 0, so any row can be replayed with
// `sample --seed`. When `out` is given the header and each row are written
// and flushed in (method, lambda, replicate) order as soon as the row and
// all rows before it are complete.
std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* out = nullptr);

struct CellSummary {
  double mean_seconds = 0.0;
  double mean_proposals = 0.0;
  std::size_t runs = 0;
  std::size_t timed_out = 0;
};

using BenchSummary = std::map<std::pair<Method, double>, CellSummary>;

BenchSummary summarize(const std::vector<BenchRecord>& records);

// Least-squares slope of log(mean seconds) against lambda for `method`,
// restricted to lambdas where none of `feasible_with` (nor method itself)
// timed out. Empty when fewer than two lambdas qualify.
std::optional<double> log_time_slope(const BenchSummary& summary, Method method,
                                     const std::vector<Method>& feasible_with);

}  // namespace perfsim

#endif  // PERFSIM_BENCH_HPP
