#include "perfsim/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "perfsim/csv.hpp"

namespace perfsim {

void write_bench_row(std::ostream& out, const BenchRecord& rec) {
  out << method_name(rec.method) << ',' << format_double(rec.lambda) << ','
      << format_double(rec.gamma) << ',' << format_double(rec.r) << ','
      << rec.replicate << ',' << rec.seed << ',' << format_double(rec.seconds) << ','
      << rec.proposals << ',' << rec.accept_checks << ','
      << (rec.timed_out ? "true" : "false") << '\n';
}

std::vector<double> parse_lambda_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw std::invalid_argument("lambda grid must be START:STOP:STEP");
  const double first = parse_double(parts[0]);
  const double last = parse_double(parts[1]);
  const double step = parse_double(parts[2]);
  if (!(step > 0.0) || !(last >= first) || first < 0.0 || !std::isfinite(last)) {
    throw std::invalid_argument("lambda grid needs 0 <= START <= STOP and STEP > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
  std::vector<double> grid;
  for (std::size_t i = 0; i < count; ++i) grid.push_back(first + static_cast<double>(i) * step);
  return grid;
}

std::vector<Method> parse_method_list(std::string_view text) {
  std::vector<Method> methods;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    methods.push_back(parse_method(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return methods;
}

namespace {

BenchRecord run_cell(const BenchConfig& config, Method method, double lambda,
                     std::size_t replicate) {
  BenchRecord rec;
  rec.method = method;
  rec.lambda = lambda;
  rec.gamma = config.gamma;
  rec.r = config.r;
  rec.replicate = replicate;
  rec.seed = config.seed + replicate;

  StraussParams params{config.region, lambda, config.gamma, config.r};
  SamplerOptions options;
  options.base_threshold = config.base_threshold;
  options.deadline = Deadline::after(config.timeout_secs);
  RngStream stream(rec.seed, 0);
  try {
    const StraussDraw draw = sample_strauss(method, params, stream, options);
    rec.seconds = draw.stats.wall_time;
    rec.proposals = draw.stats.proposals;
    rec.accept_checks = draw.stats.accept_checks;
  } catch (const TimeoutError& e) {
    rec.timed_out = true;
    rec.seconds = config.timeout_secs;
    rec.proposals = e.partial().proposals;
    rec.accept_checks = e.partial().accept_checks;
  }
  return rec;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config, std::ostream* out) {
  if (config.methods.empty() || config.lambdas.empty()) {
    throw std::invalid_argument("bench needs at least one method and one lambda");
  }
  if (config.reps < 1) throw std::invalid_argument("bench needs reps >= 1");
  if (!(config.timeout_secs > 0.0)) throw std::invalid_argument("timeout must be > 0");
  for (double lambda : config.lambdas) StraussParams{config.region, lambda, config.gamma, config.r}.validate();

  struct Task {
    Method method;
    double lambda;
    std::size_t replicate;
  };
  std::vector<Task> tasks;
  for (Method m : config.methods) {
    for (double lambda : config.lambdas) {
      for (std::size_t rep = 0; rep < config.reps; ++rep) tasks.push_back({m, lambda, rep});
    }
  }

  std::vector<BenchRecord> records(tasks.size());
  std::vector<char> done(tasks.size(), 0);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  if (out) *out << kBenchHeader << '\n' << std::flush;
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      BenchRecord rec = run_cell(config, tasks[i].method, tasks[i].lambda, tasks[i].replicate);
      std::lock_guard lock(mutex);
      records[i] = rec;
      done[i] = 1;
      ready.notify_one();
    }
  };

  const unsigned workers = std::max(1u, config.workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  {
    std::unique_lock lock(mutex);
    for (std::size_t written = 0; written < tasks.size(); ++written) {
      ready.wait(lock, [&] { return done[written] != 0; });
      if (out) {
        write_bench_row(*out, records[written]);
        out->flush();
      }
    }
  }
  for (auto& t : pool) t.join();
  return records;
}

BenchSummary summarize(const std::vector<BenchRecord>& records) {
  BenchSummary summary;
  for (const BenchRecord& rec : records) {
    CellSummary& cell = summary[{rec.method, rec.lambda}];
    cell.mean_seconds += rec.seconds;
    cell.mean_proposals += static_cast<double>(rec.proposals);
    ++cell.runs;
    cell.timed_out += rec.timed_out;
  }
  for (auto& [key, cell] : summary) {
    cell.mean_seconds /= static_cast<double>(cell.runs);
    cell.mean_proposals /= static_cast<double>(cell.runs);
  }
  return summary;
}

std::optional<double> log_time_slope(const BenchSummary& summary, Method method,
                                     const std::vector<Method>& feasible_with) {
  std::vector<double> xs, ys;
  for (const auto& [key, cell] : summary) {
    if (key.first != method || cell.timed_out > 0 || !(cell.mean_seconds > 0.0)) continue;
    const double lambda = key.second;
    const bool feasible = std::all_of(feasible_with.begin(), feasible_with.end(), [&](Method other) {
      const auto it = summary.find({other, lambda});
      return it != summary.end() && it->second.timed_out == 0;
    });
    if (!feasible) continue;
    xs.push_back(lambda);
    ys.push_back(std::log(cell.mean_seconds));
  }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace perfsim
