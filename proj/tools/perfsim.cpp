// perfsim: exact Strauss / Ising sampling, timing sweeps and verification.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "perfsim/bench.hpp"
#include "perfsim/csv.hpp"
#include "perfsim/ising.hpp"
#include "perfsim/strauss.hpp"
#include "perfsim/verify.hpp"

namespace {

using namespace perfsim;

void print_stats(const SampleStats& stats) {
  std::cerr << "proposals=" << stats.proposals << '\n'
            << "accept_checks=" << stats.accept_checks << '\n'
            << "base_case_calls=" << stats.base_case_calls << '\n'
            << "max_recursion_depth=" << stats.max_recursion_depth << '\n'
            << "wall_time=" << format_double(stats.wall_time) << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

struct SampleArgs {
  std::string method = "stitch";
  double lambda = 0.0, gamma = 1.0, r = 0.1, width = 1.0, height = 1.0;
  std::uint64_t seed = 0;
  double base_threshold = 5.0;
  double timeout_secs = 0.0;
  std::string out;
};

int run_sample(const SampleArgs& args) {
  const Method method = parse_method(args.method);
  const StraussParams params{Rect(0.0, 0.0, args.width, args.height), args.lambda, args.gamma,
                             args.r};
  params.validate();
  if (method == Method::prs && args.gamma > 0.0) {
    std::cerr << "warning: prs with gamma > 0 is experimental and not guaranteed exact\n";
  }
  SamplerOptions options;
  options.base_threshold = args.base_threshold;
  if (args.timeout_secs > 0.0) options.deadline = Deadline::after(args.timeout_secs);
  RngStream stream(args.seed, 0);
  try {
    const StraussDraw draw = sample_strauss(method, params, stream, options);
    auto out = open_output(args.out);
    write_points_csv(out, draw.points);
    print_stats(draw.stats);
    std::cerr << "points=" << draw.points.size() << '\n';
  } catch (const TimeoutError& e) {
    std::cerr << "error: timed out after " << args.timeout_secs << " s\n";
    print_stats(e.partial());
    return 3;
  }
  return 0;
}

struct BenchArgs {
  std::string methods;
  std::string grid;
  double gamma = 0.0, r = 0.15;
  std::size_t reps = 1;
  double timeout_secs = 60.0;
  std::uint64_t seed = 0;
  double base_threshold = 5.0;
  unsigned workers = 1;
  std::string out;
};

int run_bench_cmd(const BenchArgs& args) {
  BenchConfig config;
  config.methods = parse_method_list(args.methods);
  config.lambdas = parse_lambda_grid(args.grid);
  config.gamma = args.gamma;
  config.r = args.r;
  config.reps = args.reps;
  config.timeout_secs = args.timeout_secs;
  config.seed = args.seed;
  config.base_threshold = args.base_threshold;
  config.workers = args.workers;
  auto out = open_output(args.out);
  run_bench(config, &out);
  return 0;
}

struct IsingArgs {
  double beta = 0.0;
  int q = 2;
  std::string graph;
  std::size_t vertices = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_ising(const IsingArgs& args) {
  std::ifstream in(args.graph);
  if (!in) throw std::runtime_error("cannot open graph file " + args.graph);
  const IsingInstance inst = read_edge_csv(in, args.q, args.beta, args.vertices);
  RngStream stream(args.seed, 0);
  const IsingDraw draw = ising_stitch(inst, stream);
  auto out = open_output(args.out);
  out << "vertex,color\n";
  for (std::size_t v = 0; v < draw.colors.size(); ++v) out << v << ',' << draw.colors[v] << '\n';
  print_stats(draw.stats);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect simulation of the Strauss process and the Ising/Potts model"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw one Strauss point set to CSV");
  sample_cmd->add_option("--method", sample.method, "ar|stitch|prs|split_once")
      ->check(CLI::IsMember({"ar", "stitch", "prs", "split_once"}));
  sample_cmd->add_option("--lambda", sample.lambda, "Intensity")->required();
  sample_cmd->add_option("--gamma", sample.gamma, "Interaction penalty in [0,1]");
  sample_cmd->add_option("--r", sample.r, "Interaction radius");
  sample_cmd->add_option("--width", sample.width, "Region width");
  sample_cmd->add_option("--height", sample.height, "Region height");
  sample_cmd->add_option("--seed", sample.seed, "Seed");
  sample_cmd->add_option("--base-threshold", sample.base_threshold,
                         "AR base case when lambda*area is at most this");
  sample_cmd->add_option("--timeout-secs", sample.timeout_secs, "Wall-time budget (0 = none)");
  sample_cmd->add_option("--out", sample.out, "Output CSV")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Timing sweep over methods and a lambda grid");
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated methods")->required();
  bench_cmd->add_option("--lambda-grid", bench.grid, "START:STOP:STEP")->required();
  bench_cmd->add_option("--gamma", bench.gamma, "Interaction penalty");
  bench_cmd->add_option("--r", bench.r, "Interaction radius");
  bench_cmd->add_option("--reps", bench.reps, "Replicates per cell")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--timeout-secs", bench.timeout_secs, "Per-run budget")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Base seed; replicate i uses seed+i");
  bench_cmd->add_option("--base-threshold", bench.base_threshold, "Stitching base threshold");
  bench_cmd->add_option("--workers", bench.workers, "Parallel workers");
  bench_cmd->add_option("--out", bench.out, "Output CSV")->required();

  IsingArgs ising;
  auto* ising_cmd = app.add_subcommand("ising", "Draw one Ising/Potts coloring to CSV");
  ising_cmd->add_option("--beta", ising.beta, "Inverse temperature (>= 0)")->required();
  ising_cmd->add_option("--q", ising.q, "Number of colors");
  ising_cmd->add_option("--graph", ising.graph, "Edge CSV with header u,v")->required();
  ising_cmd->add_option("--vertices", ising.vertices, "Minimum vertex count");
  ising_cmd->add_option("--seed", ising.seed, "Seed");
  ising_cmd->add_option("--out", ising.out, "Output CSV")->required();

  std::string suite;
  std::uint64_t verify_seed = kDefaultVerifySeed;
  auto* verify_cmd = app.add_subcommand("verify", "Run a statistical verification suite");
  verify_cmd->add_option("--suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--seed", verify_seed, "Seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample_cmd) return run_sample(sample);
    if (*bench_cmd) return run_bench_cmd(bench);
    if (*ising_cmd) return run_ising(ising);
    if (*verify_cmd) {
      const SuiteReport report = run_suite(suite, verify_seed);
      write_report(std::cout, report);
      return report.passed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
