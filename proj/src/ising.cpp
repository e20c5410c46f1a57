#include "perfsim/ising.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "perfsim/csv.hpp"

namespace perfsim {

void IsingInstance::validate() const {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (!std::isfinite(beta) || beta < 0.0) {
    throw std::invalid_argument("beta must be finite and >= 0");
  }
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u >= num_vertices || v >= num_vertices) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" +
                                  std::to_string(v));
    }
  }
}

IsingInstance IsingInstance::path(std::size_t n, int q, double beta) {
  IsingInstance inst;
  inst.num_vertices = n;
  inst.q = q;
  inst.beta = beta;
  for (std::size_t i = 1; i < n; ++i) {
    inst.edges.emplace_back(static_cast<Vertex>(i - 1), static_cast<Vertex>(i));
  }
  return inst;
}

double ising_weight(const IsingInstance& inst, std::span<const int> colors) {
  if (colors.size() != inst.num_vertices) {
    throw std::invalid_argument("coloring length does not match vertex count");
  }
  std::size_t differing = 0;
  for (auto [u, v] : inst.edges) differing += colors[u] != colors[v];
  return std::exp(-2.0 * inst.beta * static_cast<double>(differing));
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> bisect_vertices(
    std::span<const Vertex> subset) {
  const std::size_t first = (subset.size() + 1) / 2;
  return {{subset.begin(), subset.begin() + first}, {subset.begin() + first, subset.end()}};
}

namespace {

// Recursion tree over contiguous id ranges [lo, hi); index-order bisection
// of a contiguous range is again contiguous.
struct Node {
  Vertex lo, mid, hi;
  int lower = -1, upper = -1;
  std::vector<Edge> cut_edges;
};

class IsingStitcher {
 public:
  explicit IsingStitcher(const IsingInstance& inst, const IsingOptions& options)
      : inst_(inst), options_(options), colors_(inst.num_vertices, 0) {
    if (inst.num_vertices > 0) build(0, static_cast<Vertex>(inst.num_vertices));
  }

  void run(RngStream& s) {
    if (!nodes_.empty()) draw(0, s, 0);
  }

  Coloring& colors() { return colors_; }
  SampleStats& stats() { return stats_; }

 private:
  int build(Vertex lo, Vertex hi) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({lo, lo, hi, -1, -1, {}});
    if (hi - lo >= 2) {
      const Vertex mid = lo + (hi - lo + 1) / 2;
      nodes_[id].mid = mid;
      for (auto [u, v] : inst_.edges) {
        const bool u_low = u >= lo && u < mid, v_low = v >= lo && v < mid;
        const bool u_high = u >= mid && u < hi, v_high = v >= mid && v < hi;
        if ((u_low && v_high) || (u_high && v_low)) nodes_[id].cut_edges.emplace_back(u, v);
      }
      const int lower = build(lo, mid);
      const int upper = build(mid, hi);
      nodes_[id].lower = lower;
      nodes_[id].upper = upper;
    }
    return id;
  }

  void draw(int id, RngStream& s, std::uint32_t depth) {
    stats_.max_recursion_depth = std::max(stats_.max_recursion_depth, depth);
    const Node& node = nodes_[id];
    if (node.hi - node.lo == 1) {
      ++stats_.base_case_calls;
      ++stats_.proposals;
      colors_[node.lo] = uniform_color(s);
      return;
    }
    for (std::uint64_t retry = 0;; ++retry) {
      if (options_.deadline.expired()) throw TimeoutError(stats_);
      RngStream lower_stream = s.child(2 * retry);
      RngStream upper_stream = s.child(2 * retry + 1);
      draw(node.lower, lower_stream, depth + 1);
      draw(node.upper, upper_stream, depth + 1);
      const double u = uniform01(s);
      ++stats_.accept_checks;
      std::size_t differing = 0;
      for (auto [a, b] : node.cut_edges) differing += colors_[a] != colors_[b];
      if (u < std::exp(-2.0 * inst_.beta * static_cast<double>(differing))) return;
    }
  }

  // Unbiased uniform in [0, q) by rejecting the short final block.
  int uniform_color(RngStream& s) const {
    const auto q = static_cast<std::uint64_t>(inst_.q);
    const std::uint64_t threshold = (0 - q) % q;
    std::uint64_t x;
    do {
      x = s.next_u64();
    } while (x < threshold);
    return static_cast<int>(x % q);
  }

  const IsingInstance& inst_;
  const IsingOptions& options_;
  std::vector<Node> nodes_;
  Coloring colors_;
  SampleStats stats_;
};

}  // namespace

IsingDraw ising_stitch(const IsingInstance& inst, RngStream& s,
                       const IsingOptions& options) {
  inst.validate();
  IsingStitcher stitcher(inst, options);
  const auto start = Clock::now();
  stitcher.run(s);
  IsingDraw draw{std::move(stitcher.colors()), stitcher.stats()};
  draw.stats.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return draw;
}

std::uint64_t coloring_index(std::span<const int> colors, int q) {
  std::uint64_t index = 0;
  for (std::size_t i = colors.size(); i-- > 0;) {
    index = index * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(colors[i]);
  }
  return index;
}

std::vector<double> exact_ising_distribution(const IsingInstance& inst) {
  inst.validate();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < inst.num_vertices; ++i) {
    total *= static_cast<std::uint64_t>(inst.q);
    if (total > kMaxEnumeratedColorings) {
      throw std::invalid_argument("too many colorings to enumerate");
    }
  }
  std::vector<double> probs(total);
  Coloring colors(inst.num_vertices, 0);
  double z = 0.0;
  for (std::uint64_t index = 0; index < total; ++index) {
    probs[index] = ising_weight(inst, colors);
    z += probs[index];
    for (std::size_t i = 0; i < colors.size(); ++i) {  // odometer increment
      if (++colors[i] < inst.q) break;
      colors[i] = 0;
    }
  }
  for (double& p : probs) p /= z;
  return probs;
}

IsingInstance read_edge_csv(std::istream& in, int q, double beta,
                            std::size_t min_vertices) {
  const CsvTable table = read_csv(in);
  if (table.header != std::vector<std::string>{"u", "v"}) {
    throw std::invalid_argument("graph CSV header must be exactly u,v");
  }
  IsingInstance inst;
  inst.q = q;
  inst.beta = beta;
  std::size_t max_id_plus_one = 0;
  for (const auto& row : table.rows) {
    const Vertex u = parse_vertex(row[0]);
    const Vertex v = parse_vertex(row[1]);
    inst.edges.emplace_back(u, v);
    max_id_plus_one = std::max<std::size_t>(max_id_plus_one, std::max(u, v) + 1ull);
  }
  inst.num_vertices = std::max(max_id_plus_one, min_vertices);
  inst.validate();
  return inst;
}

}  // namespace perfsim
