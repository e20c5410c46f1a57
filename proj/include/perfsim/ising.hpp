#ifndef PERFSIM_ISING_HPP
#define PERFSIM_ISING_HPP

#include <cstdint>
#include <istream>
#include <span>
#include <utility>
#include <vector>

#include "perfsim/rng.hpp"
#include "perfsim/stats.hpp"

namespace perfsim {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Ferromagnetic Potts model (Ising for q = 2): each edge whose endpoints get
// different colors contributes a factor exp(-2 beta); the reference measure
// is uniform over colorings.
struct IsingInstance {
  std::size_t num_vertices = 0;
  std::vector<Edge> edges;
  int q = 2;
  double beta = 0.0;

  // Throws std::invalid_argument on self-loops, out-of-range or duplicate
  // edges, q < 2, or beta negative / non-finite.
  void validate() const;

  static IsingInstance path(std::size_t n, int q, double beta);
};

using Coloring = std::vector<int>;

struct IsingDraw {
  Coloring colors;
  SampleStats stats;
};

struct IsingOptions {
  Deadline deadline;
};

// exp(-2 beta d), d = number of edges with differing endpoint colors.
double ising_weight(const IsingInstance& inst, std::span<const int> colors);

// Exact draw by stitching over index-order vertex bisections.
IsingDraw ising_stitch(const IsingInstance& inst, RngStream& s,
                       const IsingOptions& options = {});

// Splits a vertex subset (kept in the given order) into its first
// ceil(n/2) and remaining floor(n/2) elements.
std::pair<std::vector<Vertex>, std::vector<Vertex>> bisect_vertices(
    std::span<const Vertex> subset);

inline constexpr std::uint64_t kMaxEnumeratedColorings = 1'000'000;

// Probability of every coloring, indexed in mixed radix with vertex 0 as the
// least significant digit. Throws std::invalid_argument when q^n exceeds
// kMaxEnumeratedColorings.
std::vector<double> exact_ising_distribution(const IsingInstance& inst);

std::uint64_t coloring_index(std::span<const int> colors, int q);

// Edge list CSV with header "u,v". num_vertices becomes max id + 1, or
// `min_vertices` if that is larger.
IsingInstance read_edge_csv(std::istream& in, int q, double beta,
                            std::size_t min_vertices = 0);

}  // namespace perfsim

#endif  // PERFSIM_ISING_HPP
