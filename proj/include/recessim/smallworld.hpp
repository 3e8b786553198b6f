#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "recessim/params.hpp"
#include "recessim/rng.hpp"

namespace recessim {

// Undirected simple graph. Edges are kept normalized (a < b) and sorted, and
// adjacency lists sorted ascending, so equal graphs have equal representations
// and neighbor sums are evaluated in a fixed order.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adjacency;

  static Graph empty(int n);
  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

  int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
  bool connected() const;
};

// Ring lattice: vertex i connected to i±1,...,i±k (mod n). Degree 2k,
// edge count n*k. Requires n >= 3, k >= 1, 2k < n.
Graph ring_lattice(int n, int k);

struct RewireResult {
  Graph graph;
  int selected = 0;  // edges chosen for rewiring (each with probability mu)
  int changed = 0;   // edges actually replaced
};

// Rewires each edge independently with probability mu.
// kDegreePreservingSwap pairs the selected edges and swaps endpoints
// ((a,b),(c,d) -> (a,d),(c,b)); a swap that would create a self-loop or
// duplicate edge is re-attempted with the alternative cross-pairing and the
// pair is left unchanged if both collide. An odd selection leaves one edge
// unswapped. kEndpointRewire keeps a random endpoint and moves the other to
// a uniformly chosen non-neighbor (classic Watts-Strogatz; degrees change).
RewireResult rewire(const Graph& g, double mu, RandomStream& rng,
                    RewiringMode mode);

// Mean BFS shortest-path length over all unordered vertex pairs.
// Throws NumericError if the graph is disconnected.
double average_path_length(const Graph& g);

struct ConnectedGraphResult {
  Graph graph;
  int attempts = 0;  // rewired graphs generated until a connected one appeared
};

// Regenerates lattice+rewire until connected; throws NumericError after
// max_attempts failures.
ConnectedGraphResult generate_connected(int n, int k, double mu,
                                        RandomStream& rng, RewiringMode mode,
                                        int max_attempts = 100);

struct CurvePoint {
  double mu = 0.0;
  double mean_apl = 0.0;
  int realizations = 0;
  std::int64_t attempts = 0;  // total graphs generated, regeneration included
};

// Mean average-path-length over `realizations` connected graphs per mu.
// Realization r of grid row m uses substream m*realizations + r of `seed`,
// so the curve is independent of evaluation order.
std::vector<CurvePoint> path_length_curve(int n, int k,
                                          const std::vector<double>& mu_grid,
                                          int realizations, std::uint64_t seed,
                                          RewiringMode mode);

}  // namespace recessim
