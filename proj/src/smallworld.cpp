#include "recessim/smallworld.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "recessim/errors.hpp"

namespace recessim {

namespace {

std::pair<int, int> norm_edge(int a, int b) {
  return a < b ? std::pair<int, int>{a, b} : std::pair<int, int>{b, a};
}

}  // namespace

Graph Graph::empty(int n) {
  Graph g;
  g.n = n;
  g.adjacency.assign(static_cast<std::size_t>(n), {});
  return g;
}

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  Graph g;
  g.n = n;
  g.adjacency.assign(static_cast<std::size_t>(n), {});
  for (auto& e : edges) {
    if (e.first == e.second)
      throw ConfigError("self-loop at vertex " + std::to_string(e.first));
    if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
      throw ConfigError("edge endpoint out of range");
    e = norm_edge(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ConfigError("duplicate edge");
  g.edges = std::move(edges);
  for (const auto& [a, b] : g.edges) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
  return g;
}

bool Graph::connected() const {
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<int> q;
  seen[0] = 1;
  q.push(0);
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == n;
}

Graph ring_lattice(int n, int k) {
  if (n < 3) throw ConfigError("ring lattice needs n >= 3");
  if (k < 1) throw ConfigError("ring lattice needs k >= 1");
  if (2 * k >= n) throw ConfigError("ring lattice requires 2k < n");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    for (int d = 1; d <= k; ++d) {
      edges.push_back(norm_edge(i, (i + d) % n));
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

namespace {

// Pairs up the selected edges and exchanges endpoints, keeping every degree
// intact. Both cross-pairings are tried before giving up on a pair.
void swap_rewire(std::vector<std::pair<int, int>>& edges,
                 std::set<std::pair<int, int>>& edge_set,
                 std::vector<int>& selected, RandomStream& rng, int& changed) {
  for (int i = static_cast<int>(selected.size()) - 1; i > 0; --i) {
    int j = rng.uniform_int(0, i);
    std::swap(selected[i], selected[j]);
  }
  for (std::size_t p = 0; p + 1 < selected.size(); p += 2) {
    int i1 = selected[p];
    int i2 = selected[p + 1];
    auto o1 = edges[i1];
    auto o2 = edges[i2];
    int a = o1.first, b = o1.second;
    int c = o2.first, d = o2.second;
    if (rng.bernoulli(0.5)) std::swap(a, b);
    if (rng.bernoulli(0.5)) std::swap(c, d);

    edge_set.erase(o1);
    edge_set.erase(o2);
    const std::pair<int, int> configs[2][2] = {
        {{a, d}, {c, b}},
        {{a, c}, {b, d}},
    };
    bool done = false;
    for (const auto& cfg : configs) {
      if (cfg[0].first == cfg[0].second || cfg[1].first == cfg[1].second)
        continue;
      auto e1 = norm_edge(cfg[0].first, cfg[0].second);
      auto e2 = norm_edge(cfg[1].first, cfg[1].second);
      if (e1 == e2) continue;
      if (edge_set.count(e1) || edge_set.count(e2)) continue;
      edges[i1] = e1;
      edges[i2] = e2;
      edge_set.insert(e1);
      edge_set.insert(e2);
      changed += (e1 != o1) + (e2 != o2);
      done = true;
      break;
    }
    if (!done) {
      edge_set.insert(o1);
      edge_set.insert(o2);
    }
  }
}

// Keeps one endpoint of each selected edge and reattaches the other to a
// uniformly chosen vertex that is neither the kept endpoint nor already a
// neighbor of it. Degrees are free to change.
void endpoint_rewire(std::vector<std::pair<int, int>>& edges, int n,
                     std::set<std::pair<int, int>>& edge_set,
                     const std::vector<int>& selected, RandomStream& rng,
                     int& changed) {
  for (int idx : selected) {
    auto old_edge = edges[idx];
    int keep = rng.bernoulli(0.5) ? old_edge.first : old_edge.second;
    std::vector<int> candidates;
    candidates.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      if (v == keep) continue;
      if (edge_set.count(norm_edge(keep, v))) continue;
      candidates.push_back(v);
    }
    if (candidates.empty()) continue;
    int v = candidates[rng.uniform_int(
        0, static_cast<int>(candidates.size()) - 1)];
    auto new_edge = norm_edge(keep, v);
    edge_set.erase(old_edge);
    edge_set.insert(new_edge);
    edges[idx] = new_edge;
    ++changed;
  }
}

}  // namespace

RewireResult rewire(const Graph& g, double mu, RandomStream& rng,
                    RewiringMode mode) {
  if (mu < 0.0 || mu > 1.0) throw ConfigError("mu must lie in [0, 1]");
  std::vector<std::pair<int, int>> edges = g.edges;
  std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());

  std::vector<int> selected;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (rng.bernoulli(mu)) selected.push_back(static_cast<int>(i));
  }

  RewireResult out;
  out.selected = static_cast<int>(selected.size());
  if (mode == RewiringMode::kDegreePreservingSwap) {
    swap_rewire(edges, edge_set, selected, rng, out.changed);
  } else {
    endpoint_rewire(edges, g.n, edge_set, selected, rng, out.changed);
  }
  out.graph = Graph::from_edges(g.n, std::move(edges));
  return out;
}

double average_path_length(const Graph& g) {
  if (g.n < 2) return 0.0;
  std::vector<int> dist(static_cast<std::size_t>(g.n));
  long long total = 0;
  for (int s = 0; s < g.n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    int seen = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.adjacency[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          total += dist[v];
          ++seen;
          q.push(v);
        }
      }
    }
    if (seen != g.n)
      throw NumericError("average path length undefined: graph disconnected");
  }
  return static_cast<double>(total) /
         (static_cast<double>(g.n) * (g.n - 1));
}

ConnectedGraphResult generate_connected(int n, int k, double mu,
                                        RandomStream& rng, RewiringMode mode,
                                        int max_attempts) {
  if (max_attempts < 1) throw ConfigError("max_attempts must be positive");
  Graph base = ring_lattice(n, k);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    RewireResult rw = rewire(base, mu, rng, mode);
    if (rw.graph.connected()) return {std::move(rw.graph), attempt};
  }
  throw NumericError("no connected graph in " + std::to_string(max_attempts) +
                     " attempts (n=" + std::to_string(n) +
                     ", k=" + std::to_string(k) + ", mu=" + std::to_string(mu) +
                     ")");
}

std::vector<CurvePoint> path_length_curve(int n, int k,
                                          const std::vector<double>& mu_grid,
                                          int realizations, std::uint64_t seed,
                                          RewiringMode mode) {
  if (realizations < 1) throw ConfigError("realizations must be positive");
  RandomStream root(seed);
  std::vector<CurvePoint> out;
  out.reserve(mu_grid.size());
  for (std::size_t m = 0; m < mu_grid.size(); ++m) {
    double sum = 0.0;
    std::int64_t attempts = 0;
    for (int r = 0; r < realizations; ++r) {
      RandomStream rs = root.substream(
          static_cast<std::uint64_t>(m) * realizations + r);
      // Sparse rings at high mu disconnect often; allow a deep retry budget
      // so curve points stay well defined.
      ConnectedGraphResult cg =
          generate_connected(n, k, mu_grid[m], rs, mode, 10000);
      sum += average_path_length(cg.graph);
      attempts += cg.attempts;
    }
    out.push_back({mu_grid[m], sum / realizations, realizations, attempts});
  }
  return out;
}

}  // namespace recessim
