#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "recessim/empirics.hpp"
#include "recessim/model.hpp"
#include "recessim/params.hpp"
#include "recessim/smallworld.hpp"

namespace recessim {

// One simulated history: states[t][i] = 1 if country i is in recession in
// year t.
struct Trajectory {
  std::vector<std::vector<std::uint8_t>> states;
  int run_index = 0;
  std::vector<std::pair<int, int>> graph_edges;
  int graph_attempts = 1;
};

// Tallies pooled over runs. All counters are integers so aggregation across
// threads is exact and order-independent.
struct AggregateStats {
  std::vector<std::int64_t> counts_hist;        // simultaneous-count histogram
  std::map<int, std::int64_t> duration_counts;  // spell length -> count
  std::map<int, std::int64_t> wait_counts;      // wait -> count
  std::int64_t total_spells = 0;
  std::int64_t years_all_in_recession = 0;
  int max_simultaneous = 0;
  std::int64_t n_country_years_in_recession = 0;
  std::int64_t n_years = 0;  // pooled over runs
  int n_runs = 0;
  std::int64_t graph_attempts = 0;

  double frac_all_in_recession() const;
  std::vector<double> duration_shares() const;
  void merge(const AggregateStats& other);
};

// Runs one history from the all-clear state. Run r of master seed s uses
// substream r: graph generation first, then (in fixed-threshold mode) the
// run's thresholds, then per-step draws. k = 0 yields the empty graph and
// skips the connectivity requirement.
Trajectory simulate_run(const ModelParams& params,
                        const std::vector<double>& sizes, int run_index,
                        std::uint64_t master_seed);

// Extracts the same statistics from a trajectory that the empirical
// extractors produce from data (durations, waits, per-year counts), so model
// and data go through one code path.
AggregateStats trajectory_stats(const Trajectory& traj, int n_countries);

AggregateStats monte_carlo(const ModelParams& params,
                           const std::vector<double>& sizes, int n_runs,
                           std::uint64_t master_seed, int n_threads = 1);

// Same model with the network silenced: k = 0, mu = 0, cascade inert.
ModelParams ablation_params(ModelParams p);

// One scored grid point: the parameters it ran with, KS distances and
// Pearson correlations of the simulated histograms against the targets,
// and a few headline aggregates. Correlations are NaN when undefined
// (degenerate histogram).
struct SweepRow {
  ModelParams params;
  double ks_counts = 0.0;
  double ks_durations = 0.0;
  double ks_waits = 0.0;
  double corr_counts = 0.0;
  double corr_durations = 0.0;
  double corr_waits = 0.0;
  std::int64_t total_spells = 0;
  double frac_all_in_recession = 0.0;
  std::string error;  // empty on success
};

// Scores each grid point against the target distributions. Every row reuses
// the same master seed so rows differ only through the parameters; a row
// that throws records the message instead of aborting the sweep.
std::vector<SweepRow> sweep(const std::vector<ModelParams>& grid,
                            const std::vector<double>& sizes, int n_runs,
                            std::uint64_t master_seed,
                            const StylizedFacts& targets, int n_threads = 1);

}  // namespace recessim
