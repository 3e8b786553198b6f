#include "recessim/engine.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "recessim/errors.hpp"
#include "recessim/rng.hpp"
#include "recessim/stats.hpp"

namespace recessim {

double AggregateStats::frac_all_in_recession() const {
  if (n_years == 0) return 0.0;
  return static_cast<double>(years_all_in_recession) /
         static_cast<double>(n_years);
}

std::vector<double> AggregateStats::duration_shares() const {
  std::vector<double> shares;
  if (total_spells == 0 || duration_counts.empty()) return shares;
  shares.assign(static_cast<std::size_t>(duration_counts.rbegin()->first),
                0.0);
  for (const auto& [d, count] : duration_counts) {
    shares[static_cast<std::size_t>(d) - 1] =
        static_cast<double>(count) / static_cast<double>(total_spells);
  }
  return shares;
}

void AggregateStats::merge(const AggregateStats& other) {
  if (counts_hist.size() < other.counts_hist.size())
    counts_hist.resize(other.counts_hist.size(), 0);
  for (std::size_t i = 0; i < other.counts_hist.size(); ++i)
    counts_hist[i] += other.counts_hist[i];
  for (const auto& [d, count] : other.duration_counts)
    duration_counts[d] += count;
  for (const auto& [w, count] : other.wait_counts) wait_counts[w] += count;
  total_spells += other.total_spells;
  years_all_in_recession += other.years_all_in_recession;
  max_simultaneous = std::max(max_simultaneous, other.max_simultaneous);
  n_country_years_in_recession += other.n_country_years_in_recession;
  n_years += other.n_years;
  n_runs += other.n_runs;
  graph_attempts += other.graph_attempts;
}

Trajectory simulate_run(const ModelParams& params,
                        const std::vector<double>& sizes, int run_index,
                        std::uint64_t master_seed) {
  params.validate();
  if (static_cast<int>(sizes.size()) != params.n_countries)
    throw ConfigError("roster size does not match n_countries");

  RandomStream rng(derive_seed(master_seed,
                               static_cast<std::uint64_t>(run_index)));

  Trajectory traj;
  traj.run_index = run_index;

  Graph graph;
  if (params.k == 0) {
    graph = Graph::empty(params.n_countries);
    traj.graph_attempts = 0;
  } else {
    ConnectedGraphResult cg =
        generate_connected(params.n_countries, params.k, params.mu, rng,
                           params.rewiring_mode);
    graph = std::move(cg.graph);
    traj.graph_attempts = cg.attempts;
  }
  traj.graph_edges = graph.edges;

  std::vector<double> run_thresholds;
  const std::vector<double>* fixed = nullptr;
  if (!params.redraw_thresholds_each_step) {
    run_thresholds = draw_thresholds(params, rng);
    fixed = &run_thresholds;
  }

  WorldState state = WorldState::all_clear(params.n_countries);
  traj.states.reserve(static_cast<std::size_t>(params.n_steps));
  for (int t = 0; t < params.n_steps; ++t) {
    step(state, graph, sizes, params, rng, fixed);
    traj.states.push_back(state.in_recession);
  }
  return traj;
}

AggregateStats trajectory_stats(const Trajectory& traj, int n_countries) {
  // Route the simulated history through the same extractors used for
  // observed data, so the two are never computed by different rules.
  RecessionPanel panel;
  panel.countries.resize(static_cast<std::size_t>(n_countries));
  panel.years.resize(traj.states.size());
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    panel.years[t] = static_cast<int>(t);
    std::vector<std::int8_t> row(static_cast<std::size_t>(n_countries), 0);
    for (int c = 0; c < n_countries; ++c)
      row[static_cast<std::size_t>(c)] =
          static_cast<std::int8_t>(traj.states[t][static_cast<std::size_t>(c)]);
    panel.values.push_back(std::move(row));
  }

  AggregateStats stats;
  stats.counts_hist = countries_per_year(panel, n_countries);
  for (int d : spell_durations(panel)) {
    ++stats.duration_counts[d];
    ++stats.total_spells;
  }
  for (int w : wait_times(panel)) ++stats.wait_counts[w];
  stats.years_all_in_recession =
      stats.counts_hist[static_cast<std::size_t>(n_countries)];
  for (std::size_t k = 0; k < stats.counts_hist.size(); ++k) {
    if (stats.counts_hist[k] > 0) stats.max_simultaneous = static_cast<int>(k);
  }
  for (const auto& row : panel.values)
    for (std::int8_t v : row) stats.n_country_years_in_recession += v;
  stats.n_years = static_cast<std::int64_t>(traj.states.size());
  stats.n_runs = 1;
  stats.graph_attempts = traj.graph_attempts;
  return stats;
}

AggregateStats monte_carlo(const ModelParams& params,
                           const std::vector<double>& sizes, int n_runs,
                           std::uint64_t master_seed, int n_threads) {
  params.validate();
  if (n_runs < 1) throw ConfigError("n_runs must be positive");
  if (n_threads < 1) throw ConfigError("n_threads must be positive");
  n_threads = std::min(n_threads, n_runs);

  std::vector<AggregateStats> partial(static_cast<std::size_t>(n_threads));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
  auto worker = [&](int tid) {
    try {
      AggregateStats local;
      for (int r = tid; r < n_runs; r += n_threads) {
        Trajectory traj = simulate_run(params, sizes, r, master_seed);
        local.merge(trajectory_stats(traj, params.n_countries));
      }
      partial[static_cast<std::size_t>(tid)] = std::move(local);
    } catch (...) {
      errors[static_cast<std::size_t>(tid)] = std::current_exception();
    }
  };

  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  // Integer tallies make this merge exact and order-independent, so the
  // aggregate is byte-identical for any thread count.
  AggregateStats total;
  for (auto& p : partial) total.merge(p);
  return total;
}

ModelParams ablation_params(ModelParams p) {
  p.k = 0;
  p.mu = 0.0;
  return p;
}

namespace {

double ks_distance_or_nan(const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.empty() || y.empty())
    return std::numeric_limits<double>::quiet_NaN();
  return ks_two_sample(x, y).d;
}

double pearson_or_nan(const std::vector<double>& x,
                      const std::vector<double>& y) {
  try {
    return pearson(x, y);
  } catch (const NumericError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

int max_key(const std::map<int, std::int64_t>& counts, int fallback) {
  return counts.empty() ? fallback : counts.rbegin()->first;
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<ModelParams>& grid,
                            const std::vector<double>& sizes, int n_runs,
                            std::uint64_t master_seed,
                            const StylizedFacts& targets, int n_threads) {
  if (grid.empty()) throw ConfigError("sweep grid must be non-empty");

  const std::vector<double> target_counts = expand_counts(targets.counts_hist);
  const std::vector<double> target_durations =
      expand_counts(targets.duration_counts);
  const std::vector<double> target_waits = expand_counts(targets.wait_counts);

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const ModelParams& p : grid) {
    SweepRow row;
    row.params = p;
    try {
      // Every row reuses the master seed, so run r sees identical draws
      // across rows and differences are attributable to the parameters.
      AggregateStats stats =
          monte_carlo(p, sizes, n_runs, master_seed, n_threads);
      row.total_spells = stats.total_spells;
      row.frac_all_in_recession = stats.frac_all_in_recession();

      row.ks_counts = ks_distance_or_nan(expand_counts(stats.counts_hist),
                                         target_counts);
      row.ks_durations = ks_distance_or_nan(
          expand_counts(stats.duration_counts), target_durations);
      row.ks_waits =
          ks_distance_or_nan(expand_counts(stats.wait_counts), target_waits);

      int hist_top = std::max(static_cast<int>(stats.counts_hist.size()),
                              static_cast<int>(targets.counts_hist.size())) -
                     1;
      std::map<int, std::int64_t> model_hist, target_hist;
      for (std::size_t i = 0; i < stats.counts_hist.size(); ++i)
        model_hist[static_cast<int>(i)] = stats.counts_hist[i];
      for (std::size_t i = 0; i < targets.counts_hist.size(); ++i)
        target_hist[static_cast<int>(i)] = targets.counts_hist[i];
      row.corr_counts = pearson_or_nan(counts_in_range(model_hist, 0, hist_top),
                                       counts_in_range(target_hist, 0, hist_top));

      int dur_top = std::max(max_key(stats.duration_counts, 1),
                             max_key(targets.duration_counts, 1));
      row.corr_durations =
          pearson_or_nan(counts_in_range(stats.duration_counts, 1, dur_top),
                         counts_in_range(targets.duration_counts, 1, dur_top));

      int wait_top =
          std::max(max_key(stats.wait_counts, 1), max_key(targets.wait_counts, 1));
      row.corr_waits =
          pearson_or_nan(counts_in_range(stats.wait_counts, 1, wait_top),
                         counts_in_range(targets.wait_counts, 1, wait_top));
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace recessim
