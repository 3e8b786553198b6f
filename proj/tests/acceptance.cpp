// Acceptance battery: one line per criterion, nonzero exit if any FAIL.
// Criterion 6 needs the real GDP panel, which is not redistributable; it is
// skipped with an explicit marker when the file is absent.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "recessim/empirics.hpp"
#include "recessim/engine.hpp"
#include "recessim/errors.hpp"
#include "recessim/params.hpp"
#include "recessim/report.hpp"
#include "recessim/rng.hpp"
#include "recessim/smallworld.hpp"
#include "recessim/stats.hpp"

using namespace recessim;

namespace {

const std::string kDataDir = RECESSIM_DATA_DIR;
int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << "CRITERION " << criterion << ": " << (pass ? "PASS" : "FAIL")
            << " - " << detail << "\n";
  if (!pass) ++g_failures;
}

void report_skip(int criterion, const std::string& detail) {
  std::cout << "CRITERION " << criterion << ": SKIPPED-NO-DATA - " << detail
            << "\n";
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

void criterion_1() {
  average_path_length(ring_lattice(17, 2));  // warm up
  auto start = std::chrono::steady_clock::now();
  double apl2 = average_path_length(ring_lattice(17, 2));
  double apl1 = average_path_length(ring_lattice(17, 1));
  double ms = elapsed_ms(start);

  bool pass = std::abs(apl2 - 2.5) < 1e-12 && std::abs(apl1 - 4.5) < 1e-12 &&
              ms < 1.0;
  report(1, pass,
         "apl(17,2)=" + fmt(apl2) + " apl(17,1)=" + fmt(apl1) + " in " +
             fmt(ms) + " ms");
}

void criterion_2() {
  auto start = std::chrono::steady_clock::now();
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
  const int realizations = 500;

  auto k2 = path_length_curve(17, 2, grid, realizations, 424242,
                              RewiringMode::kEndpointRewire);
  double lo = k2.front().mean_apl, hi = k2.front().mean_apl;
  for (const auto& pt : k2) {
    lo = std::min(lo, pt.mean_apl);
    hi = std::max(hi, pt.mean_apl);
  }
  bool k2_band = lo >= 2.0 && hi <= 2.5 + 1e-9;
  bool k2_range = (hi - lo) < 0.5;

  auto k1 = path_length_curve(17, 1, {0.0, 0.5, 1.0}, realizations, 424242,
                              RewiringMode::kEndpointRewire);
  bool k1_start = std::abs(k1[0].mean_apl - 4.5) < 1e-9;
  bool k1_decreases = k1[1].mean_apl < 4.5 && k1[2].mean_apl < 4.5;

  double ms = elapsed_ms(start);
  bool pass = k2_band && k2_range && k1_start && k1_decreases && ms < 10000.0;
  report(2, pass,
         "k=2 apl in [" + fmt(lo) + "," + fmt(hi) + "] range " + fmt(hi - lo) +
             "; k=1 at mu=0/0.5/1: " + fmt(k1[0].mean_apl) + "/" +
             fmt(k1[1].mean_apl) + "/" + fmt(k1[2].mean_apl) + "; " + fmt(ms) +
             " ms");
}

void criterion_3() {
  auto start = std::chrono::steady_clock::now();
  ModelParams p;
  CountryRoster roster = load_roster_csv(kDataDir + "/roster_synthetic.csv");
  AggregateStats stats =
      monte_carlo(p, roster.sizes, 5000, 20260814, 1);
  double ms = elapsed_ms(start);

  const double expected[7] = {0.626, 0.217, 0.085, 0.036, 0.017, 0.009, 0.004};
  std::vector<double> shares = stats.duration_shares();
  bool shares_ok = shares.size() >= 7;
  std::string share_text;
  for (int d = 1; d <= 7 && shares_ok; ++d) {
    double s = shares[d - 1];
    share_text += (d > 1 ? "," : "") + fmt(s);
    if (std::abs(s - expected[d - 1]) > 0.02) shares_ok = false;
  }

  double frac_all = stats.frac_all_in_recession();
  bool all17_ok = in_band(frac_all, 0.005, 0.016);

  std::int64_t long_spells = 0, short_spells = 0;
  for (const auto& [d, c] : stats.duration_counts) {
    if (d > 10) long_spells += c;
    if (d >= 1 && d <= 7) short_spells += c;
  }
  double tail_share =
      static_cast<double>(long_spells) / static_cast<double>(stats.total_spells);
  double head_share = static_cast<double>(short_spells) /
                      static_cast<double>(stats.total_spells);
  bool tail_ok = in_band(tail_share, 0.0005, 0.0025);
  bool head_ok = head_share >= 0.99;

  bool spells_ok = in_band(static_cast<double>(stats.total_spells),
                           1169451.0 * 0.9, 1169451.0 * 1.1);

  int max_d = stats.duration_counts.rbegin()->first;
  std::vector<double> xs, ys;
  std::vector<double> counts = counts_in_range(stats.duration_counts, 1, max_d);
  for (int d = 1; d <= max_d; ++d) {
    xs.push_back(d);
    ys.push_back(counts[static_cast<std::size_t>(d - 1)]);
  }
  FitResult fit = nls_exp(xs, ys);
  bool slope_ok = in_band(fit.b, -1.10, -0.95);

  bool runtime_ok = ms < 30000.0;
  bool pass = shares_ok && all17_ok && tail_ok && head_ok && spells_ok &&
              slope_ok && runtime_ok;
  report(3, pass,
         "shares=" + share_text + " frac_all=" + fmt(frac_all) + " tail>" +
             "10=" + fmt(tail_share) + " head<=7=" + fmt(head_share) +
             " spells=" + std::to_string(stats.total_spells) + " slope=" +
             fmt(fit.b) + " in " + fmt(ms) + " ms");
}

void criterion_4() {
  ModelParams p = ablation_params(ModelParams{});
  std::vector<double> sizes(static_cast<std::size_t>(p.n_countries), 1.0);
  AggregateStats stats = monte_carlo(p, sizes, 5000, 20260814, 1);

  std::vector<double> shares = stats.duration_shares();
  double p1 = shares.size() > 0 ? shares[0] : 0.0;
  double p2 = shares.size() > 1 ? shares[1] : 0.0;
  bool p1_ok = std::abs(p1 - 0.83) <= 0.02;
  bool p2_ok = std::abs(p2 - 0.14) <= 0.02;

  // Sup distance between the empirical duration CDF and the geometric law
  // with exit probability 0.8272.
  const double x = 0.8272;
  double cdf = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    cdf += shares[i];
    worst = std::max(
        worst, std::abs(cdf - (1.0 - std::pow(1.0 - x,
                                              static_cast<double>(i + 1)))));
  }
  bool geom_ok = worst <= 0.02;

  bool pass = p1_ok && p2_ok && geom_ok;
  report(4, pass,
         "P(d=1)=" + fmt(p1) + " P(d=2)=" + fmt(p2) + " geom sup-dist=" +
             fmt(worst) + "; max_simultaneous=" +
             std::to_string(stats.max_simultaneous) +
             " (reported, not gated)");
}

void criterion_5() {
  auto start = std::chrono::steady_clock::now();
  std::vector<double> d = {1, 2, 3, 4, 5, 6, 7};
  std::vector<double> y = {164, 58, 20, 6, 5, 1, 1};
  FitResult fit = nls_exp(d, y);
  double ms = elapsed_ms(start);

  bool slope_ok = in_band(fit.b, -1.06, -1.02);
  bool se_ok = in_band(fit.se_b, 0.01, 0.03);
  std::vector<long> rounded;
  for (double f : fit.fitted) rounded.push_back(std::lround(f));
  bool fitted_ok = rounded == std::vector<long>{164, 58, 20, 7, 3, 1, 0};
  bool pass = slope_ok && se_ok && fitted_ok && ms < 1.0;
  std::string fitted_text;
  for (long r : rounded) fitted_text += std::to_string(r) + " ";
  report(5, pass,
         "b=" + fmt(fit.b) + " se_b=" + fmt(fit.se_b) + " fitted=" +
             fitted_text + "in " + fmt(ms) + " ms");
}

void criterion_6() {
  std::string path = kDataDir + "/gdp_actual.csv";
  if (const char* env = std::getenv("RECESSIM_GDP_DATA")) path = env;
  {
    std::ifstream probe(path);
    if (!probe) {
      report_skip(6, "place the historical GDP panel at " + path +
                         " (or set RECESSIM_GDP_DATA) to enable this check");
      return;
    }
  }

  LevelsTable levels = load_gdp_csv(path);
  StylizedFacts facts = stylized_facts(levels);

  bool spells_ok = facts.total_spells == 255;
  const std::int64_t expected_durations[7] = {164, 58, 20, 6, 5, 1, 1};
  bool durations_ok = true;
  for (int d = 1; d <= 7; ++d) {
    auto it = facts.duration_counts.find(d);
    std::int64_t c = it == facts.duration_counts.end() ? 0 : it->second;
    if (c != expected_durations[d - 1]) durations_ok = false;
  }
  bool zero_years_ok =
      !facts.counts_hist.empty() && facts.counts_hist[0] == 40;
  int max_count = 0;
  for (std::size_t k = 0; k < facts.counts_hist.size(); ++k)
    if (facts.counts_hist[k] > 0) max_count = static_cast<int>(k);
  bool max_ok = max_count == 15;
  std::vector<int> expected_years = {1876, 1893, 1908, 1914, 1917, 1919, 1921,
                                     1930, 1931, 1932, 1945, 1946, 1975, 1982};
  bool agg_ok = facts.aggregate_recession_years == expected_years;

  RateFit rate = fit_exp_rate_max_p(expand_counts(facts.counts_hist));
  bool rate_ok = std::abs(rate.rate - 0.26) <= 0.02 && rate.ks.p_value >= 0.5;

  ModelParams p;
  CountryRoster roster = load_roster_csv(kDataDir + "/roster_synthetic.csv");
  AggregateStats model = monte_carlo(p, roster.sizes, 5000, 20260814, 1);

  KsResult counts_ks = ks_two_sample(expand_counts(facts.counts_hist),
                                     expand_counts(model.counts_hist));
  std::map<int, std::int64_t> facts_hist, model_hist;
  for (std::size_t i = 0; i < facts.counts_hist.size(); ++i)
    facts_hist[static_cast<int>(i)] = facts.counts_hist[i];
  for (std::size_t i = 0; i < model.counts_hist.size(); ++i)
    model_hist[static_cast<int>(i)] = model.counts_hist[i];
  int top = std::max(facts_hist.rbegin()->first, model_hist.rbegin()->first);
  double counts_corr = pearson(counts_in_range(facts_hist, 0, top),
                               counts_in_range(model_hist, 0, top));
  bool counts_ok = counts_ks.p_value >= 0.9 && counts_corr >= 0.9;

  int wait_top = std::max(facts.wait_counts.rbegin()->first,
                          model.wait_counts.rbegin()->first);
  double wait_corr = pearson(counts_in_range(facts.wait_counts, 1, wait_top),
                             counts_in_range(model.wait_counts, 1, wait_top));
  std::vector<double> fw, mw;
  for (double v : expand_counts(facts.wait_counts))
    if (v >= 1 && v <= 25) fw.push_back(v);
  for (double v : expand_counts(model.wait_counts))
    if (v >= 1 && v <= 25) mw.push_back(v);
  KsResult wait_ks = ks_two_sample(fw, mw);
  bool waits_ok = wait_corr >= 0.99 && wait_ks.p_value >= 0.4;

  bool pass = spells_ok && durations_ok && zero_years_ok && max_ok && agg_ok &&
              rate_ok && counts_ok && waits_ok;
  report(6, pass,
         "spells=" + std::to_string(facts.total_spells) + " zero_years=" +
             std::to_string(facts.counts_hist.empty() ? 0
                                                      : facts.counts_hist[0]) +
             " max=" + std::to_string(max_count) + " rate=" + fmt(rate.rate) +
             " rate_p=" + fmt(rate.ks.p_value) + " counts_p=" +
             fmt(counts_ks.p_value) + " counts_corr=" + fmt(counts_corr) +
             " wait_corr=" + fmt(wait_corr) + " wait_p=" +
             fmt(wait_ks.p_value));
}

bool check_monotone_cascades() {
  RandomStream rng(606);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 5 + rng.uniform_int(0, 9);
    Graph base = ring_lattice(n, 1);
    RewireResult rw =
        rewire(base, 0.5, rng, RewiringMode::kDegreePreservingSwap);
    std::vector<double> sizes, tau;
    for (int i = 0; i < n; ++i) {
      sizes.push_back(rng.uniform(0.5, 20.0));
      tau.push_back(rng.uniform(0.01, 1.0));
    }
    WorldState small = WorldState::all_clear(n);
    WorldState big = WorldState::all_clear(n);
    for (int i = 0; i < n; ++i) {
      bool lit = rng.bernoulli(0.3);
      small.in_recession[i] = lit ? 1 : 0;
      big.in_recession[i] = (lit || rng.bernoulli(0.25)) ? 1 : 0;
    }
    bool fp = rng.bernoulli(0.5);
    cascade_phase(small, rw.graph, sizes, tau, fp);
    cascade_phase(big, rw.graph, sizes, tau, fp);
    for (int i = 0; i < n; ++i)
      if (small.in_recession[i] && !big.in_recession[i]) return false;
    WorldState again = small;
    if (fp && cascade_phase(again, rw.graph, sizes, tau, true) != 0)
      return false;
  }
  return true;
}

bool check_mass_conservation() {
  std::vector<ModelParams> configs;
  configs.emplace_back();
  configs.push_back(ablation_params(ModelParams{}));
  ModelParams endpoint;
  endpoint.rewiring_mode = RewiringMode::kEndpointRewire;
  configs.push_back(endpoint);
  ModelParams k1;
  k1.k = 1;
  configs.push_back(k1);

  for (const ModelParams& p : configs) {
    std::vector<double> sizes(static_cast<std::size_t>(p.n_countries), 1.0);
    AggregateStats stats = monte_carlo(p, sizes, 25, 99, 2);
    std::int64_t mass = 0;
    for (std::int64_t c : stats.counts_hist) mass += c;
    if (mass != static_cast<std::int64_t>(25) * p.n_steps) return false;
  }
  return true;
}

bool check_parallel_determinism() {
  ModelParams p;
  CountryRoster roster = load_roster_csv(kDataDir + "/roster_synthetic.csv");
  AggregateStats a = monte_carlo(p, roster.sizes, 200, 5150, 1);
  AggregateStats b = monte_carlo(p, roster.sizes, 200, 5150, 4);
  std::string ra = simulation_report_json(p, roster, 5150, 200, a);
  std::string rb = simulation_report_json(p, roster, 5150, 200, b);
  return ra == rb;
}

bool check_extractor_equivalence() {
  RandomStream rng(1337);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + rng.uniform_int(0, 7);
    int t_max = 1 + rng.uniform_int(0, 40);
    Trajectory traj;
    traj.states.resize(static_cast<std::size_t>(t_max));
    for (auto& row : traj.states) {
      row.resize(static_cast<std::size_t>(n));
      for (auto& v : row) v = rng.bernoulli(0.4) ? 1 : 0;
    }
    AggregateStats via_engine = trajectory_stats(traj, n);

    RecessionPanel panel;
    panel.countries.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < t_max; ++t) {
      panel.years.push_back(t);
      panel.values.emplace_back(traj.states[t].begin(), traj.states[t].end());
    }
    std::map<int, std::int64_t> durations, waits;
    for (int d : spell_durations(panel)) ++durations[d];
    for (int w : wait_times(panel)) ++waits[w];
    if (via_engine.duration_counts != durations) return false;
    if (via_engine.wait_counts != waits) return false;
    if (via_engine.counts_hist != countries_per_year(panel, n)) return false;
  }
  return true;
}

bool check_nls_jacobian() {
  std::vector<double> d = {1, 2, 3, 4, 5, 6, 7};
  std::vector<double> y = {164, 58, 20, 6, 5, 1, 1};
  FitResult fit = nls_exp(d, y);
  const double h = 1e-6;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double ja = fit.fitted[i];
    double jb = fit.fitted[i] * d[i];
    double ja_fd = (std::exp(fit.a + h + fit.b * d[i]) -
                    std::exp(fit.a - h + fit.b * d[i])) /
                   (2 * h);
    double jb_fd = (std::exp(fit.a + (fit.b + h) * d[i]) -
                    std::exp(fit.a + (fit.b - h) * d[i])) /
                   (2 * h);
    if (std::abs(ja_fd - ja) / std::abs(ja) > 1e-6) return false;
    if (std::abs(jb_fd - jb) / std::abs(jb) > 1e-6) return false;
  }
  return true;
}

bool check_ks_self_tests() {
  std::vector<double> x = {0.5, 1.5, 2.0, 3.5, 9.0};
  KsResult self = ks_two_sample(x, x);
  if (self.d != 0.0 || self.p_value != 1.0) return false;
  KsResult disjoint = ks_two_sample({1.0, 2.0}, {5.0, 6.0});
  return std::abs(disjoint.d - 1.0) < 1e-12;
}

void criterion_7() {
  bool monotone = check_monotone_cascades();
  bool mass = check_mass_conservation();
  bool parallel = check_parallel_determinism();
  bool extractors = check_extractor_equivalence();
  bool jacobian = check_nls_jacobian();
  bool ks = check_ks_self_tests();
  bool pass = monotone && mass && parallel && extractors && jacobian && ks;
  auto word = [](bool b) { return b ? std::string("ok") : std::string("FAIL"); };
  report(7, pass,
         "cascade-monotone=" + word(monotone) + " mass=" + word(mass) +
             " parallel-determinism=" + word(parallel) + " extractors=" +
             word(extractors) + " jacobian=" + word(jacobian) +
             " ks-self=" + word(ks));
}

}  // namespace

int main() {
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
  } catch (const std::exception& e) {
    std::cout << "ABORTED: " << e.what() << "\n";
    return 1;
  }
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed (or skipped for missing data)\n";
  return 0;
}
