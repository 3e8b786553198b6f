#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "recessim/empirics.hpp"
#include "recessim/engine.hpp"
#include "recessim/errors.hpp"
#include "recessim/params.hpp"
#include "recessim/report.hpp"
#include "recessim/smallworld.hpp"
#include "recessim/stats.hpp"
#include "recessim/version.hpp"

namespace {

using nlohmann::json;
using namespace recessim;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::map<int, std::int64_t> counts_from_pairs(const json& arr,
                                              const std::string& context) {
  std::map<int, std::int64_t> counts;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2)
      throw IoError(context + ": count entries must be [value, count] pairs");
    counts[pair.at(0).get<int>()] = pair.at(1).get<std::int64_t>();
  }
  return counts;
}

// Accepts either an analysis facts file or a simulation report (whose
// distributions live under "results"), so reports can be compared to each
// other directly.
StylizedFacts facts_from_json(const json& root, const std::string& path) {
  const json& j = root.contains("results") ? root.at("results") : root;
  StylizedFacts facts;
  try {
    facts.counts_hist = j.at("counts_hist").get<std::vector<std::int64_t>>();
    facts.duration_counts =
        counts_from_pairs(j.at("duration_counts"), path);
    facts.wait_counts = counts_from_pairs(j.at("wait_counts"), path);
    facts.total_spells = j.at("total_spells").get<std::int64_t>();
    if (j.contains("aggregate_recession_years"))
      facts.aggregate_recession_years =
          j.at("aggregate_recession_years").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw IoError(path + ": unexpected schema: " + std::string(e.what()));
  }
  return facts;
}

// Applies ModelParams-mirroring keys from a JSON object. Keys in `skip` are
// handled by the caller; an Option in `cli_owned` with occurrences keeps its
// command-line value (flags override the config file).
void apply_params_json(ModelParams& params, const json& j,
                       const std::string& context,
                       const std::set<std::string>& skip,
                       const std::map<std::string, CLI::Option*>& cli_owned) {
  for (const auto& [key, value] : j.items()) {
    if (skip.count(key)) continue;
    auto owned = cli_owned.find(key);
    if (owned != cli_owned.end() && owned->second != nullptr &&
        owned->second->count() > 0)
      continue;
    try {
      if (key == "pi_lo") {
        params.pi_lo = value.get<double>();
      } else if (key == "pi_hi") {
        params.pi_hi = value.get<double>();
      } else if (key == "rho_lo") {
        params.rho_lo = value.get<double>();
      } else if (key == "rho_hi") {
        params.rho_hi = value.get<double>();
      } else if (key == "tau_floor") {
        params.tau_floor = value.get<double>();
      } else if (key == "k") {
        params.k = value.get<int>();
      } else if (key == "mu") {
        params.mu = value.get<double>();
      } else if (key == "n_countries") {
        params.n_countries = value.get<int>();
      } else if (key == "n_steps") {
        params.n_steps = value.get<int>();
      } else if (key == "cascade_fixed_point") {
        params.cascade_fixed_point = value.get<bool>();
      } else if (key == "redraw_thresholds_each_step") {
        params.redraw_thresholds_each_step = value.get<bool>();
      } else if (key == "rewiring_mode") {
        params.rewiring_mode =
            rewiring_mode_from_string(value.get<std::string>());
      } else {
        throw ConfigError(context + ": unknown key '" + key + "'");
      }
    } catch (const json::exception&) {
      throw ConfigError(context + ": bad value for '" + key + "'");
    }
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

struct SimulateOptions {
  std::string config_path;
  std::string roster_path;
  bool equal_sizes = false;
  int n_runs = 5000;
  std::uint64_t master_seed = 42;
  int threads = 1;
  bool no_network = false;
  std::string out_dir = ".";
  ModelParams params;
  std::vector<double> pi_range;
  std::vector<double> rho_range;
  std::string rewiring_mode;

  std::map<std::string, CLI::Option*> cli_owned;
  CLI::Option* runs_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* roster_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

CountryRoster resolve_roster(const std::string& roster_path, bool equal_sizes,
                             ModelParams& params, bool n_countries_pinned) {
  CountryRoster roster;
  if (equal_sizes) {
    for (int i = 1; i <= params.n_countries; ++i) {
      roster.names.push_back("C" + std::to_string(i));
      roster.sizes.push_back(1.0);
    }
  } else {
    if (roster_path.empty())
      throw ConfigError("a roster is required: pass --roster or --equal-sizes");
    roster = load_roster_csv(roster_path);
    if (n_countries_pinned && roster.size() != params.n_countries)
      throw ConfigError("n_countries=" + std::to_string(params.n_countries) +
                        " does not match roster of " +
                        std::to_string(roster.size()));
    params.n_countries = roster.size();
  }
  roster.validate();
  return roster;
}

int cmd_simulate(SimulateOptions& opt) {
  bool n_countries_pinned = false;
  if (!opt.config_path.empty()) {
    json cfg = load_json_file(opt.config_path);
    if (!cfg.is_object())
      throw ConfigError(opt.config_path + ": config must be a JSON object");
    const std::set<std::string> skip = {"roster_path", "n_runs", "master_seed",
                                        "out_dir", "threads"};
    apply_params_json(opt.params, cfg, opt.config_path, skip, opt.cli_owned);
    if (cfg.contains("n_countries")) n_countries_pinned = true;
    try {
      if (cfg.contains("roster_path") && opt.roster_opt->count() == 0)
        opt.roster_path = cfg.at("roster_path").get<std::string>();
      if (cfg.contains("n_runs") && opt.runs_opt->count() == 0)
        opt.n_runs = cfg.at("n_runs").get<int>();
      if (cfg.contains("master_seed") && opt.seed_opt->count() == 0)
        opt.master_seed = cfg.at("master_seed").get<std::uint64_t>();
      if (cfg.contains("out_dir") && opt.out_opt->count() == 0)
        opt.out_dir = cfg.at("out_dir").get<std::string>();
      if (cfg.contains("threads") && opt.threads_opt->count() == 0)
        opt.threads = cfg.at("threads").get<int>();
    } catch (const json::exception& e) {
      throw ConfigError(opt.config_path + ": " + std::string(e.what()));
    }
  }
  if (!opt.pi_range.empty()) {
    opt.params.pi_lo = opt.pi_range[0];
    opt.params.pi_hi = opt.pi_range[1];
  }
  if (!opt.rho_range.empty()) {
    opt.params.rho_lo = opt.rho_range[0];
    opt.params.rho_hi = opt.rho_range[1];
  }
  if (!opt.rewiring_mode.empty())
    opt.params.rewiring_mode = rewiring_mode_from_string(opt.rewiring_mode);
  if (opt.cli_owned.at("n_countries")->count() > 0) n_countries_pinned = true;

  CountryRoster roster = resolve_roster(opt.roster_path, opt.equal_sizes,
                                        opt.params, n_countries_pinned);
  if (opt.no_network) opt.params = ablation_params(opt.params);
  opt.params.validate();
  if (opt.n_runs < 1) throw ConfigError("--runs must be positive");
  if (opt.threads < 1) throw ConfigError("--threads must be positive");

  AggregateStats stats = monte_carlo(opt.params, roster.sizes, opt.n_runs,
                                     opt.master_seed, opt.threads);

  namespace fs = std::filesystem;
  fs::create_directories(opt.out_dir);
  fs::path out(opt.out_dir);
  write_text_file((out / "report.json").string(),
                  simulation_report_json(opt.params, roster, opt.master_seed,
                                         opt.n_runs, stats));
  write_text_file((out / "counts_hist.csv").string(),
                  histogram_csv(stats.counts_hist));
  write_text_file((out / "durations.csv").string(),
                  counts_csv(stats.duration_counts, "value"));
  write_text_file((out / "waits.csv").string(),
                  counts_csv(stats.wait_counts, "value"));

  std::cout << "runs: " << stats.n_runs << "  years: " << stats.n_years
            << "  spells: " << stats.total_spells << "\n";
  std::cout << "frac_all_in_recession: "
            << format_double(stats.frac_all_in_recession())
            << "  max_simultaneous: " << stats.max_simultaneous << "\n";
  std::vector<double> shares = stats.duration_shares();
  std::cout << "duration shares:";
  for (std::size_t d = 0; d < shares.size() && d < 7; ++d)
    std::cout << " " << format_double(shares[d]);
  std::cout << "\n";
  std::cout << "wrote " << (out / "report.json").string() << ", "
            << (out / "counts_hist.csv").string() << ", "
            << (out / "durations.csv").string() << ", "
            << (out / "waits.csv").string() << "\n";
  return 0;
}

struct AnalyzeOptions {
  std::string gdp_path;
  std::string out_dir = ".";
};

json fit_result_json(const FitResult& fit) {
  json j;
  j["a"] = fit.a;
  j["b"] = fit.b;
  j["se_a"] = fit.se_a;
  j["se_b"] = fit.se_b;
  j["rss"] = fit.rss;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  j["fitted"] = fit.fitted;
  return j;
}

int cmd_analyze(AnalyzeOptions& opt) {
  LevelsTable levels = load_gdp_csv(opt.gdp_path);
  StylizedFacts facts = stylized_facts(levels);

  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["version"] = kVersion;
  j["countries"] = levels.countries;
  j["n_years"] = levels.n_years() - 1;  // years with defined growth
  j["counts_hist"] = facts.counts_hist;
  json dur = json::array();
  for (const auto& [d, c] : facts.duration_counts)
    dur.push_back(json::array({d, c}));
  j["duration_counts"] = dur;
  json waits = json::array();
  for (const auto& [w, c] : facts.wait_counts)
    waits.push_back(json::array({w, c}));
  j["wait_counts"] = waits;
  j["total_spells"] = facts.total_spells;
  j["aggregate_recession_years"] = facts.aggregate_recession_years;
  j["observed_country_years"] = facts.observed_country_years;
  j["recession_country_years"] = facts.recession_country_years;

  // Exponential rate fit on the raw yearly counts-in-recession sample.
  try {
    RateFit rate = fit_exp_rate_max_p(expand_counts(facts.counts_hist));
    json rj;
    rj["rate"] = rate.rate;
    rj["d"] = rate.ks.d;
    rj["p_value"] = rate.ks.p_value;
    j["rate_fit"] = rj;
  } catch (const NumericError&) {
    j["rate_fit"] = nullptr;
  }

  // Exponential regression of spell counts on duration.
  try {
    if (facts.duration_counts.empty()) throw NumericError("no spells");
    int max_d = facts.duration_counts.rbegin()->first;
    std::vector<double> xs, ys;
    std::vector<double> counts = counts_in_range(facts.duration_counts, 1, max_d);
    for (int d = 1; d <= max_d; ++d) {
      xs.push_back(static_cast<double>(d));
      ys.push_back(counts[static_cast<std::size_t>(d - 1)]);
    }
    j["duration_fit"] = fit_result_json(nls_exp(xs, ys));
  } catch (const NumericError&) {
    j["duration_fit"] = nullptr;
  }

  namespace fs = std::filesystem;
  fs::create_directories(opt.out_dir);
  fs::path out(opt.out_dir);
  write_text_file((out / "facts.json").string(), j.dump(2) + "\n");
  write_text_file((out / "counts_hist.csv").string(),
                  histogram_csv(facts.counts_hist));
  write_text_file((out / "durations.csv").string(),
                  counts_csv(facts.duration_counts, "value"));
  write_text_file((out / "waits.csv").string(),
                  counts_csv(facts.wait_counts, "value"));

  std::cout << "countries: " << levels.n_countries()
            << "  years: " << levels.n_years()
            << "  spells: " << facts.total_spells << "\n";
  std::cout << "aggregate recession years:";
  for (int y : facts.aggregate_recession_years) std::cout << " " << y;
  std::cout << "\n";
  std::cout << "wrote " << (out / "facts.json").string() << ", "
            << (out / "counts_hist.csv").string() << ", "
            << (out / "durations.csv").string() << ", "
            << (out / "waits.csv").string() << "\n";
  return 0;
}

struct CompareOptions {
  std::string facts_path;
  std::string report_path;
  std::string out_path = "comparison.json";
};

json ks_block(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || y.empty()) return nullptr;
  KsResult ks = ks_two_sample(x, y);
  json j;
  j["d"] = ks.d;
  j["p_value"] = ks.p_value;
  return j;
}

double correlation_or_nan(const std::map<int, std::int64_t>& a,
                          const std::map<int, std::int64_t>& b, int lo) {
  if (a.empty() || b.empty())
    return std::numeric_limits<double>::quiet_NaN();
  int hi = std::max(a.rbegin()->first, b.rbegin()->first);
  try {
    return pearson(counts_in_range(a, lo, hi), counts_in_range(b, lo, hi));
  } catch (const NumericError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<double> clip_range(const std::vector<double>& sample, double lo,
                               double hi) {
  std::vector<double> out;
  for (double v : sample)
    if (v >= lo && v <= hi) out.push_back(v);
  return out;
}

int cmd_compare(CompareOptions& opt) {
  StylizedFacts actual =
      facts_from_json(load_json_file(opt.facts_path), opt.facts_path);
  StylizedFacts model =
      facts_from_json(load_json_file(opt.report_path), opt.report_path);

  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["version"] = kVersion;

  std::map<int, std::int64_t> actual_hist, model_hist;
  for (std::size_t i = 0; i < actual.counts_hist.size(); ++i)
    actual_hist[static_cast<int>(i)] = actual.counts_hist[i];
  for (std::size_t i = 0; i < model.counts_hist.size(); ++i)
    model_hist[static_cast<int>(i)] = model.counts_hist[i];

  json counts = ks_block(expand_counts(actual.counts_hist),
                         expand_counts(model.counts_hist));
  if (!counts.is_null())
    counts["correlation"] = correlation_or_nan(actual_hist, model_hist, 0);
  j["counts"] = counts;

  json durations = ks_block(expand_counts(actual.duration_counts),
                            expand_counts(model.duration_counts));
  if (!durations.is_null()) {
    durations["correlation"] =
        correlation_or_nan(actual.duration_counts, model.duration_counts, 1);
    json table = json::array();
    int max_d = std::max(actual.duration_counts.rbegin()->first,
                         model.duration_counts.rbegin()->first);
    std::vector<double> av = counts_in_range(actual.duration_counts, 1, max_d);
    std::vector<double> mv = counts_in_range(model.duration_counts, 1, max_d);
    for (int d = 1; d <= max_d; ++d) {
      double ashare = actual.total_spells > 0
                          ? av[static_cast<std::size_t>(d - 1)] /
                                static_cast<double>(actual.total_spells)
                          : 0.0;
      double mshare = model.total_spells > 0
                          ? mv[static_cast<std::size_t>(d - 1)] /
                                static_cast<double>(model.total_spells)
                          : 0.0;
      table.push_back(json::array({d, ashare, mshare}));
    }
    durations["share_table"] = table;
  }
  j["durations"] = durations;

  std::vector<double> actual_waits = expand_counts(actual.wait_counts);
  std::vector<double> model_waits = expand_counts(model.wait_counts);
  json waits = ks_block(actual_waits, model_waits);
  if (!waits.is_null()) {
    waits["correlation"] =
        correlation_or_nan(actual.wait_counts, model.wait_counts, 1);
    json restricted;
    restricted["1_25"] = ks_block(clip_range(actual_waits, 1, 25),
                                  clip_range(model_waits, 1, 25));
    restricted["1_31"] = ks_block(clip_range(actual_waits, 1, 31),
                                  clip_range(model_waits, 1, 31));
    waits["restricted"] = restricted;
  }
  j["waits"] = waits;

  write_text_file(opt.out_path, j.dump(2) + "\n");
  std::cout << "wrote " << opt.out_path << "\n";
  return 0;
}

struct PathlenOptions {
  int n = 17;
  std::vector<int> ks = {2};
  std::vector<double> mu_grid;
  int realizations = 500;
  std::uint64_t seed = 42;
  std::string rewiring_mode = "endpoint";
  std::string out_path = "apl.csv";
};

int cmd_pathlen(PathlenOptions& opt) {
  if (opt.mu_grid.empty()) {
    for (int i = 0; i <= 20; ++i) opt.mu_grid.push_back(i * 0.05);
  }
  RewiringMode mode = rewiring_mode_from_string(opt.rewiring_mode);

  std::ostringstream out;
  out << "k,mu,mean_apl,realizations,attempts\n";
  for (int k : opt.ks) {
    std::vector<CurvePoint> curve = path_length_curve(
        opt.n, k, opt.mu_grid, opt.realizations, opt.seed, mode);
    for (const CurvePoint& pt : curve) {
      out << k << "," << format_double(pt.mu) << ","
          << format_double(pt.mean_apl) << "," << pt.realizations << ","
          << pt.attempts << "\n";
      std::cout << "k=" << k << " mu=" << format_double(pt.mu)
                << " mean_apl=" << format_double(pt.mean_apl) << "\n";
    }
  }
  write_text_file(opt.out_path, out.str());
  std::cout << "wrote " << opt.out_path << "\n";
  return 0;
}

struct SweepOptions {
  std::string grid_path;
  std::string targets_path;
  std::string roster_path;
  bool equal_sizes = false;
  int n_runs = 500;
  std::uint64_t master_seed = 42;
  int threads = 1;
  std::string out_path = "sweep.csv";
  ModelParams base;
  std::map<std::string, CLI::Option*> cli_owned;
};

int cmd_sweep(SweepOptions& opt) {
  json grid_json = load_json_file(opt.grid_path);
  if (!grid_json.is_array() || grid_json.empty())
    throw ConfigError(opt.grid_path +
                      ": grid must be a non-empty JSON array of objects");
  StylizedFacts targets =
      facts_from_json(load_json_file(opt.targets_path), opt.targets_path);

  CountryRoster roster =
      resolve_roster(opt.roster_path, opt.equal_sizes, opt.base, false);
  opt.base.n_countries = roster.size();

  std::vector<ModelParams> grid;
  for (std::size_t i = 0; i < grid_json.size(); ++i) {
    const json& row = grid_json[i];
    if (!row.is_object())
      throw ConfigError(opt.grid_path + ": grid entry " + std::to_string(i) +
                        " is not an object");
    ModelParams p = opt.base;
    apply_params_json(p, row, opt.grid_path + " entry " + std::to_string(i),
                      {}, {});
    // Not validated here: a bad grid point becomes an error column in its
    // output row rather than aborting the whole sweep.
    grid.push_back(p);
  }
  if (opt.n_runs < 1) throw ConfigError("--runs must be positive");
  if (opt.threads < 1) throw ConfigError("--threads must be positive");

  std::vector<SweepRow> rows = sweep(grid, roster.sizes, opt.n_runs,
                                     opt.master_seed, targets, opt.threads);

  std::ostringstream out;
  out << "index,mu,k,tau_floor,pi_lo,pi_hi,rho_lo,rho_hi,"
         "cascade_fixed_point,redraw_thresholds_each_step,rewiring_mode,"
         "ks_counts,ks_durations,ks_waits,"
         "corr_counts,corr_durations,corr_waits,"
         "total_spells,frac_all_in_recession,error\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    out << i << "," << format_double(r.params.mu) << "," << r.params.k << ","
        << format_double(r.params.tau_floor) << ","
        << format_double(r.params.pi_lo) << ","
        << format_double(r.params.pi_hi) << ","
        << format_double(r.params.rho_lo) << ","
        << format_double(r.params.rho_hi) << ","
        << (r.params.cascade_fixed_point ? 1 : 0) << ","
        << (r.params.redraw_thresholds_each_step ? 1 : 0) << ","
        << to_string(r.params.rewiring_mode) << ","
        << format_double(r.ks_counts) << "," << format_double(r.ks_durations)
        << "," << format_double(r.ks_waits) << ","
        << format_double(r.corr_counts) << ","
        << format_double(r.corr_durations) << ","
        << format_double(r.corr_waits) << "," << r.total_spells << ","
        << format_double(r.frac_all_in_recession) << "," << csv_quote(r.error)
        << "\n";
  }
  write_text_file(opt.out_path, out.str());
  std::cout << "scored " << rows.size() << " grid points, wrote "
            << opt.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recession cascade simulator and analysis toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SimulateOptions sim_opt;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Run the Monte Carlo simulation and write reports");
  sim->add_option("--config", sim_opt.config_path,
                  "JSON config file (flags override it)");
  sim_opt.roster_opt =
      sim->add_option("--roster", sim_opt.roster_path,
                      "country,size CSV of economy weights");
  CLI::Option* sim_equal = sim->add_flag("--equal-sizes", sim_opt.equal_sizes,
                                         "use a uniform-size roster");
  sim_opt.roster_opt->excludes(sim_equal);
  sim_opt.runs_opt =
      sim->add_option("--runs", sim_opt.n_runs, "number of Monte Carlo runs");
  sim_opt.seed_opt =
      sim->add_option("--seed", sim_opt.master_seed, "master RNG seed");
  sim_opt.threads_opt =
      sim->add_option("--threads", sim_opt.threads, "worker thread count");
  sim_opt.out_opt =
      sim->add_option("--out", sim_opt.out_dir, "output directory");
  sim_opt.cli_owned["mu"] =
      sim->add_option("--mu", sim_opt.params.mu, "edge rewiring probability");
  sim_opt.cli_owned["k"] =
      sim->add_option("--k", sim_opt.params.k, "lattice neighbors per side");
  sim_opt.cli_owned["tau_floor"] = sim->add_option(
      "--tau-floor", sim_opt.params.tau_floor, "threshold range lower bound");
  sim_opt.cli_owned["n_steps"] =
      sim->add_option("--steps", sim_opt.params.n_steps, "years per run");
  sim_opt.cli_owned["n_countries"] = sim->add_option(
      "--countries", sim_opt.params.n_countries, "number of countries");
  CLI::Option* pi_opt =
      sim->add_option("--pi", sim_opt.pi_range, "entry probability range lo,hi")
          ->delimiter(',')
          ->expected(2);
  sim_opt.cli_owned["pi_lo"] = pi_opt;
  sim_opt.cli_owned["pi_hi"] = pi_opt;
  CLI::Option* rho_opt =
      sim->add_option("--rho", sim_opt.rho_range, "exit probability range lo,hi")
          ->delimiter(',')
          ->expected(2);
  sim_opt.cli_owned["rho_lo"] = rho_opt;
  sim_opt.cli_owned["rho_hi"] = rho_opt;
  sim->add_flag("--no-network", sim_opt.no_network,
                "ablation: k=0, mu=0, cascade inert");
  sim_opt.cli_owned["cascade_fixed_point"] =
      sim->add_flag("--fixed-point,!--no-fixed-point",
                    sim_opt.params.cascade_fixed_point,
                    "iterate the cascade to its within-step fixed point");
  sim_opt.cli_owned["redraw_thresholds_each_step"] = sim->add_flag(
      "--redraw-thresholds,!--no-redraw-thresholds",
      sim_opt.params.redraw_thresholds_each_step,
      "redraw thresholds every step instead of once per run");
  sim_opt.cli_owned["rewiring_mode"] =
      sim->add_option("--rewiring-mode", sim_opt.rewiring_mode,
                      "swap (degree-preserving) or endpoint")
          ->check(CLI::IsMember({"swap", "endpoint"}));
  sim->callback([&sim_opt]() { cmd_simulate(sim_opt); });

  AnalyzeOptions an_opt;
  CLI::App* an = app.add_subcommand(
      "analyze", "Extract recession statistics from a GDP CSV");
  an->add_option("--gdp", an_opt.gdp_path, "year,country,... levels CSV")
      ->required();
  an->add_option("--out", an_opt.out_dir, "output directory");
  an->callback([&an_opt]() { cmd_analyze(an_opt); });

  CompareOptions cmp_opt;
  CLI::App* cmp = app.add_subcommand(
      "compare", "Score a simulation report against analysis facts");
  cmp->add_option("--facts", cmp_opt.facts_path, "facts JSON from analyze")
      ->required();
  cmp->add_option("--report", cmp_opt.report_path,
                  "report JSON from simulate")
      ->required();
  cmp->add_option("--out", cmp_opt.out_path, "comparison JSON path");
  cmp->callback([&cmp_opt]() { cmd_compare(cmp_opt); });

  PathlenOptions pl_opt;
  CLI::App* pl = app.add_subcommand(
      "pathlen", "Average path length of rewired ring lattices over mu");
  pl->add_option("--n", pl_opt.n, "vertex count");
  pl->add_option("--k", pl_opt.ks, "lattice neighbors per side (repeatable)");
  pl->add_option("--mu", pl_opt.mu_grid,
                 "rewiring probabilities (default 0,0.05,...,1)");
  pl->add_option("--realizations", pl_opt.realizations,
                 "graphs averaged per grid point");
  pl->add_option("--seed", pl_opt.seed, "master RNG seed");
  pl->add_option("--rewiring-mode", pl_opt.rewiring_mode,
                 "swap (degree-preserving) or endpoint")
      ->check(CLI::IsMember({"swap", "endpoint"}));
  pl->add_option("--out", pl_opt.out_path, "output CSV path");
  pl->callback([&pl_opt]() { cmd_pathlen(pl_opt); });

  SweepOptions sw_opt;
  CLI::App* sw = app.add_subcommand(
      "sweep", "Score a parameter grid against target distributions");
  sw->add_option("--grid", sw_opt.grid_path,
                 "JSON array of parameter overrides")
      ->required();
  sw->add_option("--targets", sw_opt.targets_path,
                 "facts or report JSON with target distributions")
      ->required();
  sw->add_option("--roster", sw_opt.roster_path,
                 "country,size CSV of economy weights");
  sw->add_flag("--equal-sizes", sw_opt.equal_sizes,
               "use a uniform-size roster");
  sw->add_option("--runs", sw_opt.n_runs, "Monte Carlo runs per grid point");
  sw->add_option("--seed", sw_opt.master_seed, "master RNG seed");
  sw->add_option("--threads", sw_opt.threads, "worker thread count");
  sw->add_option("--out", sw_opt.out_path, "output CSV path");
  sw->callback([&sw_opt]() { cmd_sweep(sw_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const recessim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const recessim::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const recessim::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
