#include "recessim/report.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "recessim/errors.hpp"
#include "recessim/version.hpp"

namespace recessim {

namespace {

nlohmann::json counts_to_pairs(const std::map<int, std::int64_t>& counts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [value, count] : counts)
    arr.push_back(nlohmann::json::array({value, count}));
  return arr;
}

}  // namespace

std::string simulation_report_json(const ModelParams& params,
                                   const CountryRoster& roster,
                                   std::uint64_t master_seed, int n_runs,
                                   const AggregateStats& stats) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["version"] = kVersion;
  j["seed"] = master_seed;
  j["n_runs"] = n_runs;

  nlohmann::json config;
  config["pi_lo"] = params.pi_lo;
  config["pi_hi"] = params.pi_hi;
  config["rho_lo"] = params.rho_lo;
  config["rho_hi"] = params.rho_hi;
  config["tau_floor"] = params.tau_floor;
  config["k"] = params.k;
  config["mu"] = params.mu;
  config["n_countries"] = params.n_countries;
  config["n_steps"] = params.n_steps;
  config["cascade_fixed_point"] = params.cascade_fixed_point;
  config["redraw_thresholds_each_step"] = params.redraw_thresholds_each_step;
  config["rewiring_mode"] = to_string(params.rewiring_mode);
  j["config"] = config;

  nlohmann::json roster_j;
  roster_j["names"] = roster.names;
  roster_j["sizes"] = roster.sizes;
  j["roster"] = roster_j;

  nlohmann::json results;
  results["counts_hist"] = stats.counts_hist;
  results["duration_counts"] = counts_to_pairs(stats.duration_counts);
  results["wait_counts"] = counts_to_pairs(stats.wait_counts);
  results["total_spells"] = stats.total_spells;
  results["frac_all_in_recession"] = stats.frac_all_in_recession();
  results["years_all_in_recession"] = stats.years_all_in_recession;
  results["max_simultaneous"] = stats.max_simultaneous;
  results["n_country_years_in_recession"] = stats.n_country_years_in_recession;
  results["n_years"] = stats.n_years;
  results["graph_attempts"] = stats.graph_attempts;
  results["duration_shares"] = stats.duration_shares();
  j["results"] = results;

  return j.dump(2) + "\n";
}

std::string counts_csv(const std::map<int, std::int64_t>& counts,
                       const std::string& value_header) {
  std::ostringstream out;
  out << value_header << ",count\n";
  for (const auto& [value, count] : counts) out << value << "," << count << "\n";
  return out.str();
}

std::string histogram_csv(const std::vector<std::int64_t>& hist) {
  std::ostringstream out;
  out << "value,count\n";
  for (std::size_t value = 0; value < hist.size(); ++value)
    out << value << "," << hist[value] << "\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace recessim
