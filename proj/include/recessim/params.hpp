#pragma once

#include <string>
#include <vector>

namespace recessim {

enum class RewiringMode {
  kDegreePreservingSwap,  // pairwise edge swaps, every degree preserved
  kEndpointRewire,        // classic Watts-Strogatz single-endpoint rewiring
};

std::string to_string(RewiringMode mode);
RewiringMode rewiring_mode_from_string(const std::string& name);

// Model parameters. Defaults are the published calibration:
// pi ~ U[0.01,0.11], rho ~ U[0.76,1.0], tau ~ U[0.1,1], k=2, mu=0.08,
// 17 countries, 136 steps.
struct ModelParams {
  double pi_lo = 0.01;
  double pi_hi = 0.11;
  double rho_lo = 0.76;
  double rho_hi = 1.0;
  double tau_floor = 0.1;
  int k = 2;       // lattice neighbors per side; degree = 2k
  double mu = 0.08;
  int n_countries = 17;
  int n_steps = 136;
  // Iterate the within-step cascade until no country changes. Off = a single
  // synchronous pass over the post-stochastic state.
  bool cascade_fixed_point = true;
  // Redraw each country's threshold every step instead of once per run.
  bool redraw_thresholds_each_step = false;
  RewiringMode rewiring_mode = RewiringMode::kDegreePreservingSwap;

  // Throws ConfigError with a field-level message on any violated invariant.
  void validate() const;
};

// Country names and economy-size weights used by the cascade.
struct CountryRoster {
  std::vector<std::string> names;
  std::vector<double> sizes;

  int size() const { return static_cast<int>(names.size()); }
  // names unique, sizes positive, lengths equal
  void validate() const;
};

// Reads a `country,size` CSV (header required).
CountryRoster load_roster_csv(const std::string& path);

}  // namespace recessim
