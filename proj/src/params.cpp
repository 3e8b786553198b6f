#include "recessim/params.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "recessim/errors.hpp"

namespace recessim {

std::string to_string(RewiringMode mode) {
  switch (mode) {
    case RewiringMode::kDegreePreservingSwap:
      return "swap";
    case RewiringMode::kEndpointRewire:
      return "endpoint";
  }
  throw ConfigError("unknown rewiring mode");
}

RewiringMode rewiring_mode_from_string(const std::string& name) {
  if (name == "swap") return RewiringMode::kDegreePreservingSwap;
  if (name == "endpoint") return RewiringMode::kEndpointRewire;
  throw ConfigError("rewiring mode must be 'swap' or 'endpoint', got '" +
                    name + "'");
}

void ModelParams::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(pi_lo) || !in_unit(pi_hi) || pi_lo > pi_hi)
    throw ConfigError("entry range requires 0 <= pi_lo <= pi_hi <= 1");
  if (!in_unit(rho_lo) || !in_unit(rho_hi) || rho_lo > rho_hi)
    throw ConfigError("exit range requires 0 <= rho_lo <= rho_hi <= 1");
  if (!in_unit(tau_floor))
    throw ConfigError("tau_floor must lie in [0, 1]");
  if (n_countries < 1)
    throw ConfigError("n_countries must be positive");
  if (k < 0)
    throw ConfigError("k must be non-negative");
  if (k > 0 && n_countries < 3)
    throw ConfigError("a ring lattice needs at least 3 countries");
  if (k > 0 && 2 * k >= n_countries)
    throw ConfigError("ring lattice requires 2k < n_countries");
  if (mu < 0.0 || mu > 1.0)
    throw ConfigError("mu must lie in [0, 1]");
  if (n_steps < 1)
    throw ConfigError("n_steps must be positive");
}

void CountryRoster::validate() const {
  if (names.empty()) throw ConfigError("roster is empty");
  if (names.size() != sizes.size())
    throw ConfigError("roster has " + std::to_string(names.size()) +
                      " names but " + std::to_string(sizes.size()) + " sizes");
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) throw ConfigError("roster contains an empty name");
    if (!seen.insert(name).second)
      throw ConfigError("duplicate roster entry '" + name + "'");
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(sizes[i] > 0.0))
      throw ConfigError("size for '" + names[i] + "' must be positive");
  }
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

CountryRoster load_roster_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open roster file '" + path + "'");

  CountryRoster roster;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (line_no == 1) {
      // header row, expected "country,size"
      continue;
    }
    auto comma = t.find(',');
    if (comma == std::string::npos)
      throw IoError(path + ":" + std::to_string(line_no) +
                    ": expected 'country,size'");
    std::string name = trim(t.substr(0, comma));
    std::string size_str = trim(t.substr(comma + 1));
    try {
      std::size_t used = 0;
      double size = std::stod(size_str, &used);
      if (used != size_str.size()) throw std::invalid_argument(size_str);
      roster.names.push_back(name);
      roster.sizes.push_back(size);
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(line_no) +
                    ": bad size value '" + size_str + "'");
    }
  }
  roster.validate();
  return roster;
}

}  // namespace recessim
