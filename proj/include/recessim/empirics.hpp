#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace recessim {

// Annual GDP levels, NaN = missing observation. Present values are
// strictly positive (enforced at load).
struct LevelsTable {
  std::vector<int> years;
  std::vector<std::string> countries;
  std::vector<std::vector<double>> values;  // values[year_idx][country_idx]

  int n_years() const { return static_cast<int>(years.size()); }
  int n_countries() const { return static_cast<int>(countries.size()); }
};

// Percentage growth rates; row t corresponds to years[t] of the source table
// starting from the second year. NaN where either level is missing.
struct GrowthTable {
  std::vector<int> years;
  std::vector<std::string> countries;
  std::vector<std::vector<double>> values;
};

// Recession indicator: 1 = in recession (growth < 0), 0 = not, -1 = missing.
struct RecessionPanel {
  std::vector<int> years;
  std::vector<std::string> countries;
  std::vector<std::vector<std::int8_t>> values;

  int n_years() const { return static_cast<int>(years.size()); }
  int n_countries() const { return static_cast<int>(countries.size()); }
};

// CSV with header "year,<country>,..."; blank cells, "NaN", "nan" or "NA"
// are missing. Years must be consecutive and increasing.
LevelsTable load_gdp_csv(const std::string& path);

GrowthTable growth_rates(const LevelsTable& levels);

// growth < 0 strictly counts as recession.
RecessionPanel recession_panel(const GrowthTable& growth);

// Maximal runs of consecutive 1s per country, in column-major scan order.
// Missing years break runs.
std::vector<int> spell_durations(const RecessionPanel& panel);

// Differences between successive recession years per country (a wait of 1
// means back-to-back recession years). Years before a country's first
// recession contribute nothing; countries with fewer than two recession
// years contribute nothing.
std::vector<int> wait_times(const RecessionPanel& panel);

// Histogram of the number of countries simultaneously in recession, over the
// years with at least one observed country. Missing observations count as
// not-in-recession; years with no observed country are excluded.
// counts[k] = number of years with exactly k countries in recession.
std::vector<std::int64_t> countries_per_year(const RecessionPanel& panel,
                                             int n_countries);

// Years where total GDP over the countries observed in both the year and its
// predecessor fell. Requires at least one such country; years without any are
// skipped.
std::vector<int> aggregate_recessions(const LevelsTable& levels);

struct StylizedFacts {
  std::vector<std::int64_t> counts_hist;       // index = simultaneous count
  std::map<int, std::int64_t> duration_counts;  // spell length -> count
  std::map<int, std::int64_t> wait_counts;      // wait length -> count
  std::int64_t total_spells = 0;
  std::vector<int> aggregate_recession_years;
  std::int64_t observed_country_years = 0;
  std::int64_t recession_country_years = 0;
};

StylizedFacts stylized_facts(const LevelsTable& levels);

}  // namespace recessim
