#include "recessim/empirics.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "recessim/errors.hpp"

namespace recessim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NaN" || cell == "nan" || cell == "NA";
}

}  // namespace

LevelsTable load_gdp_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open GDP file '" + path + "'");

  LevelsTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    if (table.countries.empty() && table.years.empty()) {
      if (cells.size() < 2 || cells[0] != "year")
        throw IoError(path + ":1: header must be 'year,<country>,...'");
      std::set<std::string> seen;
      for (std::size_t c = 1; c < cells.size(); ++c) {
        if (cells[c].empty())
          throw IoError(path + ":1: empty country name in header");
        if (!seen.insert(cells[c]).second)
          throw IoError(path + ":1: duplicate country '" + cells[c] + "'");
        table.countries.push_back(cells[c]);
      }
      continue;
    }
    if (cells.size() != table.countries.size() + 1)
      throw IoError(path + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(table.countries.size() + 1) +
                    " cells, got " + std::to_string(cells.size()));
    int year = 0;
    try {
      std::size_t used = 0;
      year = std::stoi(cells[0], &used);
      if (used != cells[0].size()) throw std::invalid_argument(cells[0]);
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(line_no) + ": bad year '" +
                    cells[0] + "'");
    }
    if (!table.years.empty() && year != table.years.back() + 1)
      throw IoError(path + ":" + std::to_string(line_no) +
                    ": years must be consecutive (" +
                    std::to_string(table.years.back()) + " then " +
                    std::to_string(year) + ")");
    table.years.push_back(year);
    std::vector<double> row(table.countries.size(), kNaN);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (is_missing(cells[c])) continue;
      double v = kNaN;
      try {
        std::size_t used = 0;
        v = std::stod(cells[c], &used);
        if (used != cells[c].size()) throw std::invalid_argument(cells[c]);
      } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(line_no) + ": bad value '" +
                      cells[c] + "'");
      }
      if (!(v > 0.0))
        throw IoError(path + ":" + std::to_string(line_no) +
                      ": nonpositive level for '" + table.countries[c - 1] +
                      "'");
      row[c - 1] = v;
    }
    table.values.push_back(std::move(row));
  }
  if (table.countries.empty())
    throw IoError(path + ": no header row found");
  if (table.years.empty()) throw IoError(path + ": no data rows found");
  return table;
}

GrowthTable growth_rates(const LevelsTable& levels) {
  GrowthTable growth;
  growth.countries = levels.countries;
  for (int t = 1; t < levels.n_years(); ++t) {
    growth.years.push_back(levels.years[t]);
    std::vector<double> row(levels.countries.size(), kNaN);
    for (int c = 0; c < levels.n_countries(); ++c) {
      double prev = levels.values[t - 1][c];
      double cur = levels.values[t][c];
      if (std::isnan(prev) || std::isnan(cur) || prev == 0.0) continue;
      row[c] = 100.0 * (cur - prev) / prev;
    }
    growth.values.push_back(std::move(row));
  }
  return growth;
}

RecessionPanel recession_panel(const GrowthTable& growth) {
  RecessionPanel panel;
  panel.years = growth.years;
  panel.countries = growth.countries;
  panel.values.reserve(growth.values.size());
  for (const auto& row : growth.values) {
    std::vector<std::int8_t> out(row.size(), -1);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::isnan(row[c])) continue;
      out[c] = row[c] < 0.0 ? 1 : 0;
    }
    panel.values.push_back(std::move(out));
  }
  return panel;
}

std::vector<int> spell_durations(const RecessionPanel& panel) {
  std::vector<int> durations;
  for (int c = 0; c < panel.n_countries(); ++c) {
    int run = 0;
    for (int t = 0; t < panel.n_years(); ++t) {
      if (panel.values[t][c] == 1) {
        ++run;
      } else {
        if (run > 0) durations.push_back(run);
        run = 0;
      }
    }
    if (run > 0) durations.push_back(run);
  }
  return durations;
}

std::vector<int> wait_times(const RecessionPanel& panel) {
  std::vector<int> waits;
  for (int c = 0; c < panel.n_countries(); ++c) {
    int last = -1;  // year of the country's previous recession, -1 = none yet
    for (int t = 0; t < panel.n_years(); ++t) {
      if (panel.values[t][c] != 1) continue;
      if (last >= 0) waits.push_back(panel.years[t] - last);
      last = panel.years[t];
    }
  }
  return waits;
}

std::vector<std::int64_t> countries_per_year(const RecessionPanel& panel,
                                             int n_countries) {
  std::vector<std::int64_t> hist(static_cast<std::size_t>(n_countries) + 1, 0);
  for (int t = 0; t < panel.n_years(); ++t) {
    int observed = 0;
    int in_recession = 0;
    for (int c = 0; c < panel.n_countries(); ++c) {
      if (panel.values[t][c] == -1) continue;
      ++observed;
      if (panel.values[t][c] == 1) ++in_recession;
    }
    if (observed == 0) continue;
    ++hist[in_recession];
  }
  return hist;
}

std::vector<int> aggregate_recessions(const LevelsTable& levels) {
  std::vector<int> years;
  for (int t = 1; t < levels.n_years(); ++t) {
    double prev_total = 0.0;
    double cur_total = 0.0;
    int present = 0;
    for (int c = 0; c < levels.n_countries(); ++c) {
      double prev = levels.values[t - 1][c];
      double cur = levels.values[t][c];
      if (std::isnan(prev) || std::isnan(cur)) continue;
      prev_total += prev;
      cur_total += cur;
      ++present;
    }
    if (present == 0) continue;
    if (cur_total < prev_total) years.push_back(levels.years[t]);
  }
  return years;
}

StylizedFacts stylized_facts(const LevelsTable& levels) {
  GrowthTable growth = growth_rates(levels);
  RecessionPanel panel = recession_panel(growth);

  StylizedFacts facts;
  facts.counts_hist = countries_per_year(panel, panel.n_countries());
  for (int d : spell_durations(panel)) ++facts.duration_counts[d];
  for (int w : wait_times(panel)) ++facts.wait_counts[w];
  for (const auto& [d, count] : facts.duration_counts)
    facts.total_spells += count;
  facts.aggregate_recession_years = aggregate_recessions(levels);
  for (const auto& row : panel.values) {
    for (std::int8_t v : row) {
      if (v == -1) continue;
      ++facts.observed_country_years;
      if (v == 1) ++facts.recession_country_years;
    }
  }
  return facts;
}

}  // namespace recessim
