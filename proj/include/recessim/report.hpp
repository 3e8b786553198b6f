#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "recessim/engine.hpp"
#include "recessim/params.hpp"

namespace recessim {

// Serializes a simulation report as deterministic JSON (sorted keys, fixed
// float formatting via the library) embedding the configuration, seed and
// schema version so runs are reproducible from the report alone.
std::string simulation_report_json(const ModelParams& params,
                                   const CountryRoster& roster,
                                   std::uint64_t master_seed, int n_runs,
                                   const AggregateStats& stats);

// "value,count" CSV with LF line endings, one row per key in ascending order.
std::string counts_csv(const std::map<int, std::int64_t>& counts,
                       const std::string& value_header);

// Histogram CSV: "countries,years" rows for index 0..n.
std::string histogram_csv(const std::vector<std::int64_t>& hist);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace recessim
