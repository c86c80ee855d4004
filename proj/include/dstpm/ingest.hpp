#pragma once

// Database ingestion: the JSONL sequence-database format, CSV raw series,
// and value-to-symbol discretization.
//
// JSONL format (one JSON object per line):
//   header: {"series":["C","D","F","M","I"],"granule_span":15,
//            "tick_unit":"minute","origin":420}
//   rows:   {"granule":1,"events":[{"s":"C","v":"1","start":420,"end":430},...]}
// "origin" (tick at which granule 1 starts) is optional, default 0. Granules
// must be contiguous from 1 and each instance interval must lie within its
// granule's tick window.

#include <iosfwd>
#include <string>
#include <vector>

#include "dstpm/core.hpp"

namespace dstpm {

SequenceDatabase load_sequence_db(const std::string& path);
SequenceDatabase read_sequence_db(std::istream& in, const std::string& origin_name);
void save_sequence_db(const SequenceDatabase& db, const std::string& path);

// Reports core-model invariant violations as human-readable strings; empty
// means valid. Does not throw.
std::vector<std::string> validate_db(const SequenceDatabase& db);

struct RawSeries {
    std::string name;
    std::vector<std::pair<Tick, double>> samples;  // strictly increasing ticks
};

struct SeriesBins {
    std::vector<double> edges;        // sorted; value < edges[i] falls in bin i
    std::vector<std::string> labels;  // edges.size() + 1 labels, unique
};

struct SymbolizationSpec {
    std::vector<SeriesBins> per_series;  // parallel to the series list
    Tick granule_span = 0;
    Tick origin = 0;
    std::string tick_unit = "tick";
};

// CSV with header "tick,series,value"; series appear in first-seen order.
std::vector<RawSeries> load_raw_series_csv(const std::string& path);

// Bins every sample, merges consecutive same-symbol runs into maximal
// instances, and splits instances at granule boundaries. Sample i covers
// [t_i, t_{i+1}); the final sample extends by the trailing sample spacing.
SequenceDatabase symbolize(const std::vector<RawSeries>& series, const SymbolizationSpec& spec);

}  // namespace dstpm
