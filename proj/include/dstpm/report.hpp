#pragma once

// JSON run reports and the shell-safe pattern string syntax:
// events "series:symbol", relations ">" (follows), ">=" (contains),
// "~" (overlaps); multi-pair patterns join triples with ",".

#include <json.hpp>

#include "dstpm/core.hpp"
#include "dstpm/miner.hpp"

namespace dstpm {

// Deterministic report: object keys sorted, patterns in canonical order.
// Wall-clock times are intentionally omitted so identical runs produce
// byte-identical JSON; timings go to the bench CSV instead.
nlohmann::json make_report(const MiningConfig& cfg, const MiningResult& result,
                           bool full_detail);

nlohmann::json pattern_result_json(const PatternResult& pr, bool full_detail);

// Parses "C:1" as a single event against the database header.
EventSymbol parse_event(const std::string& text, const SequenceDatabase& db);

// Parses "C:1 > F:1" or "A:1 > B:1, A:1 >= C:1, B:1 ~ C:1" into a canonical
// pattern; the triples must cover every event pair exactly once.
TemporalPattern parse_pattern(const std::string& text, const SequenceDatabase& db);

}  // namespace dstpm
