#pragma once

// Level-wise seasonal pattern mining: single-event extraction over the
// partitioned dataflow, k-event group generation with the maxSeason candidate
// gate, candidate pattern generation with transitive triple verification
// against the level-2 index, and the final frequency filter.

#include <cstdint>

#include "dstpm/core.hpp"
#include "dstpm/dataflow.hpp"
#include "dstpm/hlh.hpp"

namespace dstpm {

struct LevelStats {
    int k = 0;
    std::int64_t groups_generated = 0;  // raw tuples before support filtering
    std::int64_t groups_kept = 0;       // tuples passing the candidate gate
    std::int64_t candidate_patterns = 0;
    std::int64_t frequent_patterns = 0;
};

struct MiningResult {
    std::vector<PatternResult> frequent;  // sorted by (k, events, triples)
    std::vector<LevelStats> levels;
    ExecStats exec;
};

struct MineOptions {
    int partitions = 1;
    bool keep_witnesses = false;
};

MiningResult mine(const SequenceDatabase& db, const MiningConfig& cfg, Executor& exec,
                  const MineOptions& opts = {});

// Level-1 step, exposed for tests: candidate extraction, HLH1 construction,
// and frequent single events.
struct SingleEventResult {
    HLH1 index;
    std::vector<PatternResult> all_candidates;  // frequent flag set per entry
    std::int64_t symbols_seen = 0;              // distinct events before the gate
};
SingleEventResult mine_single_events(const SequenceDatabase& db, const MiningConfig& cfg,
                                     Executor& exec, const std::vector<DataPartition>& parts);

// Ordered k-tuples extending each (k-1)-prefix with a strictly greater single
// event; each unordered k-set appears exactly once.
std::vector<std::vector<EventSymbol>> generate_groups(
    const std::vector<std::vector<EventSymbol>>& prev_tuples,
    const std::vector<EventSymbol>& singles);

}  // namespace dstpm
