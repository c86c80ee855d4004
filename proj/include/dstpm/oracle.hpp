#pragma once

// Exhaustive reference miner: no indexes, no candidate gate, no pruning.
// Enumerates realized patterns granule by granule and applies the seasonality
// definitions directly. Relation classification is re-derived from the
// written boundary rules here rather than calling the relations module, so a
// shared bug cannot validate itself.

#include "dstpm/core.hpp"

namespace dstpm {

struct OracleResult {
    std::vector<PatternResult> frequent;  // sorted by (k, events, triples)
};

struct OracleLimits {
    std::size_t max_granules = 200;
    std::size_t max_series = 8;
};

OracleResult brute_force_mine(const SequenceDatabase& db, const MiningConfig& cfg, int max_k,
                              const OracleLimits& limits = {});

}  // namespace dstpm
