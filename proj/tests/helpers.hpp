#pragma once

// Shared test utilities: the bundled fixture database, tiny constructors, a
// seeded random-database generator for property sweeps, and canonical string
// keys for whole-result comparisons.

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dstpm/core.hpp"
#include "dstpm/ingest.hpp"
#include "dstpm/miner.hpp"
#include "dstpm/oracle.hpp"

namespace dstpm::testing {

inline std::string table1_path() { return std::string(DSTPM_DATA_DIR) + "/table1.jsonl"; }

inline SequenceDatabase load_table1() { return load_sequence_db(table1_path()); }

// Thresholds of the worked fixture example: maxPeriod=2, minDensity=3,
// distInterval=[4,10], minSeason=2.
inline MiningConfig fixture_config(int max_k = 2) {
    MiningConfig cfg;
    cfg.max_period = 2;
    cfg.min_density = 3;
    cfg.min_season = 2;
    cfg.dist_min = 4;
    cfg.dist_max = 10;
    cfg.max_k = max_k;
    return cfg;
}

inline EventSymbol sym(int series_index, const std::string& series, const std::string& symbol) {
    return {series_index, series, symbol};
}

inline EventInstance inst(const EventSymbol& e, Tick start, Tick end, GranulePos g = 1) {
    return {e, {start, end}, g};
}

// Small random database: each (granule, series) draws 0..2 instances with
// random intervals inside the granule window. Raw mt19937_64 draws keep it
// platform-deterministic.
inline SequenceDatabase random_db(std::uint64_t seed, int granules, int series_count,
                                  int alphabet_size = 2, Tick span = 12) {
    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t bound) { return bound ? rng() % bound : 0; };
    SequenceDatabase db;
    db.granule_span = span;
    for (int s = 0; s < series_count; ++s)
        db.series.push_back({"S" + std::to_string(s), {}});
    std::vector<std::set<std::string>> alphabets(static_cast<std::size_t>(series_count));
    for (int g = 1; g <= granules; ++g) {
        TemporalSequence seq;
        seq.granule = static_cast<GranulePos>(g);
        const Tick base = db.granule_start(seq.granule);
        for (int s = 0; s < series_count; ++s) {
            const std::uint64_t count = draw(3);
            for (std::uint64_t i = 0; i < count; ++i) {
                const std::string symbol = std::to_string(draw(static_cast<std::uint64_t>(alphabet_size)));
                const Tick start = static_cast<Tick>(draw(static_cast<std::uint64_t>(span - 1)));
                const Tick len = 1 + static_cast<Tick>(draw(static_cast<std::uint64_t>(span - start - 1)));
                seq.instances.push_back(
                    {{s, db.series[static_cast<std::size_t>(s)].name, symbol},
                     {base + start, base + start + len},
                     seq.granule});
                alphabets[static_cast<std::size_t>(s)].insert(symbol);
            }
        }
        canonical_order(seq.instances);
        db.sequences.push_back(std::move(seq));
    }
    for (std::size_t i = 0; i < db.series.size(); ++i)
        db.series[i].alphabet.assign(alphabets[i].begin(), alphabets[i].end());
    return db;
}

inline std::string support_str(const SupportSet& s) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
    out << "}";
    return out.str();
}

inline std::string result_key(const PatternResult& pr) {
    std::ostringstream out;
    out << pr.pattern.display() << " sup=" << support_str(pr.support) << " seasons=[";
    for (std::size_t i = 0; i < pr.seasons.season_count(); ++i)
        out << (i ? "," : "") << support_str(pr.seasons.season(i));
    out << "]";
    return out.str();
}

template <class Results>
inline std::vector<std::string> result_keys(const Results& results) {
    std::vector<std::string> out;
    for (const PatternResult& pr : results) out.push_back(result_key(pr));
    return out;
}

inline MiningResult run_miner(const SequenceDatabase& db, const MiningConfig& cfg,
                              int workers = 1, int partitions = 1) {
    Executor exec(workers);
    return mine(db, cfg, exec, {partitions, false});
}

}  // namespace dstpm::testing
