#pragma once

// Seeded synthetic database generator with planted seasonal patterns.
// Deterministic for a fixed (spec, seed) across platforms: randomness comes
// from raw mt19937_64 draws, never from distribution objects.

#include <cstdint>

#include "dstpm/core.hpp"

namespace dstpm {

struct PlantedPattern {
    TemporalPattern pattern;
    std::vector<GranulePos> season_starts;  // first granule of each season
    int season_length = 1;                  // granules per season
    int period_within = 1;                  // gap between consecutive occurrences in a season
};

struct GenSpec {
    int granules = 0;
    int series_count = 0;
    int alphabet_size = 2;
    // chance (0..1, stored as parts-per-1024 internally) that a background
    // instance is emitted per (granule, series)
    double noise_density = 0.0;
    Tick granule_span = 16;
    std::vector<PlantedPattern> planted;
};

// Granules covered by one planted pattern: for each season, season_length
// occurrences spaced period_within apart starting at each season start.
std::vector<GranulePos> planted_granules(const PlantedPattern& p);

SequenceDatabase generate(const GenSpec& spec, std::uint64_t seed);

}  // namespace dstpm
