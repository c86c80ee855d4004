#pragma once

// Support-set algebra and season extraction: intersections, the maxSeason
// candidate measure, near-support decomposition, density acceptance, and the
// distance-constrained frequency test.

#include <cstdint>
#include <span>

#include "dstpm/core.hpp"

namespace dstpm {

// Exact ratio |SUP| / minDensity. Comparisons against minSeason are done in
// integers; this type exists for reporting.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a.num * b.den <= b.num * a.den;
    }
};

// Sorted intersection of one or more support sets. Throws on an empty list.
SupportSet intersect_supports(std::span<const SupportSet> sets);
SupportSet intersect_supports(const SupportSet& a, const SupportSet& b);

Rational max_season(const SupportSet& sup, std::int64_t min_density);

// Greedy left-to-right split into maximal near support sets: a new set starts
// whenever the gap to the previous granule exceeds max_period.
std::vector<SupportSet> near_support_sets(const SupportSet& sup, std::int64_t max_period);

// Keeps near sets with at least min_density granules as seasons.
SeasonSet accept_seasons(std::vector<SupportSet> near, std::int64_t min_density);

// p(first of later) - p(last of earlier); requires earlier wholly before
// later (throws otherwise).
std::int64_t season_distance(const SupportSet& earlier, const SupportSet& later);

// Def of a frequent seasonal pattern: at least min_season accepted seasons
// and every consecutive accepted pair at distance within [dist_min, dist_max].
bool is_frequent_seasonal(const SeasonSet& seasons, const MiningConfig& cfg);

// near_support_sets + accept_seasons in one step.
SeasonSet compute_seasons(const SupportSet& sup, const MiningConfig& cfg);

}  // namespace dstpm
