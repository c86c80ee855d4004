#include "dstpm/seasonality.hpp"

#include <algorithm>

namespace dstpm {

SupportSet intersect_supports(const SupportSet& a, const SupportSet& b) {
    SupportSet out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

SupportSet intersect_supports(std::span<const SupportSet> sets) {
    if (sets.empty()) throw std::invalid_argument("intersect_supports: empty input list");
    SupportSet acc = sets[0];
    for (std::size_t i = 1; i < sets.size(); ++i) acc = intersect_supports(acc, sets[i]);
    return acc;
}

Rational max_season(const SupportSet& sup, std::int64_t min_density) {
    if (min_density < 1) throw std::invalid_argument("min_density must be >= 1");
    return {static_cast<std::int64_t>(sup.size()), min_density};
}

std::vector<SupportSet> near_support_sets(const SupportSet& sup, std::int64_t max_period) {
    if (max_period < 1) throw std::invalid_argument("max_period must be >= 1");
    std::vector<SupportSet> out;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        if (i == 0 || sup[i] - sup[i - 1] > max_period) out.emplace_back();
        out.back().push_back(sup[i]);
    }
    return out;
}

SeasonSet accept_seasons(std::vector<SupportSet> near, std::int64_t min_density) {
    SeasonSet out;
    out.near_sets = std::move(near);
    for (std::size_t i = 0; i < out.near_sets.size(); ++i)
        if (static_cast<std::int64_t>(out.near_sets[i].size()) >= min_density)
            out.accepted.push_back(static_cast<int>(i));
    return out;
}

std::int64_t season_distance(const SupportSet& earlier, const SupportSet& later) {
    if (earlier.empty() || later.empty())
        throw std::invalid_argument("season_distance: empty season");
    if (earlier.back() >= later.front())
        throw std::invalid_argument("season_distance: seasons overlap or out of order");
    return static_cast<std::int64_t>(later.front()) - earlier.back();
}

bool is_frequent_seasonal(const SeasonSet& seasons, const MiningConfig& cfg) {
    if (static_cast<std::int64_t>(seasons.season_count()) < cfg.min_season) return false;
    for (std::size_t i = 1; i < seasons.season_count(); ++i) {
        const std::int64_t d = season_distance(seasons.season(i - 1), seasons.season(i));
        if (d < cfg.dist_min || d > cfg.dist_max) return false;
    }
    return true;
}

SeasonSet compute_seasons(const SupportSet& sup, const MiningConfig& cfg) {
    return accept_seasons(near_support_sets(sup, cfg.max_period), cfg.min_density);
}

}  // namespace dstpm
