#pragma once

// Core domain model for seasonal temporal pattern mining: symbolized event
// instances grouped into fixed-width granules, temporal patterns over them,
// and the support/season bookkeeping shared by every other module.
//
// All times are integer ticks. No floating point is used anywhere in the
// mining core; ratio thresholds are handled with exact integer arithmetic.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dstpm {

using Tick = std::int64_t;
using GranulePos = std::int32_t;  // 1-based position within the granularity

// A symbolized temporal event, e.g. "M:1". series_index is the declaration
// order of the series in the database header; it is the tie-break that makes
// equal-interval containment deterministic, so it is part of the identity.
struct EventSymbol {
    int series_index = 0;
    std::string series;
    std::string symbol;

    std::string display() const { return series + ":" + symbol; }

    friend bool operator==(const EventSymbol& a, const EventSymbol& b) {
        return a.series_index == b.series_index && a.symbol == b.symbol;
    }
    friend bool operator!=(const EventSymbol& a, const EventSymbol& b) { return !(a == b); }
    friend bool operator<(const EventSymbol& a, const EventSymbol& b) {
        if (a.series_index != b.series_index) return a.series_index < b.series_index;
        return a.symbol < b.symbol;
    }
};

struct TimeInterval {
    Tick start = 0;
    Tick end = 0;  // exclusive-end convention is irrelevant here; only order matters

    friend bool operator==(const TimeInterval& a, const TimeInterval& b) {
        return a.start == b.start && a.end == b.end;
    }
};

// One occurrence of an event inside one granule.
struct EventInstance {
    EventSymbol symbol;
    TimeInterval interval;
    GranulePos granule = 0;

    friend bool operator==(const EventInstance& a, const EventInstance& b) {
        return a.symbol == b.symbol && a.interval == b.interval && a.granule == b.granule;
    }
};

// Canonical instance order: (start, end, series_index, symbol).
bool canonical_instance_less(const EventInstance& a, const EventInstance& b);

// Sorts instances of one granule into canonical order. Idempotent, total.
void canonical_order(std::vector<EventInstance>& instances);

struct TemporalSequence {
    GranulePos granule = 0;
    std::vector<EventInstance> instances;  // canonical order
};

struct SeriesHeader {
    std::string name;
    std::vector<std::string> alphabet;  // sorted, unique
};

struct SequenceDatabase {
    std::vector<SeriesHeader> series;
    Tick granule_span = 0;
    Tick origin = 0;  // tick at which granule 1 starts
    std::string tick_unit = "tick";
    std::vector<TemporalSequence> sequences;  // one per granule, positions 1..N

    std::size_t size() const { return sequences.size(); }
    // -1 if unknown
    int series_index(const std::string& name) const;
    Tick granule_start(GranulePos p) const { return origin + granule_span * (p - 1); }
    Tick granule_end(GranulePos p) const { return origin + granule_span * p; }
};

enum class RelationKind { Follows, Contains, Overlaps };

const char* relation_name(RelationKind r);

// (relation, left, right). Follows and Contains are directed: the left event's
// instance precedes / covers the right one. Overlaps is symmetric and always
// stored with the canonically smaller symbol on the left.
struct Triple {
    RelationKind relation = RelationKind::Follows;
    EventSymbol left;
    EventSymbol right;

    std::string display() const;

    friend bool operator==(const Triple& a, const Triple& b) {
        return a.relation == b.relation && a.left == b.left && a.right == b.right;
    }
    friend bool operator!=(const Triple& a, const Triple& b) { return !(a == b); }
    friend bool operator<(const Triple& a, const Triple& b) {
        if (a.left != b.left) return a.left < b.left;
        if (a.right != b.right) return a.right < b.right;
        return static_cast<int>(a.relation) < static_cast<int>(b.relation);
    }
};

// k distinct events in canonical symbol order plus one triple per event pair
// (i, j), i < j, listed in lexicographic (i, j) order. The triple for a pair
// may carry either orientation of the two symbols; its index pair is fixed.
struct TemporalPattern {
    std::vector<EventSymbol> events;
    std::vector<Triple> triples;  // size k(k-1)/2

    std::size_t k() const { return events.size(); }
    std::string display() const;
    // Triple slot for event pair (i, j), i < j.
    static std::size_t pair_slot(std::size_t i, std::size_t j, std::size_t k);

    friend bool operator==(const TemporalPattern& a, const TemporalPattern& b) {
        return a.events == b.events && a.triples == b.triples;
    }
    friend bool operator<(const TemporalPattern& a, const TemporalPattern& b);
};

// Throws std::invalid_argument if the pattern breaks the structural rules
// (unsorted/duplicate events, wrong triple count, triple off its slot).
void validate_pattern(const TemporalPattern& p);

// Sorted granule positions, strictly increasing.
using SupportSet = std::vector<GranulePos>;

bool is_valid_support(const SupportSet& s);

// Near-support decomposition of one support set plus which pieces pass the
// density threshold (the seasons).
struct SeasonSet {
    std::vector<SupportSet> near_sets;
    std::vector<int> accepted;  // indices into near_sets, ascending

    std::size_t season_count() const { return accepted.size(); }
    const SupportSet& season(std::size_t i) const { return near_sets[accepted[i]]; }
};

// A threshold as given by the user: either an absolute count or a fraction of
// |D_SEQ| ("0.2%" is stored as 2/1000). Exact, no floats.
struct Threshold {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool percent = false;

    static Threshold absolute(std::int64_t v) { return {v, 1, false}; }
    // Parses "3" or "0.2%".
    static Threshold parse(const std::string& text);
};

struct RawConfig {
    Threshold max_period = Threshold::absolute(1);
    Threshold min_density = Threshold::absolute(1);
    Threshold min_season = Threshold::absolute(1);
    Threshold dist_min = Threshold::absolute(0);
    Threshold dist_max = Threshold::absolute(0);
    int max_k = 5;
};

// Fully resolved thresholds; every value is an absolute granule count.
struct MiningConfig {
    std::int64_t max_period = 1;
    std::int64_t min_density = 1;
    std::int64_t min_season = 1;
    std::int64_t dist_min = 0;
    std::int64_t dist_max = 0;
    int max_k = 5;
    // When false the maxSeason candidate gate is skipped (patterns/groups are
    // kept whenever their support is nonempty). Affects work only, never
    // results; exists so the pruning-safety property can be tested.
    bool candidate_gate = true;

    // |SUP| >= minSeason * minDensity, the integer form of
    // maxSeason >= minSeason.
    bool passes_gate(std::size_t support_size) const {
        if (!candidate_gate) return support_size >= 1;
        return static_cast<std::int64_t>(support_size) >= min_season * min_density;
    }
};

// Percent thresholds v/d% become max(1, ceil(v * db_size / (d * 100)));
// absolute values pass through. Throws on nonpositive thresholds or
// dist_min > dist_max.
MiningConfig resolve_thresholds(const RawConfig& raw, std::int64_t db_size);

struct PatternResult {
    TemporalPattern pattern;
    SupportSet support;
    SeasonSet seasons;
    bool frequent = false;
    // Witness instances per support granule (filled at detail level "full").
    std::map<GranulePos, std::vector<EventInstance>> witnesses;
};

}  // namespace dstpm
