#pragma once

// Hierarchical lookup hash structures. Level 1 keeps candidate single events
// with their supports (EH) and per-granule witness instances (GH). Level k
// keeps candidate event groups (EHk), candidate patterns (PHk), and pattern
// witnesses per granule (GHk).
//
// Granule-keyed tables use (key, granule) pairs instead of list-valued keys;
// same content, O(1) per-granule lookup. Ordered maps keep iteration and
// serialization deterministic.

#include <map>
#include <utility>

#include <json.hpp>

#include "dstpm/core.hpp"

namespace dstpm {

struct HLH1 {
    std::map<EventSymbol, SupportSet> eh;
    std::map<std::pair<EventSymbol, GranulePos>, std::vector<EventInstance>> gh;

    bool contains(const EventSymbol& e) const { return eh.count(e) != 0; }
    const SupportSet& support(const EventSymbol& e) const;
    const std::vector<EventInstance>& instances(const EventSymbol& e, GranulePos g) const;
};

// candidates: (symbol, support, per-granule instances) already maxSeason
// filtered. Throws on duplicate symbols.
HLH1 build_hlh1(
    const std::vector<std::tuple<EventSymbol, SupportSet,
                                 std::map<GranulePos, std::vector<EventInstance>>>>& candidates);

struct GroupEntry {
    SupportSet support;
    std::vector<TemporalPattern> patterns;  // candidate patterns over this tuple
};

struct HLHk {
    int k = 2;
    std::map<std::vector<EventSymbol>, GroupEntry> ehk;
    std::map<TemporalPattern, SupportSet> phk;
    // (pattern, granule) -> witnesses, nested so inserting a pattern costs one
    // key copy instead of one per support granule
    std::map<TemporalPattern, std::map<GranulePos, std::vector<EventInstance>>> ghk;

    // True iff some candidate 2-event pattern equal to t is indexed (k == 2).
    bool has_triple(const Triple& t) const;

    // Registers p under its event tuple. Throws if the tuple is missing from
    // ehk or the pattern is already present.
    void insert_pattern(const TemporalPattern& p, SupportSet sup,
                        std::map<GranulePos, std::vector<EventInstance>> witnesses);
};

// Cheap serialized-size estimate for broadcast accounting (pure function of
// the index contents, so identical runs report identical byte counts).
std::int64_t serialized_bytes(const HLH1& h);

// Debug dumps with deterministically ordered keys, for golden-file tests.
nlohmann::json dump_hlh1(const HLH1& h);
nlohmann::json dump_hlhk(const HLHk& h);

}  // namespace dstpm
