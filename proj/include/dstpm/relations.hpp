#pragma once

// Temporal relation classification between event instances and per-granule
// pattern occurrence checks.
//
// The relation model is total over canonically ordered pairs, with boundary
// equalities resolved deterministically:
//   - a meets b (a.end == b.start)            => Follows
//   - equal intervals                         => Contains, canonically-first
//                                                instance is the container
//   - shared start, second interval longer    => the longer one contains the
//                                                shorter (via the symmetric
//                                                containment check)

#include <optional>
#include <utility>
#include <vector>

#include "dstpm/core.hpp"

namespace dstpm {

// Classifies a canonically ordered pair (a first). Returns Follows if
// a.end <= b.start, Contains if b.end <= a.end, Overlaps otherwise.
// Throws std::invalid_argument on identical event symbols.
RelationKind classify_pair(const EventInstance& a, const EventInstance& b);

// Oriented triple for two instances of distinct events, in any argument
// order. Containment is tested in both directions so the container is always
// the left element; Overlaps is normalized to canonical symbol order.
Triple oriented_triple(const EventInstance& x, const EventInstance& y);

struct TripleWitness {
    Triple triple;
    EventInstance left_instance;   // instance of triple.left
    EventInstance right_instance;  // instance of triple.right
};

// All distinct triples formed by (a-instance, b-instance) pairs in one
// granule, each with its first witness in canonical pair order.
std::vector<TripleWitness> enumerate_triples(const TemporalSequence& seq,
                                             const EventSymbol& a,
                                             const EventSymbol& b);

// First witness tuple (one instance per pattern event, canonical search
// order) satisfying every triple of p, or nullopt. Requires k >= 2.
std::optional<std::vector<EventInstance>> pattern_occurs(const TemporalSequence& seq,
                                                         const TemporalPattern& p);

}  // namespace dstpm
