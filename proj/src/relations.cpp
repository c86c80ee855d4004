#include "dstpm/relations.hpp"

#include <algorithm>

namespace dstpm {

RelationKind classify_pair(const EventInstance& a, const EventInstance& b) {
    if (a.symbol == b.symbol)
        throw std::invalid_argument("no self-relations: " + a.symbol.display());
    if (a.interval.end <= b.interval.start) return RelationKind::Follows;
    if (b.interval.end <= a.interval.end) return RelationKind::Contains;
    return RelationKind::Overlaps;
}

Triple oriented_triple(const EventInstance& x, const EventInstance& y) {
    const bool x_first = canonical_instance_less(x, y);
    const EventInstance& f = x_first ? x : y;
    const EventInstance& s = x_first ? y : x;
    switch (classify_pair(f, s)) {
        case RelationKind::Follows:
            return {RelationKind::Follows, f.symbol, s.symbol};
        case RelationKind::Contains:
            return {RelationKind::Contains, f.symbol, s.symbol};
        case RelationKind::Overlaps:
            break;
    }
    // Symmetric check: the canonically later instance may still be the
    // container (shared start, longer interval).
    if (s.interval.start <= f.interval.start && f.interval.end <= s.interval.end)
        return {RelationKind::Contains, s.symbol, f.symbol};
    if (f.symbol < s.symbol) return {RelationKind::Overlaps, f.symbol, s.symbol};
    return {RelationKind::Overlaps, s.symbol, f.symbol};
}

std::vector<TripleWitness> enumerate_triples(const TemporalSequence& seq,
                                             const EventSymbol& a,
                                             const EventSymbol& b) {
    std::vector<TripleWitness> out;
    for (const EventInstance& ia : seq.instances) {
        if (!(ia.symbol == a)) continue;
        for (const EventInstance& ib : seq.instances) {
            if (!(ib.symbol == b)) continue;
            Triple t = oriented_triple(ia, ib);
            bool seen = false;
            for (const TripleWitness& w : out)
                if (w.triple == t) { seen = true; break; }
            if (seen) continue;
            const EventInstance& li = t.left == ia.symbol ? ia : ib;
            const EventInstance& ri = t.left == ia.symbol ? ib : ia;
            out.push_back({t, li, ri});
        }
    }
    return out;
}

namespace {

bool assignment_consistent(const TemporalPattern& p,
                           const std::vector<const EventInstance*>& chosen,
                           std::size_t upto) {
    // Checks every pair (i, upto-1) against its triple slot.
    const std::size_t j = upto - 1;
    for (std::size_t i = 0; i < j; ++i) {
        const Triple& want = p.triples[TemporalPattern::pair_slot(i, j, p.k())];
        if (!(oriented_triple(*chosen[i], *chosen[j]) == want)) return false;
    }
    return true;
}

bool search(const TemporalPattern& p,
            const std::vector<std::vector<const EventInstance*>>& pools,
            std::vector<const EventInstance*>& chosen, std::size_t depth) {
    if (depth == pools.size()) return true;
    for (const EventInstance* inst : pools[depth]) {
        chosen[depth] = inst;
        if (assignment_consistent(p, chosen, depth + 1) &&
            search(p, pools, chosen, depth + 1))
            return true;
    }
    return false;
}

}  // namespace

std::optional<std::vector<EventInstance>> pattern_occurs(const TemporalSequence& seq,
                                                         const TemporalPattern& p) {
    if (p.k() < 2) throw std::invalid_argument("pattern_occurs requires k >= 2");
    std::vector<std::vector<const EventInstance*>> pools(p.k());
    for (const EventInstance& inst : seq.instances) {
        for (std::size_t i = 0; i < p.k(); ++i)
            if (inst.symbol == p.events[i]) pools[i].push_back(&inst);
    }
    for (const auto& pool : pools)
        if (pool.empty()) return std::nullopt;
    std::vector<const EventInstance*> chosen(p.k(), nullptr);
    if (!search(p, pools, chosen, 0)) return std::nullopt;
    std::vector<EventInstance> witness;
    witness.reserve(p.k());
    for (const EventInstance* inst : chosen) witness.push_back(*inst);
    return witness;
}

}  // namespace dstpm
