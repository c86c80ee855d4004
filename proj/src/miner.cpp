#include "dstpm/miner.hpp"

#include <algorithm>

#include "dstpm/relations.hpp"
#include "dstpm/seasonality.hpp"

namespace dstpm {

namespace {

using GranuleInstances = std::map<GranulePos, std::vector<EventInstance>>;

std::int64_t instance_bytes(const std::vector<EventInstance>& insts) {
    std::int64_t b = 0;
    for (const EventInstance& i : insts)
        b += static_cast<std::int64_t>(i.symbol.series.size() + i.symbol.symbol.size()) + 20;
    return b;
}

}  // namespace

SingleEventResult mine_single_events(const SequenceDatabase& db, const MiningConfig& cfg,
                                     Executor& exec, const std::vector<DataPartition>& parts) {
    // map: per partition, (symbol -> granule -> instances); reduce: merge by symbol
    auto map_fn = [&db](const DataPartition& p) {
        std::map<EventSymbol, GranuleInstances> local;
        for (GranulePos g = p.lo; g <= p.hi; ++g)
            for (const EventInstance& inst : db.sequences[static_cast<std::size_t>(g) - 1].instances)
                local[inst.symbol][g].push_back(inst);
        std::vector<std::pair<EventSymbol, GranuleInstances>> out;
        out.reserve(local.size());
        for (auto& [sym, by_g] : local) out.emplace_back(sym, std::move(by_g));
        return out;
    };
    auto merge_fn = [](GranuleInstances& into, GranuleInstances&& from) {
        for (auto& [g, insts] : from) {
            auto& dst = into[g];
            dst.insert(dst.end(), insts.begin(), insts.end());
        }
    };
    auto size_fn = [](const EventSymbol& sym, const GranuleInstances& by_g) {
        std::int64_t b = static_cast<std::int64_t>(sym.series.size() + sym.symbol.size());
        for (const auto& [g, insts] : by_g) b += 4 + instance_bytes(insts);
        return b;
    };
    std::map<EventSymbol, GranuleInstances> by_symbol =
        exec.map_reduce<EventSymbol, GranuleInstances>("extract-events", parts, map_fn, merge_fn,
                                                       size_fn);

    SingleEventResult res;
    res.symbols_seen = static_cast<std::int64_t>(by_symbol.size());

    std::vector<std::tuple<EventSymbol, SupportSet, GranuleInstances>> candidates;
    for (auto& [sym, by_g] : by_symbol) {
        SupportSet sup;
        sup.reserve(by_g.size());
        for (const auto& [g, insts] : by_g) sup.push_back(g);
        if (!cfg.passes_gate(sup.size())) continue;
        candidates.emplace_back(sym, std::move(sup), std::move(by_g));
    }

    res.index = build_hlh1(candidates);
    for (const auto& [sym, sup, by_g] : candidates) {
        PatternResult pr;
        pr.pattern.events = {sym};
        pr.support = sup;
        pr.seasons = compute_seasons(sup, cfg);
        pr.frequent = is_frequent_seasonal(pr.seasons, cfg);
        res.all_candidates.push_back(std::move(pr));
    }
    return res;
}

std::vector<std::vector<EventSymbol>> generate_groups(
    const std::vector<std::vector<EventSymbol>>& prev_tuples,
    const std::vector<EventSymbol>& singles) {
    std::vector<std::vector<EventSymbol>> out;
    for (const auto& prefix : prev_tuples) {
        for (const EventSymbol& e : singles) {
            if (!(prefix.back() < e)) continue;  // keeps each unordered set once
            std::vector<EventSymbol> tuple = prefix;
            tuple.push_back(e);
            out.push_back(std::move(tuple));
        }
    }
    return out;
}

namespace {

struct CandidatePattern {
    TemporalPattern pattern;
    SupportSet support;
    GranuleInstances witnesses;
};

// All oriented triple forms over {a, b} present in the level-2 pattern index.
std::vector<Triple> indexed_triples(const HLHk& h2, const EventSymbol& a, const EventSymbol& b) {
    const EventSymbol& lo = a < b ? a : b;
    const EventSymbol& hi = a < b ? b : a;
    const Triple forms[] = {
        {RelationKind::Follows, lo, hi},  {RelationKind::Follows, hi, lo},
        {RelationKind::Contains, lo, hi}, {RelationKind::Contains, hi, lo},
        {RelationKind::Overlaps, lo, hi},
    };
    std::vector<Triple> out;
    for (const Triple& t : forms)
        if (h2.has_triple(t)) out.push_back(t);
    return out;
}

// Candidate 2-event patterns of one group: direct triple enumeration over the
// group's support granules.
std::vector<CandidatePattern> candidates_k2(const SequenceDatabase& db,
                                            const std::vector<EventSymbol>& tuple,
                                            const SupportSet& support,
                                            const MiningConfig& cfg) {
    std::map<Triple, CandidatePattern> acc;
    for (GranulePos g : support) {
        const TemporalSequence& seq = db.sequences[static_cast<std::size_t>(g) - 1];
        for (const TripleWitness& w : enumerate_triples(seq, tuple[0], tuple[1])) {
            CandidatePattern& c = acc[w.triple];
            if (c.pattern.events.empty()) {
                c.pattern.events = tuple;
                c.pattern.triples = {w.triple};
            }
            c.support.push_back(g);
            // witnesses are stored in canonical event order, which may be the
            // reverse of the triple's orientation
            if (w.triple.left == tuple[0])
                c.witnesses[g] = {w.left_instance, w.right_instance};
            else
                c.witnesses[g] = {w.right_instance, w.left_instance};
        }
    }
    std::vector<CandidatePattern> out;
    for (auto& [t, c] : acc)
        if (cfg.passes_gate(c.support.size())) out.push_back(std::move(c));
    return out;
}

// Candidate k-event patterns (k >= 3) of one group: extend each candidate
// (k-1)-pattern of the prefix with one triple per (E_i, E_k) pair, abandoning
// the extension as soon as a pair has no indexed level-2 triple, then confirm
// survivors per granule.
std::vector<CandidatePattern> candidates_k3plus(const SequenceDatabase& db,
                                                const std::vector<EventSymbol>& tuple,
                                                const SupportSet& support, const HLHk& h2,
                                                const HLHk& prev, const MiningConfig& cfg) {
    const std::size_t k = tuple.size();
    std::vector<EventSymbol> prefix(tuple.begin(), tuple.end() - 1);
    auto pit = prev.ehk.find(prefix);
    if (pit == prev.ehk.end()) return {};
    const EventSymbol& last = tuple.back();

    std::vector<CandidatePattern> out;
    for (const TemporalPattern& base : pit->second.patterns) {
        // Verification order i = k-1 down to 1 (1-based), i.e. the new pairs
        // nearest the appended event first.
        std::vector<std::vector<Triple>> options;  // options[m] for pair (k-2-m, k-1)
        bool viable = true;
        for (std::size_t m = 0; m < k - 1 && viable; ++m) {
            const std::size_t i = k - 2 - m;
            std::vector<Triple> opts = indexed_triples(h2, tuple[i], last);
            if (opts.empty())
                viable = false;  // stop immediately, no granule scan
            else
                options.push_back(std::move(opts));
        }
        if (!viable) continue;

        // Cartesian product over per-pair options.
        std::vector<std::size_t> pick(options.size(), 0);
        for (;;) {
            TemporalPattern p;
            p.events = tuple;
            p.triples.resize(k * (k - 1) / 2);
            for (std::size_t i = 0; i < k - 1; ++i)
                for (std::size_t j = i + 1; j < k - 1; ++j)
                    p.triples[TemporalPattern::pair_slot(i, j, k)] =
                        base.triples[TemporalPattern::pair_slot(i, j, k - 1)];
            for (std::size_t m = 0; m < options.size(); ++m) {
                const std::size_t i = k - 2 - m;
                p.triples[TemporalPattern::pair_slot(i, k - 1, k)] = options[m][pick[m]];
            }

            CandidatePattern c;
            c.pattern = std::move(p);
            for (GranulePos g : support) {
                const TemporalSequence& seq = db.sequences[static_cast<std::size_t>(g) - 1];
                if (auto w = pattern_occurs(seq, c.pattern)) {
                    c.support.push_back(g);
                    c.witnesses[g] = std::move(*w);
                }
            }
            if (cfg.passes_gate(c.support.size())) out.push_back(std::move(c));

            std::size_t d = 0;
            while (d < pick.size() && ++pick[d] == options[d].size()) pick[d++] = 0;
            if (d == pick.size()) break;
        }
    }
    return out;
}

}  // namespace

MiningResult mine(const SequenceDatabase& db, const MiningConfig& cfg, Executor& exec,
                  const MineOptions& opts) {
    if (db.size() == 0) throw std::invalid_argument("mine: empty database");
    MiningResult res;
    const std::vector<DataPartition> parts = partition_db(db, opts.partitions);

    SingleEventResult level1 = mine_single_events(db, cfg, exec, parts);
    const auto hlh1_size = serialized_bytes(level1.index);
    auto hlh1 = exec.broadcast(std::move(level1.index), hlh1_size);

    LevelStats l1;
    l1.k = 1;
    l1.groups_generated = level1.symbols_seen;
    l1.groups_kept = static_cast<std::int64_t>(hlh1->eh.size());
    l1.candidate_patterns = static_cast<std::int64_t>(level1.all_candidates.size());
    for (PatternResult& pr : level1.all_candidates) {
        if (!pr.frequent) continue;
        ++l1.frequent_patterns;
        if (opts.keep_witnesses)
            for (GranulePos g : pr.support)
                pr.witnesses[g] = hlh1->instances(pr.pattern.events[0], g);
        res.frequent.push_back(std::move(pr));
    }
    res.levels.push_back(l1);

    std::vector<EventSymbol> singles;
    for (const auto& [sym, sup] : hlh1->eh) singles.push_back(sym);

    std::vector<std::vector<EventSymbol>> prev_tuples;
    for (const EventSymbol& s : singles) prev_tuples.push_back({s});

    std::shared_ptr<const HLHk> h2;    // level-2 index, kept for verification
    std::shared_ptr<const HLHk> prev;  // level k-1 index

    for (int k = 2; k <= cfg.max_k && !prev_tuples.empty(); ++k) {
        LevelStats ls;
        ls.k = k;

        std::vector<std::vector<EventSymbol>> groups = generate_groups(prev_tuples, singles);
        ls.groups_generated = static_cast<std::int64_t>(groups.size());

        // group support = prefix support ∩ new event support
        auto supports = exec.parallel_map(
            "group-supports-k" + std::to_string(k), groups,
            [&](const std::vector<EventSymbol>& tuple) -> SupportSet {
                const SupportSet* prefix_sup;
                if (k == 2) {
                    prefix_sup = &hlh1->support(tuple[0]);
                } else {
                    std::vector<EventSymbol> prefix(tuple.begin(), tuple.end() - 1);
                    prefix_sup = &prev->ehk.at(prefix).support;
                }
                return intersect_supports(*prefix_sup, hlh1->support(tuple.back()));
            });

        HLHk level;
        level.k = k;
        std::vector<std::vector<EventSymbol>> kept;
        std::vector<SupportSet> kept_sup;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            if (!cfg.passes_gate(supports[i].size())) continue;
            level.ehk[groups[i]] = {supports[i], {}};
            kept.push_back(std::move(groups[i]));
            kept_sup.push_back(std::move(supports[i]));
        }
        ls.groups_kept = static_cast<std::int64_t>(kept.size());

        std::vector<std::size_t> idx(kept.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        auto per_group = exec.parallel_map(
            "candidate-patterns-k" + std::to_string(k), idx,
            [&](std::size_t i) -> std::vector<CandidatePattern> {
                if (k == 2) return candidates_k2(db, kept[i], kept_sup[i], cfg);
                return candidates_k3plus(db, kept[i], kept_sup[i], *h2, *prev, cfg);
            });

        for (auto& cands : per_group)
            for (CandidatePattern& c : cands) {
                ++ls.candidate_patterns;
                SeasonSet seasons = compute_seasons(c.support, cfg);
                const bool freq = is_frequent_seasonal(seasons, cfg);
                GranuleInstances wit = std::move(c.witnesses);
                if (freq) {
                    ++ls.frequent_patterns;
                    PatternResult pr;
                    pr.pattern = c.pattern;
                    pr.support = c.support;
                    pr.seasons = std::move(seasons);
                    pr.frequent = true;
                    if (opts.keep_witnesses) pr.witnesses = wit;  // few patterns reach here
                    res.frequent.push_back(std::move(pr));
                }
                level.insert_pattern(c.pattern, std::move(c.support), std::move(wit));
            }

        res.levels.push_back(ls);

        prev_tuples = kept;
        const auto level_size = static_cast<std::int64_t>(level.ehk.size());
        auto handle = exec.broadcast(std::move(level), level_size);
        if (k == 2) h2 = handle;
        prev = handle;  // levels below k-1 are dropped (except the level-2 index)
    }

    std::sort(res.frequent.begin(), res.frequent.end(),
              [](const PatternResult& a, const PatternResult& b) {
                  if (a.pattern.k() != b.pattern.k()) return a.pattern.k() < b.pattern.k();
                  return a.pattern < b.pattern;
              });
    res.exec = exec.stats();
    return res;
}

}  // namespace dstpm
