#include "dstpm/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dstpm/seasonality.hpp"

namespace dstpm {

namespace {

// Independent re-statement of the boundary rules: meets counts as Follows;
// the container covers both endpoints; equal intervals resolve containment to
// the canonically earlier instance; everything else overlaps (normalized to
// symbol order).
Triple oracle_triple(const EventInstance& x, const EventInstance& y) {
    auto key = [](const EventInstance& i) {
        return std::make_tuple(i.interval.start, i.interval.end, i.symbol.series_index,
                               i.symbol.symbol);
    };
    const EventInstance& f = key(x) < key(y) ? x : y;
    const EventInstance& s = key(x) < key(y) ? y : x;
    if (f.interval.end <= s.interval.start) return {RelationKind::Follows, f.symbol, s.symbol};
    const bool f_covers_s = f.interval.start <= s.interval.start && s.interval.end <= f.interval.end;
    const bool s_covers_f = s.interval.start <= f.interval.start && f.interval.end <= s.interval.end;
    if (f_covers_s) return {RelationKind::Contains, f.symbol, s.symbol};
    if (s_covers_f) return {RelationKind::Contains, s.symbol, f.symbol};
    if (f.symbol < s.symbol) return {RelationKind::Overlaps, f.symbol, s.symbol};
    return {RelationKind::Overlaps, s.symbol, f.symbol};
}

void enumerate_subsets(const std::vector<EventSymbol>& symbols, std::size_t k,
                       std::vector<std::vector<EventSymbol>>& out) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    if (symbols.size() < k) return;
    for (;;) {
        std::vector<EventSymbol> sub(k);
        for (std::size_t i = 0; i < k; ++i) sub[i] = symbols[pick[i]];
        out.push_back(std::move(sub));
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == symbols.size() - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

// All instance tuples (one per subset symbol) in one granule; for each,
// derives the realized pattern and records the granule in its support.
void collect_realized(const TemporalSequence& seq, const std::vector<EventSymbol>& subset,
                      std::map<TemporalPattern, std::set<GranulePos>>& supports) {
    const std::size_t k = subset.size();
    std::vector<std::vector<const EventInstance*>> pools(k);
    for (const EventInstance& inst : seq.instances)
        for (std::size_t i = 0; i < k; ++i)
            if (inst.symbol == subset[i]) pools[i].push_back(&inst);
    for (const auto& pool : pools)
        if (pool.empty()) return;

    std::vector<std::size_t> pick(k, 0);
    for (;;) {
        TemporalPattern p;
        p.events = subset;
        p.triples.resize(k * (k - 1) / 2);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                p.triples[TemporalPattern::pair_slot(i, j, k)] =
                    oracle_triple(*pools[i][pick[i]], *pools[j][pick[j]]);
        supports[p].insert(seq.granule);
        std::size_t d = 0;
        while (d < k && ++pick[d] == pools[d].size()) pick[d++] = 0;
        if (d == k) break;
    }
}

}  // namespace

OracleResult brute_force_mine(const SequenceDatabase& db, const MiningConfig& cfg, int max_k,
                              const OracleLimits& limits) {
    if (db.size() > limits.max_granules || db.series.size() > limits.max_series)
        throw std::invalid_argument("brute_force_mine: database exceeds the safety cap");

    std::set<EventSymbol> symbol_set;
    for (const TemporalSequence& seq : db.sequences)
        for (const EventInstance& inst : seq.instances) symbol_set.insert(inst.symbol);
    const std::vector<EventSymbol> symbols(symbol_set.begin(), symbol_set.end());

    OracleResult res;
    auto finish = [&](const TemporalPattern& p, const std::set<GranulePos>& sup_set) {
        SupportSet sup(sup_set.begin(), sup_set.end());
        SeasonSet seasons = compute_seasons(sup, cfg);
        if (!is_frequent_seasonal(seasons, cfg)) return;
        PatternResult pr;
        pr.pattern = p;
        pr.support = std::move(sup);
        pr.seasons = std::move(seasons);
        pr.frequent = true;
        res.frequent.push_back(std::move(pr));
    };

    // k = 1: plain presence supports
    for (const EventSymbol& sym : symbols) {
        std::set<GranulePos> sup;
        for (const TemporalSequence& seq : db.sequences)
            for (const EventInstance& inst : seq.instances)
                if (inst.symbol == sym) {
                    sup.insert(seq.granule);
                    break;
                }
        TemporalPattern p;
        p.events = {sym};
        finish(p, sup);
    }

    for (std::size_t k = 2; k <= static_cast<std::size_t>(max_k); ++k) {
        std::vector<std::vector<EventSymbol>> subsets;
        enumerate_subsets(symbols, k, subsets);
        for (const auto& subset : subsets) {
            std::map<TemporalPattern, std::set<GranulePos>> supports;
            for (const TemporalSequence& seq : db.sequences)
                collect_realized(seq, subset, supports);
            for (const auto& [p, sup] : supports) finish(p, sup);
        }
    }

    std::sort(res.frequent.begin(), res.frequent.end(),
              [](const PatternResult& a, const PatternResult& b) {
                  if (a.pattern.k() != b.pattern.k()) return a.pattern.k() < b.pattern.k();
                  return a.pattern < b.pattern;
              });
    return res;
}

}  // namespace dstpm
