#include "dstpm/datagen.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "dstpm/relations.hpp"

namespace dstpm {

std::vector<GranulePos> planted_granules(const PlantedPattern& p) {
    std::vector<GranulePos> out;
    for (GranulePos start : p.season_starts)
        for (int i = 0; i < p.season_length; ++i)
            out.push_back(start + static_cast<GranulePos>(i * p.period_within));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Searches k intervals (relative tick offsets) whose pairwise relations equal
// the pattern's triples. Backtracking with prefix consistency over a small
// offset pool.
std::vector<TimeInterval> solve_witness(const TemporalPattern& p, Tick span) {
    const std::size_t k = p.k();
    const Tick ticks = std::min<Tick>(span, static_cast<Tick>(2 * k + 2));
    std::vector<TimeInterval> pool;
    for (Tick s = 0; s < ticks; ++s)
        for (Tick e = s + 1; e <= ticks; ++e) pool.push_back({s, e});

    std::vector<TimeInterval> chosen(k);
    auto consistent = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            EventInstance a{p.events[i], chosen[i], 1};
            EventInstance b{p.events[j], chosen[j], 1};
            if (!(oriented_triple(a, b) == p.triples[TemporalPattern::pair_slot(i, j, k)]))
                return false;
        }
        return true;
    };
    std::vector<std::size_t> pick(k, 0);
    std::size_t depth = 0;
    while (true) {
        if (pick[depth] == pool.size()) {
            if (depth == 0) throw std::invalid_argument(
                "unsatisfiable planted pattern: " + p.display());
            pick[depth] = 0;
            --depth;
            ++pick[depth];
            continue;
        }
        chosen[depth] = pool[pick[depth]];
        if (!consistent(depth)) {
            ++pick[depth];
            continue;
        }
        if (depth + 1 == k) return chosen;
        ++depth;
        pick[depth] = 0;
    }
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;  // tiny modulo bias is irrelevant here
}

}  // namespace

SequenceDatabase generate(const GenSpec& spec, std::uint64_t seed) {
    if (spec.granules < 1 || spec.series_count < 1)
        throw std::invalid_argument("generate: granules and series_count must be >= 1");
    if (spec.granule_span < 4) throw std::invalid_argument("generate: granule_span too small");
    if (spec.planted.empty() && spec.noise_density <= 0.0)
        throw std::invalid_argument("generate: degenerate spec (no noise, no planted patterns)");

    SequenceDatabase db;
    db.granule_span = spec.granule_span;
    db.tick_unit = "tick";
    for (int s = 0; s < spec.series_count; ++s) db.series.push_back({"S" + std::to_string(s), {}});
    db.sequences.resize(static_cast<std::size_t>(spec.granules));
    for (int g = 1; g <= spec.granules; ++g)
        db.sequences[static_cast<std::size_t>(g) - 1].granule = static_cast<GranulePos>(g);

    // Symbols reserved by planted patterns, per series; noise avoids them.
    std::vector<std::set<std::string>> reserved(static_cast<std::size_t>(spec.series_count));
    for (const PlantedPattern& pp : spec.planted) {
        validate_pattern(pp.pattern);
        for (const EventSymbol& e : pp.pattern.events) {
            const int si = db.series_index(e.series);
            if (si < 0 || si != e.series_index)
                throw std::invalid_argument("generate: planted event " + e.display() +
                                            " does not match the series layout");
            reserved[static_cast<std::size_t>(si)].insert(e.symbol);
        }
    }

    for (const PlantedPattern& pp : spec.planted) {
        const std::vector<TimeInterval> offsets =
            pp.pattern.k() >= 2 ? solve_witness(pp.pattern, spec.granule_span)
                                : std::vector<TimeInterval>{{0, 1}};
        for (GranulePos g : planted_granules(pp)) {
            if (g < 1 || g > spec.granules)
                throw std::invalid_argument("generate: planted geometry exceeds db size");
            const Tick base = db.granule_start(g);
            TemporalSequence& seq = db.sequences[static_cast<std::size_t>(g) - 1];
            for (std::size_t i = 0; i < pp.pattern.k(); ++i)
                seq.instances.push_back({pp.pattern.events[i],
                                         {base + offsets[i].start, base + offsets[i].end},
                                         g});
        }
    }

    std::mt19937_64 rng(seed);
    const std::uint64_t ppk =
        static_cast<std::uint64_t>(spec.noise_density * 1024.0 + 0.5);  // parts per 1024
    for (int g = 1; g <= spec.granules; ++g) {
        TemporalSequence& seq = db.sequences[static_cast<std::size_t>(g) - 1];
        const Tick base = db.granule_start(static_cast<GranulePos>(g));
        for (int s = 0; s < spec.series_count; ++s) {
            if (draw(rng, 1024) >= ppk) continue;
            // pick a symbol not reserved by any planted pattern on this series
            std::vector<std::string> allowed;
            for (int a = 0; a < spec.alphabet_size; ++a) {
                std::string sym = std::to_string(a);
                if (!reserved[static_cast<std::size_t>(s)].count(sym))
                    allowed.push_back(std::move(sym));
            }
            if (allowed.empty()) continue;
            const std::string& sym = allowed[draw(rng, allowed.size())];
            const Tick start = static_cast<Tick>(draw(rng, static_cast<std::uint64_t>(spec.granule_span - 1)));
            const Tick len =
                1 + static_cast<Tick>(draw(rng, static_cast<std::uint64_t>(spec.granule_span - start - 1)));
            seq.instances.push_back({{s, db.series[static_cast<std::size_t>(s)].name, sym},
                                     {base + start, base + start + len},
                                     static_cast<GranulePos>(g)});
        }
    }

    std::vector<std::set<std::string>> alphabets(static_cast<std::size_t>(spec.series_count));
    for (TemporalSequence& seq : db.sequences) {
        canonical_order(seq.instances);
        for (const EventInstance& inst : seq.instances)
            alphabets[static_cast<std::size_t>(inst.symbol.series_index)].insert(inst.symbol.symbol);
    }
    for (std::size_t i = 0; i < db.series.size(); ++i)
        db.series[i].alphabet.assign(alphabets[i].begin(), alphabets[i].end());
    return db;
}

}  // namespace dstpm
