#include <doctest.h>

#include <random>

#include "dstpm/relations.hpp"
#include "helpers.hpp"

using namespace dstpm;
using namespace dstpm::testing;

static const EventSymbol C1 = sym(0, "C", "1");
static const EventSymbol D1 = sym(1, "D", "1");
static const EventSymbol F1 = sym(2, "F", "1");
static const EventSymbol M1 = sym(3, "M", "1");
static const EventSymbol I1 = sym(4, "I", "1");

static const TemporalSequence& granule(const SequenceDatabase& db, GranulePos g) {
    return db.sequences[static_cast<std::size_t>(g) - 1];
}

TEST_CASE("classify_pair boundary rules") {
    // meets counts as Follows
    CHECK(classify_pair(inst(C1, 420, 430), inst(F1, 430, 435)) == RelationKind::Follows);
    // equal intervals: canonically-first is the container
    CHECK(classify_pair(inst(M1, 450, 465), inst(I1, 450, 465)) == RelationKind::Contains);
    // shared start, longer second interval: overlaps under the one-directional rule
    CHECK(classify_pair(inst(D1, 420, 425), inst(C1, 420, 430)) == RelationKind::Overlaps);
    // plain overlap
    CHECK(classify_pair(inst(C1, 0, 5), inst(D1, 3, 8)) == RelationKind::Overlaps);
    CHECK_THROWS_AS(classify_pair(inst(C1, 0, 5), inst(C1, 3, 8)), std::invalid_argument);
}

TEST_CASE("oriented_triple resolves containment in both directions") {
    // D:1 is canonically first but C:1 covers it
    const Triple t = oriented_triple(inst(D1, 420, 425), inst(C1, 420, 430));
    CHECK(t == Triple{RelationKind::Contains, C1, D1});
    // argument order must not matter
    CHECK(oriented_triple(inst(C1, 420, 430), inst(D1, 420, 425)) == t);
    // equal intervals, M declared before I
    CHECK(oriented_triple(inst(M1, 450, 465), inst(I1, 450, 465)) ==
          Triple{RelationKind::Contains, M1, I1});
}

TEST_CASE("classification is total and mutually exclusive on random pairs") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        const Tick s1 = static_cast<Tick>(rng() % 10), e1 = s1 + 1 + static_cast<Tick>(rng() % 8);
        const Tick s2 = static_cast<Tick>(rng() % 10), e2 = s2 + 1 + static_cast<Tick>(rng() % 8);
        EventInstance a = inst(C1, s1, e1), b = inst(D1, s2, e2);
        if (!canonical_instance_less(a, b)) std::swap(a, b);
        // exactly one of Follows / Contains-as-left / Overlaps-or-contained
        const RelationKind r = classify_pair(a, b);
        const bool follows = a.interval.end <= b.interval.start;
        const bool contains_left = !follows && b.interval.end <= a.interval.end;
        switch (r) {
            case RelationKind::Follows: CHECK(follows); break;
            case RelationKind::Contains: CHECK(contains_left); break;
            case RelationKind::Overlaps: CHECK((!follows && !contains_left)); break;
        }
        // oriented triple: Contains(X, Y) <=> X covers Y (ties to canonical first)
        const Triple t = oriented_triple(a, b);
        if (t.relation == RelationKind::Contains) {
            const EventInstance& x = t.left == a.symbol ? a : b;
            const EventInstance& y = t.left == a.symbol ? b : a;
            CHECK(x.interval.start <= y.interval.start);
            CHECK(y.interval.end <= x.interval.end);
        }
    }
}

TEST_CASE("enumerate_triples on the fixture") {
    const SequenceDatabase db = load_table1();
    SUBCASE("single Follows pair") {
        const auto ts = enumerate_triples(granule(db, 1), C1, F1);
        REQUIRE(ts.size() == 1);
        CHECK(ts[0].triple == Triple{RelationKind::Follows, C1, F1});
    }
    SUBCASE("containment with M:1 covering I:1") {
        const auto ts = enumerate_triples(granule(db, 1), M1, I1);
        REQUIRE(ts.size() == 1);
        CHECK(ts[0].triple == Triple{RelationKind::Contains, M1, I1});
        CHECK(ts[0].left_instance.interval == TimeInterval{420, 435});
        CHECK(ts[0].right_instance.interval == TimeInterval{420, 430});
    }
    SUBCASE("absent event yields empty set") {
        CHECK(enumerate_triples(granule(db, 7), C1, F1).empty());  // F:1 absent at G7
    }
}

TEST_CASE("pattern_occurs on the fixture") {
    const SequenceDatabase db = load_table1();
    TemporalPattern contains_mi;
    contains_mi.events = {M1, I1};
    contains_mi.triples = {{RelationKind::Contains, M1, I1}};

    SUBCASE("witness at G1") {
        const auto w = pattern_occurs(granule(db, 1), contains_mi);
        REQUIRE(w.has_value());
        CHECK((*w)[0].interval == TimeInterval{420, 435});
        CHECK((*w)[1].interval == TimeInterval{420, 430});
    }
    SUBCASE("no witness at G2 (I:1 covers M:1 there)") {
        CHECK_FALSE(pattern_occurs(granule(db, 2), contains_mi).has_value());
    }
    SUBCASE("missing event") {
        TemporalPattern follows_cf;
        follows_cf.events = {C1, F1};
        follows_cf.triples = {{RelationKind::Follows, C1, F1}};
        CHECK_FALSE(pattern_occurs(granule(db, 7), follows_cf).has_value());
    }
    SUBCASE("k >= 2 required") {
        TemporalPattern single;
        single.events = {M1};
        CHECK_THROWS_AS(pattern_occurs(granule(db, 1), single), std::invalid_argument);
    }
}

TEST_CASE("witness projection: sub-patterns occur wherever the pattern does") {
    // structural fact behind the anti-monotonicity of maxSeason
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const SequenceDatabase db = random_db(rng(), 12, 3, 2);
        // pick three symbols that occur somewhere
        std::set<EventSymbol> seen;
        for (const TemporalSequence& seq : db.sequences)
            for (const EventInstance& i : seq.instances) seen.insert(i.symbol);
        if (seen.size() < 3) continue;
        std::vector<EventSymbol> events(seen.begin(), seen.end());
        events.resize(3);
        for (const TemporalSequence& seq : db.sequences) {
            // derive a realized pattern from the first full assignment, if any
            std::vector<const EventInstance*> pick(3, nullptr);
            for (const EventInstance& i : seq.instances)
                for (std::size_t e = 0; e < 3; ++e)
                    if (!pick[e] && i.symbol == events[e]) pick[e] = &i;
            if (!pick[0] || !pick[1] || !pick[2]) continue;
            TemporalPattern p;
            p.events = events;
            p.triples = {oriented_triple(*pick[0], *pick[1]), oriented_triple(*pick[0], *pick[2]),
                         oriented_triple(*pick[1], *pick[2])};
            if (!pattern_occurs(seq, p)) continue;  // other instances may shadow this tuple
            // every 2-event projection must also occur
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = a + 1; b < 3; ++b) {
                    TemporalPattern sub;
                    sub.events = {events[a], events[b]};
                    sub.triples = {p.triples[TemporalPattern::pair_slot(a, b, 3)]};
                    CHECK(pattern_occurs(seq, sub).has_value());
                    ++checked;
                }
        }
    }
    CHECK(checked > 50);  // the sweep actually exercised the property
}
