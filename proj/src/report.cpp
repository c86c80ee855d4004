#include "dstpm/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dstpm {

using nlohmann::json;

nlohmann::json pattern_result_json(const PatternResult& pr, bool full_detail) {
    json events = json::array();
    for (const EventSymbol& e : pr.pattern.events) events.push_back(e.display());
    json triples = json::array();
    for (const Triple& t : pr.pattern.triples)
        triples.push_back({{"left", t.left.display()},
                           {"relation", relation_name(t.relation)},
                           {"right", t.right.display()}});
    json seasons = json::array();
    for (std::size_t i = 0; i < pr.seasons.season_count(); ++i)
        seasons.push_back(pr.seasons.season(i));
    json out = {{"pattern", pr.pattern.display()},
                {"events", events},  {"triples", triples}, {"support", pr.support},
                {"seasons", seasons}, {"season_count", pr.seasons.season_count()},
                {"frequent", pr.frequent}};
    if (full_detail) {
        json near = json::array();
        for (const SupportSet& s : pr.seasons.near_sets) near.push_back(s);
        out["near_support_sets"] = near;
        json wit = json::object();
        for (const auto& [g, insts] : pr.witnesses) {
            json arr = json::array();
            for (const EventInstance& i : insts)
                arr.push_back({{"e", i.symbol.display()},
                               {"start", i.interval.start},
                               {"end", i.interval.end}});
            wit[std::to_string(g)] = arr;
        }
        out["witnesses"] = wit;
    }
    return out;
}

nlohmann::json make_report(const MiningConfig& cfg, const MiningResult& result,
                           bool full_detail) {
    json config = {{"max_period", cfg.max_period}, {"min_density", cfg.min_density},
                   {"min_season", cfg.min_season}, {"dist_min", cfg.dist_min},
                   {"dist_max", cfg.dist_max},     {"max_k", cfg.max_k}};
    json levels = json::array();
    for (const LevelStats& l : result.levels)
        levels.push_back({{"k", l.k},
                          {"groups_generated", l.groups_generated},
                          {"groups_kept", l.groups_kept},
                          {"candidate_patterns", l.candidate_patterns},
                          {"frequent_patterns", l.frequent_patterns}});
    json patterns = json::array();
    for (const PatternResult& pr : result.frequent)
        patterns.push_back(pattern_result_json(pr, full_detail));
    // Only parallelism-invariant stats go into the report: shuffle_bytes is
    // measured on key-reduced records, so it does not depend on the worker
    // count or partitioning. Task counts and wall times vary per run and are
    // reported by the bench subcommand instead.
    json stages = json::array();
    for (const StageStats& s : result.exec.stages)
        stages.push_back({{"stage", s.stage}, {"shuffle_bytes", s.shuffle_bytes}});
    json exec = {{"stages", stages},
                 {"broadcasts", result.exec.broadcasts},
                 {"broadcast_bytes", result.exec.broadcast_bytes}};
    return {{"schema", "dstpm-report/1"},
            {"config", config},
            {"levels", levels},
            {"patterns", patterns},
            {"exec_stats", exec}};
}

EventSymbol parse_event(const std::string& text, const SequenceDatabase& db) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
        throw std::invalid_argument("bad event \"" + text + "\" (expected series:symbol)");
    const std::string series = text.substr(0, colon);
    const std::string symbol = text.substr(colon + 1);
    const int si = db.series_index(series);
    if (si < 0) throw std::invalid_argument("unknown series \"" + series + "\"");
    const std::vector<std::string>& alphabet = db.series[static_cast<std::size_t>(si)].alphabet;
    if (!alphabet.empty() && std::find(alphabet.begin(), alphabet.end(), symbol) == alphabet.end())
        throw std::invalid_argument("unknown symbol \"" + symbol + "\" for series " + series);
    return {si, series, symbol};
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

TemporalPattern parse_pattern(const std::string& text, const SequenceDatabase& db) {
    std::vector<Triple> triples;
    std::set<EventSymbol> event_set;
    std::istringstream clauses(text);
    std::string clause;
    while (std::getline(clauses, clause, ',')) {
        clause = trim(clause);
        if (clause.empty()) throw std::invalid_argument("empty clause in pattern string");
        std::istringstream tok(clause);
        std::string left_s, rel_s, right_s, extra;
        if (!(tok >> left_s >> rel_s >> right_s) || (tok >> extra))
            throw std::invalid_argument("bad pattern clause \"" + clause + "\"");
        RelationKind rel;
        if (rel_s == ">") rel = RelationKind::Follows;
        else if (rel_s == ">=") rel = RelationKind::Contains;
        else if (rel_s == "~") rel = RelationKind::Overlaps;
        else throw std::invalid_argument("bad relation \"" + rel_s + "\" (expected >, >= or ~)");
        Triple t{rel, parse_event(left_s, db), parse_event(right_s, db)};
        if (t.left == t.right) throw std::invalid_argument("self-relation in pattern string");
        if (rel == RelationKind::Overlaps && t.right < t.left) std::swap(t.left, t.right);
        triples.push_back(std::move(t));
        event_set.insert(triples.back().left);
        event_set.insert(triples.back().right);
    }
    if (triples.empty()) throw std::invalid_argument("empty pattern string");

    TemporalPattern p;
    p.events.assign(event_set.begin(), event_set.end());
    const std::size_t k = p.events.size();
    p.triples.resize(k * (k - 1) / 2);
    std::vector<bool> filled(p.triples.size(), false);
    auto index_of = [&](const EventSymbol& e) {
        return static_cast<std::size_t>(
            std::find(p.events.begin(), p.events.end(), e) - p.events.begin());
    };
    for (const Triple& t : triples) {
        std::size_t i = index_of(t.left), j = index_of(t.right);
        if (i > j) std::swap(i, j);
        const std::size_t slot = TemporalPattern::pair_slot(i, j, k);
        if (filled[slot])
            throw std::invalid_argument("duplicate relation for pair " + p.events[i].display() +
                                        "," + p.events[j].display());
        p.triples[slot] = t;
        filled[slot] = true;
    }
    for (bool f : filled)
        if (!f) throw std::invalid_argument("pattern string does not cover every event pair");
    validate_pattern(p);
    return p;
}

}  // namespace dstpm
