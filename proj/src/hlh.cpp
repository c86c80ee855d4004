#include "dstpm/hlh.hpp"

namespace dstpm {

const SupportSet& HLH1::support(const EventSymbol& e) const {
    auto it = eh.find(e);
    if (it == eh.end()) throw std::out_of_range("HLH1: unknown event " + e.display());
    return it->second;
}

const std::vector<EventInstance>& HLH1::instances(const EventSymbol& e, GranulePos g) const {
    auto it = gh.find({e, g});
    if (it == gh.end())
        throw std::out_of_range("HLH1: no instances for " + e.display() + " @G" + std::to_string(g));
    return it->second;
}

HLH1 build_hlh1(
    const std::vector<std::tuple<EventSymbol, SupportSet,
                                 std::map<GranulePos, std::vector<EventInstance>>>>& candidates) {
    HLH1 h;
    for (const auto& [sym, sup, by_granule] : candidates) {
        if (h.eh.count(sym)) throw std::invalid_argument("build_hlh1: duplicate " + sym.display());
        if (!is_valid_support(sup)) throw std::invalid_argument("build_hlh1: invalid support");
        h.eh[sym] = sup;
        for (GranulePos g : sup) {
            auto it = by_granule.find(g);
            if (it == by_granule.end() || it->second.empty())
                throw std::invalid_argument("build_hlh1: support granule without instances");
            h.gh[{sym, g}] = it->second;
        }
        if (by_granule.size() != sup.size())
            throw std::invalid_argument("build_hlh1: instances outside support");
    }
    return h;
}

bool HLHk::has_triple(const Triple& t) const {
    if (k != 2) throw std::logic_error("has_triple is a level-2 query");
    TemporalPattern p;
    p.events = {t.left, t.right};
    if (t.right < t.left) std::swap(p.events[0], p.events[1]);
    p.triples = {t};
    return phk.count(p) != 0;
}

void HLHk::insert_pattern(const TemporalPattern& p, SupportSet sup,
                          std::map<GranulePos, std::vector<EventInstance>> witnesses) {
    validate_pattern(p);
    auto it = ehk.find(p.events);
    if (it == ehk.end())
        throw std::invalid_argument("insert_pattern: event tuple not indexed");
    if (phk.count(p)) throw std::invalid_argument("insert_pattern: duplicate pattern");
    if (!is_valid_support(sup)) throw std::invalid_argument("insert_pattern: invalid support");
    for (GranulePos g : sup)
        if (!witnesses.count(g))
            throw std::invalid_argument("insert_pattern: support granule without witness");
    ghk[p] = std::move(witnesses);
    it->second.patterns.push_back(p);
    phk[p] = std::move(sup);
}

namespace {

nlohmann::json instances_json(const std::vector<EventInstance>& insts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const EventInstance& i : insts)
        arr.push_back({{"e", i.symbol.display()},
                       {"start", i.interval.start},
                       {"end", i.interval.end}});
    return arr;
}

}  // namespace

std::int64_t serialized_bytes(const HLH1& h) {
    std::int64_t b = 0;
    for (const auto& [sym, sup] : h.eh)
        b += static_cast<std::int64_t>(sym.series.size() + sym.symbol.size() + 4 * sup.size());
    for (const auto& [key, insts] : h.gh)
        b += 8 + static_cast<std::int64_t>(24 * insts.size());
    return b;
}

nlohmann::json dump_hlh1(const HLH1& h) {
    nlohmann::json eh = nlohmann::json::object();
    nlohmann::json gh = nlohmann::json::object();
    for (const auto& [sym, sup] : h.eh) eh[sym.display()] = sup;
    for (const auto& [key, insts] : h.gh)
        gh[key.first.display() + "@" + std::to_string(key.second)] = instances_json(insts);
    return {{"EH", eh}, {"GH", gh}};
}

nlohmann::json dump_hlhk(const HLHk& h) {
    nlohmann::json ehk = nlohmann::json::object();
    for (const auto& [tuple, entry] : h.ehk) {
        std::string key;
        for (const EventSymbol& e : tuple) {
            if (!key.empty()) key += ",";
            key += e.display();
        }
        nlohmann::json pats = nlohmann::json::array();
        for (const TemporalPattern& p : entry.patterns) pats.push_back(p.display());
        ehk[key] = {{"support", entry.support}, {"patterns", pats}};
    }
    nlohmann::json phk = nlohmann::json::object();
    for (const auto& [p, sup] : h.phk) phk[p.display()] = sup;
    nlohmann::json ghk = nlohmann::json::object();
    for (const auto& [p, by_g] : h.ghk)
        for (const auto& [g, insts] : by_g)
            ghk[p.display() + "@" + std::to_string(g)] = instances_json(insts);
    return {{"k", h.k}, {"EHk", ehk}, {"PHk", phk}, {"GHk", ghk}};
}

}  // namespace dstpm
