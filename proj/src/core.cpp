#include "dstpm/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dstpm {

bool canonical_instance_less(const EventInstance& a, const EventInstance& b) {
    if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
    if (a.interval.end != b.interval.end) return a.interval.end < b.interval.end;
    if (a.symbol.series_index != b.symbol.series_index)
        return a.symbol.series_index < b.symbol.series_index;
    return a.symbol.symbol < b.symbol.symbol;
}

void canonical_order(std::vector<EventInstance>& instances) {
    std::stable_sort(instances.begin(), instances.end(), canonical_instance_less);
}

int SequenceDatabase::series_index(const std::string& name) const {
    for (std::size_t i = 0; i < series.size(); ++i)
        if (series[i].name == name) return static_cast<int>(i);
    return -1;
}

const char* relation_name(RelationKind r) {
    switch (r) {
        case RelationKind::Follows: return "follows";
        case RelationKind::Contains: return "contains";
        case RelationKind::Overlaps: return "overlaps";
    }
    return "?";
}

namespace {
const char* relation_glyph(RelationKind r) {
    switch (r) {
        case RelationKind::Follows: return ">";
        case RelationKind::Contains: return ">=";
        case RelationKind::Overlaps: return "~";
    }
    return "?";
}
}  // namespace

std::string Triple::display() const {
    return left.display() + " " + relation_glyph(relation) + " " + right.display();
}

std::size_t TemporalPattern::pair_slot(std::size_t i, std::size_t j, std::size_t k) {
    // pairs (0,1),(0,2),...,(0,k-1),(1,2),... in lex order
    return i * k - i * (i + 1) / 2 + (j - i - 1);
}

std::string TemporalPattern::display() const {
    if (events.size() == 1) return events[0].display();
    std::ostringstream out;
    for (std::size_t t = 0; t < triples.size(); ++t) {
        if (t) out << ", ";
        out << triples[t].display();
    }
    return out.str();
}

bool operator<(const TemporalPattern& a, const TemporalPattern& b) {
    if (a.events != b.events) return a.events < b.events;
    return a.triples < b.triples;
}

void validate_pattern(const TemporalPattern& p) {
    const std::size_t k = p.events.size();
    if (k < 1) throw std::invalid_argument("pattern has no events");
    for (std::size_t i = 1; i < k; ++i)
        if (!(p.events[i - 1] < p.events[i]))
            throw std::invalid_argument("pattern events not in canonical order");
    if (p.triples.size() != k * (k - 1) / 2)
        throw std::invalid_argument("pattern triple count is not k(k-1)/2");
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const Triple& t = p.triples[TemporalPattern::pair_slot(i, j, k)];
            const bool forward = t.left == p.events[i] && t.right == p.events[j];
            const bool reverse = t.left == p.events[j] && t.right == p.events[i];
            if (!forward && !reverse)
                throw std::invalid_argument("triple does not match its event pair slot");
            if (reverse && t.relation == RelationKind::Overlaps)
                throw std::invalid_argument("overlaps triple must keep canonical orientation");
        }
    }
}

bool is_valid_support(const SupportSet& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1) return false;
        if (i > 0 && s[i] <= s[i - 1]) return false;
    }
    return true;
}

Threshold Threshold::parse(const std::string& text) {
    std::string t = text;
    bool percent = false;
    if (!t.empty() && t.back() == '%') {
        percent = true;
        t.pop_back();
    }
    if (t.empty()) throw std::invalid_argument("empty threshold value");
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : t) {
        if (c == '.') {
            if (seen_dot || !percent) throw std::invalid_argument("bad threshold: " + text);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            num = num * 10 + (c - '0');
            if (seen_dot) den *= 10;
            seen_digit = true;
        } else {
            throw std::invalid_argument("bad threshold: " + text);
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad threshold: " + text);
    return {num, den, percent};
}

namespace {
std::int64_t resolve_one(const Threshold& t, std::int64_t db_size, const char* name,
                         bool allow_zero) {
    std::int64_t v;
    if (t.percent) {
        // ceil(num * db_size / (den * 100)), floored at 1
        const std::int64_t den = t.den * 100;
        v = (t.num * db_size + den - 1) / den;
        if (v < 1) v = 1;
    } else {
        if (t.den != 1) throw std::invalid_argument(std::string(name) + ": fractional absolute value");
        v = t.num;
    }
    if (v < (allow_zero ? 0 : 1))
        throw std::invalid_argument(std::string(name) + ": nonpositive threshold");
    return v;
}
}  // namespace

MiningConfig resolve_thresholds(const RawConfig& raw, std::int64_t db_size) {
    if (db_size < 1) throw std::invalid_argument("db_size must be >= 1");
    MiningConfig cfg;
    cfg.max_period = resolve_one(raw.max_period, db_size, "maxPeriod", false);
    cfg.min_density = resolve_one(raw.min_density, db_size, "minDensity", false);
    cfg.min_season = resolve_one(raw.min_season, db_size, "minSeason", false);
    cfg.dist_min = resolve_one(raw.dist_min, db_size, "distMin", true);
    cfg.dist_max = resolve_one(raw.dist_max, db_size, "distMax", true);
    if (cfg.dist_min > cfg.dist_max)
        throw std::invalid_argument("distInterval: dist_min > dist_max");
    if (raw.max_k < 1) throw std::invalid_argument("max_k must be >= 1");
    cfg.max_k = raw.max_k;
    return cfg;
}

}  // namespace dstpm
