#include "dstpm/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dstpm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

SequenceDatabase read_sequence_db(std::istream& in, const std::string& origin_name) {
    SequenceDatabase db;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<std::set<std::string>> alphabets;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            fail(origin_name, lineno, std::string("malformed line: ") + e.what());
        }
        if (!have_header) {
            if (!j.contains("series") || !j.contains("granule_span"))
                fail(origin_name, lineno, "missing header fields (series, granule_span)");
            for (const auto& s : j.at("series")) {
                db.series.push_back({s.get<std::string>(), {}});
                alphabets.emplace_back();
            }
            db.granule_span = j.at("granule_span").get<Tick>();
            if (db.granule_span < 1) fail(origin_name, lineno, "granule_span must be >= 1");
            db.origin = j.value("origin", Tick{0});
            db.tick_unit = j.value("tick_unit", std::string("tick"));
            have_header = true;
            continue;
        }
        if (!j.contains("granule")) fail(origin_name, lineno, "row without granule");
        const GranulePos g = j.at("granule").get<GranulePos>();
        const GranulePos expected = static_cast<GranulePos>(db.sequences.size()) + 1;
        if (g == expected - 1 || (g >= 1 && g < expected))
            fail(origin_name, lineno, "duplicate granule " + std::to_string(g));
        if (g != expected)
            fail(origin_name, lineno, "non-contiguous granules: expected " +
                                          std::to_string(expected) + ", got " + std::to_string(g));
        TemporalSequence seq;
        seq.granule = g;
        for (const auto& ev : j.value("events", json::array())) {
            EventInstance inst;
            inst.granule = g;
            const std::string sname = ev.at("s").get<std::string>();
            const int si = db.series_index(sname);
            if (si < 0) fail(origin_name, lineno, "unknown series " + sname);
            inst.symbol = {si, sname, ev.at("v").get<std::string>()};
            inst.interval = {ev.at("start").get<Tick>(), ev.at("end").get<Tick>()};
            if (inst.interval.start >= inst.interval.end)
                fail(origin_name, lineno,
                     "inverted or empty interval for " + inst.symbol.display());
            if (inst.interval.start < db.granule_start(g) || inst.interval.end > db.granule_end(g))
                fail(origin_name, lineno,
                     "interval outside granule span for " + inst.symbol.display());
            alphabets[static_cast<std::size_t>(si)].insert(inst.symbol.symbol);
            seq.instances.push_back(std::move(inst));
        }
        canonical_order(seq.instances);
        db.sequences.push_back(std::move(seq));
    }
    if (!have_header || db.sequences.empty())
        throw std::runtime_error(origin_name + ": empty database");
    for (std::size_t i = 0; i < db.series.size(); ++i)
        db.series[i].alphabet.assign(alphabets[i].begin(), alphabets[i].end());
    return db;
}

SequenceDatabase load_sequence_db(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    return read_sequence_db(in, path);
}

void save_sequence_db(const SequenceDatabase& db, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    json header;
    json series = json::array();
    for (const SeriesHeader& s : db.series) series.push_back(s.name);
    header["series"] = series;
    header["granule_span"] = db.granule_span;
    header["tick_unit"] = db.tick_unit;
    if (db.origin != 0) header["origin"] = db.origin;
    out << header.dump() << "\n";
    for (const TemporalSequence& seq : db.sequences) {
        json row;
        row["granule"] = seq.granule;
        json events = json::array();
        for (const EventInstance& i : seq.instances)
            events.push_back({{"s", i.symbol.series},
                              {"v", i.symbol.symbol},
                              {"start", i.interval.start},
                              {"end", i.interval.end}});
        row["events"] = events;
        out << row.dump() << "\n";
    }
}

std::vector<std::string> validate_db(const SequenceDatabase& db) {
    std::vector<std::string> out;
    if (db.granule_span < 1) out.push_back("granule_span must be >= 1");
    std::set<GranulePos> seen;
    for (std::size_t i = 0; i < db.sequences.size(); ++i) {
        const TemporalSequence& seq = db.sequences[i];
        const std::string at = "@G" + std::to_string(seq.granule);
        if (!seen.insert(seq.granule).second)
            out.push_back("duplicate granule " + std::to_string(seq.granule));
        if (seq.granule != static_cast<GranulePos>(i) + 1)
            out.push_back("non-contiguous granule " + std::to_string(seq.granule) +
                          " at row " + std::to_string(i + 1));
        for (const EventInstance& inst : seq.instances) {
            if (inst.granule != seq.granule)
                out.push_back("instance granule mismatch " + at);
            if (inst.interval.start >= inst.interval.end)
                out.push_back("inverted interval " + at + " (" + inst.symbol.display() + ")");
            else if (inst.interval.start < db.granule_start(seq.granule) ||
                     inst.interval.end > db.granule_end(seq.granule))
                out.push_back("interval outside granule span " + at + " (" +
                              inst.symbol.display() + ")");
            if (inst.symbol.series_index < 0 ||
                inst.symbol.series_index >= static_cast<int>(db.series.size()) ||
                db.series[static_cast<std::size_t>(inst.symbol.series_index)].name !=
                    inst.symbol.series)
                out.push_back("unknown series " + inst.symbol.series + " " + at);
        }
        for (std::size_t n = 1; n < seq.instances.size(); ++n)
            if (canonical_instance_less(seq.instances[n], seq.instances[n - 1]))
                out.push_back("instances not in canonical order " + at);
    }
    return out;
}

std::vector<RawSeries> load_raw_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::string line;
    std::size_t lineno = 0;
    std::vector<RawSeries> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("tick,", 0) == 0) continue;  // header
        std::istringstream row(line);
        std::string tick_s, series, value_s;
        if (!std::getline(row, tick_s, ',') || !std::getline(row, series, ',') ||
            !std::getline(row, value_s))
            fail(path, lineno, "expected tick,series,value");
        const Tick t = std::stoll(tick_s);
        const double v = std::stod(value_s);
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const RawSeries& r) { return r.name == series; });
        if (it == out.end()) {
            out.push_back({series, {}});
            it = std::prev(out.end());
        }
        if (!it->samples.empty() && it->samples.back().first >= t)
            fail(path, lineno, "timestamps not strictly increasing for " + series);
        it->samples.push_back({t, v});
    }
    return out;
}

namespace {

std::size_t bin_of(const SeriesBins& bins, double v) {
    std::size_t i = 0;
    while (i < bins.edges.size() && v >= bins.edges[i]) ++i;
    return i;
}

}  // namespace

SequenceDatabase symbolize(const std::vector<RawSeries>& series, const SymbolizationSpec& spec) {
    if (series.empty()) throw std::invalid_argument("symbolize: no series");
    if (spec.per_series.size() != series.size())
        throw std::invalid_argument("symbolize: bin spec count != series count");
    if (spec.granule_span < 1) throw std::invalid_argument("symbolize: granule_span must be >= 1");
    for (const SeriesBins& b : spec.per_series) {
        if (b.labels.size() != b.edges.size() + 1)
            throw std::invalid_argument("symbolize: labels count must be edges count + 1");
        if (!std::is_sorted(b.edges.begin(), b.edges.end()))
            throw std::invalid_argument("symbolize: bin edges not sorted");
        std::set<std::string> uniq(b.labels.begin(), b.labels.end());
        if (uniq.size() != b.labels.size())
            throw std::invalid_argument("symbolize: duplicate bin labels");
    }

    // Maximal same-symbol runs per series, then split at granule boundaries.
    struct Run {
        int series_index;
        std::string symbol;
        Tick start, end;
    };
    Tick max_end = spec.origin;
    std::vector<Run> runs;
    for (std::size_t si = 0; si < series.size(); ++si) {
        const RawSeries& rs = series[si];
        const SeriesBins& bins = spec.per_series[si];
        if (rs.samples.empty()) continue;
        const std::size_t n = rs.samples.size();
        const Tick spacing =
            n >= 2 ? rs.samples[n - 1].first - rs.samples[n - 2].first : Tick{1};
        for (std::size_t i = 0; i < n; ++i) {
            const auto& [t, v] = rs.samples[i];
            const std::string& sym = bins.labels[bin_of(bins, v)];
            const Tick end = i + 1 < n ? rs.samples[i + 1].first : t + spacing;
            if (!runs.empty() && runs.back().series_index == static_cast<int>(si) &&
                runs.back().symbol == sym && runs.back().end == t) {
                runs.back().end = end;
            } else {
                runs.push_back({static_cast<int>(si), sym, t, end});
            }
            max_end = std::max(max_end, end);
        }
    }

    SequenceDatabase db;
    db.granule_span = spec.granule_span;
    db.origin = spec.origin;
    db.tick_unit = spec.tick_unit;
    std::vector<std::set<std::string>> alphabets(series.size());
    for (const RawSeries& rs : series) db.series.push_back({rs.name, {}});

    const Tick total = max_end - spec.origin;
    const GranulePos granules =
        static_cast<GranulePos>((total + spec.granule_span - 1) / spec.granule_span);
    if (granules < 1) throw std::invalid_argument("symbolize: no data in tick range");
    db.sequences.resize(static_cast<std::size_t>(granules));
    for (GranulePos g = 1; g <= granules; ++g)
        db.sequences[static_cast<std::size_t>(g) - 1].granule = g;

    for (const Run& r : runs) {
        Tick s = r.start;
        while (s < r.end) {
            const GranulePos g =
                static_cast<GranulePos>((s - spec.origin) / spec.granule_span) + 1;
            const Tick cut = std::min(r.end, db.granule_end(g));
            EventInstance inst;
            inst.symbol = {r.series_index, db.series[static_cast<std::size_t>(r.series_index)].name,
                           r.symbol};
            inst.interval = {s, cut};
            inst.granule = g;
            db.sequences[static_cast<std::size_t>(g) - 1].instances.push_back(std::move(inst));
            alphabets[static_cast<std::size_t>(r.series_index)].insert(r.symbol);
            s = cut;
        }
    }
    for (TemporalSequence& seq : db.sequences) canonical_order(seq.instances);
    for (std::size_t i = 0; i < db.series.size(); ++i)
        db.series[i].alphabet.assign(alphabets[i].begin(), alphabets[i].end());
    return db;
}

}  // namespace dstpm
