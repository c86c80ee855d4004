// dstpm: frequent seasonal temporal pattern miner.
//
// Subcommands: mine, gen, oracle-check, bench, inspect. Exit codes:
// 0 success, 1 mismatch (oracle-check), 2 invalid arguments, 3 input errors.

#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dstpm/datagen.hpp"
#include "dstpm/ingest.hpp"
#include "dstpm/miner.hpp"
#include "dstpm/oracle.hpp"
#include "dstpm/relations.hpp"
#include "dstpm/report.hpp"
#include "dstpm/seasonality.hpp"

namespace {

using namespace dstpm;
using nlohmann::json;

struct ThresholdFlags {
    std::string max_period = "1";
    std::string min_density = "1";
    std::string min_season = "1";
    std::string dist_min = "0";
    std::string dist_max = "0";
    int max_k = 5;

    RawConfig raw() const {
        RawConfig r;
        r.max_period = Threshold::parse(max_period);
        r.min_density = Threshold::parse(min_density);
        r.min_season = Threshold::parse(min_season);
        r.dist_min = Threshold::parse(dist_min);
        r.dist_max = Threshold::parse(dist_max);
        r.max_k = max_k;
        return r;
    }
};

void add_threshold_flags(CLI::App* cmd, ThresholdFlags& t) {
    cmd->add_option("--max-period", t.max_period, "maxPeriod (granules, or e.g. \"0.2%\")");
    cmd->add_option("--min-density", t.min_density, "minDensity (granules, or percent)");
    cmd->add_option("--min-season", t.min_season, "minSeason (count, or percent)");
    cmd->add_option("--dist-min", t.dist_min, "minimum season distance");
    cmd->add_option("--dist-max", t.dist_max, "maximum season distance");
    cmd->add_option("--max-k", t.max_k, "pattern length cap");
}

void write_output(const json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
        out << j.dump(2) << "\n";
    }
}

int cmd_mine(const std::string& db_path, const ThresholdFlags& t, int workers, int partitions,
             const std::string& out_path, bool full_detail) {
    const SequenceDatabase db = load_sequence_db(db_path);
    const MiningConfig cfg = resolve_thresholds(t.raw(), static_cast<std::int64_t>(db.size()));
    Executor exec(workers);
    const MiningResult result = mine(db, cfg, exec, {partitions, full_detail});
    write_output(make_report(cfg, result, full_detail), out_path);
    return 0;
}

int cmd_gen(const std::string& out_path, int granules, int series, int alphabet, double noise,
            Tick span, const std::string& plant_spec_path, std::uint64_t seed) {
    GenSpec spec;
    spec.granules = granules;
    spec.series_count = series;
    spec.alphabet_size = alphabet;
    spec.noise_density = noise;
    spec.granule_span = span;
    SequenceDatabase db;
    if (!plant_spec_path.empty()) {
        std::ifstream in(plant_spec_path);
        if (!in) throw std::runtime_error(plant_spec_path + ": cannot open");
        json j = json::parse(in);
        // Planted events are parsed against the generator's series layout.
        SequenceDatabase header_db;
        for (int s = 0; s < series; ++s)
            header_db.series.push_back({"S" + std::to_string(s), {}});
        for (const auto& pj : j.at("planted")) {
            PlantedPattern pp;
            pp.pattern = parse_pattern(pj.at("pattern").get<std::string>(), header_db);
            for (const auto& s : pj.at("season_starts")) pp.season_starts.push_back(s.get<GranulePos>());
            pp.season_length = pj.at("season_length").get<int>();
            pp.period_within = pj.value("period_within", 1);
            spec.planted.push_back(std::move(pp));
        }
    }
    db = generate(spec, seed);
    save_sequence_db(db, out_path);
    std::cerr << "wrote " << db.size() << " granules, " << db.series.size() << " series to "
              << out_path << "\n";
    return 0;
}

std::string result_key(const PatternResult& pr) {
    json seasons = json::array();
    for (std::size_t i = 0; i < pr.seasons.season_count(); ++i) seasons.push_back(pr.seasons.season(i));
    return pr.pattern.display() + " sup=" + json(pr.support).dump() +
           " seasons=" + seasons.dump();
}

int cmd_oracle_check(const std::string& db_path, const ThresholdFlags& t, int workers,
                     int partitions) {
    const SequenceDatabase db = load_sequence_db(db_path);
    const MiningConfig cfg = resolve_thresholds(t.raw(), static_cast<std::int64_t>(db.size()));
    Executor exec(workers);
    const MiningResult mined = mine(db, cfg, exec, {partitions, false});
    const OracleResult expected = brute_force_mine(db, cfg, cfg.max_k);

    std::vector<std::string> got, want;
    for (const PatternResult& pr : mined.frequent) got.push_back(result_key(pr));
    for (const PatternResult& pr : expected.frequent) want.push_back(result_key(pr));
    bool ok = true;
    for (const std::string& w : want)
        if (std::find(got.begin(), got.end(), w) == got.end()) {
            std::cout << "missing from miner: " << w << "\n";
            ok = false;
        }
    for (const std::string& g : got)
        if (std::find(want.begin(), want.end(), g) == want.end()) {
            std::cout << "extra in miner:    " << g << "\n";
            ok = false;
        }
    std::cout << (ok ? "OK" : "MISMATCH") << ": miner " << got.size() << " patterns, oracle "
              << want.size() << " patterns\n";
    return ok ? 0 : 1;
}

int cmd_bench(const std::string& db_path, const ThresholdFlags& t,
              const std::vector<int>& workers_list, const std::vector<int>& partitions_list,
              int repetitions, const std::string& out_path) {
    const SequenceDatabase db = load_sequence_db(db_path);
    const MiningConfig cfg = resolve_thresholds(t.raw(), static_cast<std::int64_t>(db.size()));
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) throw std::runtime_error(out_path + ": cannot open for writing");
        out = &file;
    }
    *out << "workers,partitions,wall_ms,shuffle_bytes,patterns_found\n";
    for (int p : partitions_list) {
        for (int w : workers_list) {
            std::vector<double> walls;
            std::int64_t shuffle = 0;
            std::size_t patterns = 0;
            for (int r = 0; r < repetitions; ++r) {
                Executor exec(w);
                const MiningResult res = mine(db, cfg, exec, {p, false});
                walls.push_back(exec.stats().total_wall_ms());
                shuffle = exec.stats().total_shuffle_bytes();
                patterns = res.frequent.size();
            }
            std::sort(walls.begin(), walls.end());
            const double median = walls[walls.size() / 2];
            *out << w << "," << p << "," << median << "," << shuffle << "," << patterns << "\n";
        }
    }
    return 0;
}

int cmd_inspect(const std::string& db_path, const ThresholdFlags& t, const std::string& event_s,
                const std::string& pattern_s) {
    const SequenceDatabase db = load_sequence_db(db_path);
    const MiningConfig cfg = resolve_thresholds(t.raw(), static_cast<std::int64_t>(db.size()));

    SupportSet sup;
    std::string label;
    if (!event_s.empty()) {
        const EventSymbol e = parse_event(event_s, db);
        label = e.display();
        for (const TemporalSequence& seq : db.sequences)
            for (const EventInstance& inst : seq.instances)
                if (inst.symbol == e) {
                    sup.push_back(seq.granule);
                    break;
                }
    } else {
        const TemporalPattern p = parse_pattern(pattern_s, db);
        label = p.display();
        for (const TemporalSequence& seq : db.sequences)
            if (pattern_occurs(seq, p)) sup.push_back(seq.granule);
    }
    const SeasonSet seasons = compute_seasons(sup, cfg);
    json seasons_j = json::array();
    for (std::size_t i = 0; i < seasons.season_count(); ++i) seasons_j.push_back(seasons.season(i));
    json near_j = json::array();
    for (const SupportSet& s : seasons.near_sets) near_j.push_back(s);
    json out = {{"subject", label},
                {"support", sup},
                {"support_size", sup.size()},
                {"near_support_sets", near_j},
                {"seasons", seasons_j},
                {"season_count", seasons.season_count()},
                {"frequent", is_frequent_seasonal(seasons, cfg)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seasonal temporal pattern miner"};
    app.require_subcommand(1);

    ThresholdFlags t;
    std::string db_path, out_path;
    int workers = 1, partitions = 1;
    std::string detail = "summary";

    auto* mine_cmd = app.add_subcommand("mine", "mine frequent seasonal patterns");
    mine_cmd->add_option("db", db_path, "input JSONL database")->required();
    add_threshold_flags(mine_cmd, t);
    mine_cmd->add_option("--workers", workers);
    mine_cmd->add_option("--partitions", partitions);
    mine_cmd->add_option("--out", out_path, "report path (default stdout)");
    mine_cmd->add_option("--detail", detail)->check(CLI::IsMember({"summary", "full"}));

    int gen_granules = 100, gen_series = 4, gen_alphabet = 2;
    double gen_noise = 0.2;
    Tick gen_span = 16;
    std::string plant_spec;
    std::uint64_t seed = 1;
    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic database");
    gen_cmd->add_option("--out", out_path, "output JSONL path")->required();
    gen_cmd->add_option("--granules", gen_granules);
    gen_cmd->add_option("--series", gen_series);
    gen_cmd->add_option("--alphabet", gen_alphabet);
    gen_cmd->add_option("--noise", gen_noise, "background instance density per (granule, series)");
    gen_cmd->add_option("--span", gen_span, "granule span in ticks");
    gen_cmd->add_option("--plant", plant_spec, "JSON file with planted patterns");
    gen_cmd->add_option("--seed", seed);

    auto* check_cmd = app.add_subcommand("oracle-check", "compare miner against the brute-force oracle");
    check_cmd->add_option("db", db_path, "input JSONL database")->required();
    add_threshold_flags(check_cmd, t);
    check_cmd->add_option("--workers", workers);
    check_cmd->add_option("--partitions", partitions);

    std::vector<int> bench_workers{1, 2, 4}, bench_partitions{4};
    int repetitions = 3;
    auto* bench_cmd = app.add_subcommand("bench", "worker/partition sweep, CSV output");
    bench_cmd->add_option("db", db_path, "input JSONL database")->required();
    add_threshold_flags(bench_cmd, t);
    bench_cmd->add_option("--workers", bench_workers)->delimiter(',');
    bench_cmd->add_option("--partitions", bench_partitions)->delimiter(',');
    bench_cmd->add_option("--repetitions", repetitions);
    bench_cmd->add_option("--out", out_path, "CSV path (default stdout)");

    std::string event_s, pattern_s;
    auto* inspect_cmd = app.add_subcommand("inspect", "per-event / per-pattern season breakdown");
    inspect_cmd->add_option("db", db_path, "input JSONL database")->required();
    add_threshold_flags(inspect_cmd, t);
    inspect_cmd->add_option("--event", event_s, "event like \"M:1\"");
    inspect_cmd->add_option("--pattern", pattern_s, "pattern like \"C:1 > F:1\"");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(mine_cmd))
            return cmd_mine(db_path, t, workers, partitions, out_path, detail == "full");
        if (app.got_subcommand(gen_cmd))
            return cmd_gen(out_path, gen_granules, gen_series, gen_alphabet, gen_noise, gen_span,
                           plant_spec, seed);
        if (app.got_subcommand(check_cmd)) return cmd_oracle_check(db_path, t, workers, partitions);
        if (app.got_subcommand(bench_cmd))
            return cmd_bench(db_path, t, bench_workers, bench_partitions, repetitions, out_path);
        if (app.got_subcommand(inspect_cmd)) {
            if (event_s.empty() == pattern_s.empty()) {
                std::cerr << "inspect: exactly one of --event / --pattern is required\n";
                return 2;
            }
            return cmd_inspect(db_path, t, event_s, pattern_s);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
