#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "helpers.hpp"

using nlohmann::json;
using dstpm::testing::table1_path;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(DSTPM_CLI_PATH) + " " + args + " 2>&1";
    std::FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string kFixtureFlags =
    " --max-period 2 --min-density 3 --min-season 2 --dist-min 4 --dist-max 10";

}  // namespace

TEST_CASE("mine lists the fixture patterns") {
    const RunResult r =
        run_cli("mine " + table1_path() + kFixtureFlags + " --max-k 2 --detail full");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.output);
    CHECK(report.at("schema") == "dstpm-report/1");
    std::vector<std::string> names;
    for (const auto& p : report.at("patterns")) names.push_back(p.at("pattern").get<std::string>());
    CHECK(std::find(names.begin(), names.end(), "C:1 >= D:1") != names.end());
    CHECK(std::find(names.begin(), names.end(), "C:1 > F:1") != names.end());
    CHECK(std::find(names.begin(), names.end(), "M:1") == names.end());
    // full detail carries witnesses
    for (const auto& p : report.at("patterns")) CHECK(p.contains("witnesses"));
}

TEST_CASE("mine reports are byte-identical across runs and worker counts") {
    const std::string base = "mine " + table1_path() + kFixtureFlags + " --max-k 3 --out ";
    const RunResult a = run_cli(base + "/tmp/dstpm_cli_a.json");
    const RunResult b = run_cli(base + "/tmp/dstpm_cli_b.json --workers 4 --partitions 5");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    std::ifstream fa("/tmp/dstpm_cli_a.json"), fb("/tmp/dstpm_cli_b.json");
    const std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    const std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
}

TEST_CASE("invalid arguments exit with 2") {
    CHECK(run_cli("mine " + table1_path() + " --min-density 0").exit_code == 2);
    CHECK(run_cli("mine " + table1_path() + " --dist-min 5 --dist-max 4").exit_code == 2);
    CHECK(run_cli("mine").exit_code == 2);                       // missing db argument
    CHECK(run_cli("inspect " + table1_path()).exit_code == 2);   // neither --event nor --pattern
    CHECK(run_cli("inspect " + table1_path() + " --pattern \"C:9 > F:1\"").exit_code == 2);
}

TEST_CASE("missing input exits with 3") {
    CHECK(run_cli("mine /tmp/does_not_exist.jsonl").exit_code == 3);
}

TEST_CASE("inspect breaks down an event's seasons") {
    const RunResult r =
        run_cli("inspect " + table1_path() + kFixtureFlags + " --event M:1");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j.at("support_size") == 11);
    CHECK(j.at("season_count") == 1);
    CHECK(j.at("frequent") == false);

    const RunResult rp =
        run_cli("inspect " + table1_path() + kFixtureFlags + " --pattern \"C:1 > F:1\"");
    REQUIRE(rp.exit_code == 0);
    const json jp = json::parse(rp.output);
    CHECK(jp.at("support") == json::parse("[1,2,3,11,12,14]"));
    CHECK(jp.at("frequent") == true);
}

TEST_CASE("gen / oracle-check round trip") {
    const std::string plant = "/tmp/dstpm_cli_plant.json";
    {
        std::ofstream out(plant);
        out << R"({"planted":[{"pattern":"S0:1 > S1:1","season_starts":[5,20],"season_length":4}]})";
    }
    const RunResult g = run_cli("gen --out /tmp/dstpm_cli_gen.jsonl --granules 30 --series 2 "
                                "--alphabet 2 --noise 0.3 --span 16 --seed 9 --plant " +
                                plant);
    REQUIRE(g.exit_code == 0);
    const RunResult c = run_cli(
        "oracle-check /tmp/dstpm_cli_gen.jsonl --max-period 1 --min-density 4 --min-season 2 "
        "--dist-min 12 --dist-max 12 --max-k 2 --workers 2 --partitions 3");
    CHECK(c.exit_code == 0);
    CHECK(c.output.find("OK") != std::string::npos);
}

TEST_CASE("bench emits one CSV row per combination") {
    const RunResult r = run_cli("bench " + table1_path() + kFixtureFlags +
                                " --max-k 2 --workers 1,2 --partitions 1,4 --repetitions 1");
    REQUIRE(r.exit_code == 0);
    int rows = 0;
    for (char ch : r.output)
        if (ch == '\n') ++rows;
    CHECK(rows == 5);  // header + 2x2 combinations
    CHECK(r.output.rfind("workers,partitions,wall_ms,shuffle_bytes,patterns_found\n", 0) == 0);
}
