#include <doctest.h>

#include <numeric>
#include <random>

#include "dstpm/dataflow.hpp"
#include "helpers.hpp"

using namespace dstpm;
using namespace dstpm::testing;

TEST_CASE("partition_db balance") {
    const SequenceDatabase db14 = random_db(1, 14, 1);
    auto parts = partition_db(db14, 4);
    REQUIRE(parts.size() == 4);
    std::vector<int> sizes;
    for (const auto& p : parts) sizes.push_back(p.hi - p.lo + 1);
    CHECK(sizes == std::vector<int>{4, 4, 3, 3});
    CHECK(parts.front().lo == 1);
    CHECK(parts.back().hi == 14);
    for (std::size_t i = 1; i < parts.size(); ++i) CHECK(parts[i].lo == parts[i - 1].hi + 1);

    parts = partition_db(db14, 1);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].lo == 1);
    CHECK(parts[0].hi == 14);

    // n > |db| clamps
    CHECK(partition_db(db14, 100).size() == 14);

    const SequenceDatabase db1000 = random_db(2, 1000, 1);
    parts = partition_db(db1000, 20);
    REQUIRE(parts.size() == 20);
    for (const auto& p : parts) CHECK(p.hi - p.lo + 1 == 50);
}

namespace {

// word-count style stage over granule positions
std::map<int, std::vector<int>> run_stage(const SequenceDatabase& db, int workers, int nparts,
                                          Executor& exec) {
    auto parts = partition_db(db, nparts);
    return exec.map_reduce<int, std::vector<int>>(
        "test-stage", parts,
        [](const DataPartition& p) {
            std::vector<std::pair<int, std::vector<int>>> out;
            for (GranulePos g = p.lo; g <= p.hi; ++g) out.push_back({g % 7, {g}});
            return out;
        },
        [](std::vector<int>& into, std::vector<int>&& from) {
            into.insert(into.end(), from.begin(), from.end());
            std::sort(into.begin(), into.end());
        },
        [](const int&, const std::vector<int>& v) { return static_cast<std::int64_t>(v.size()); });
}

}  // namespace

TEST_CASE("map_reduce output is invariant to workers and partitioning") {
    const SequenceDatabase db = random_db(5, 200, 1);
    Executor base(1);
    const auto expected = run_stage(db, 1, 1, base);
    for (int workers : {1, 2, 4, 8}) {
        for (int nparts : {1, 4, 16}) {
            Executor exec(workers);
            CHECK(run_stage(db, workers, nparts, exec) == expected);
        }
    }
}

TEST_CASE("shuffle_records is invariant to worker count for fixed partitioning") {
    const SequenceDatabase db = random_db(6, 120, 1);
    std::int64_t expected = -1;
    for (int workers : {1, 3, 8}) {
        Executor exec(workers);
        run_stage(db, workers, 8, exec);
        const std::int64_t records = exec.stats().stages.back().shuffle_records;
        if (expected < 0) expected = records;
        CHECK(records == expected);
    }
}

TEST_CASE("merge function contract holds for the support-union merger") {
    // the merge the miner uses: sorted union of granule-keyed instance lists
    std::mt19937_64 rng(9);
    auto merge = [](std::vector<int> a, std::vector<int> b) {
        std::vector<int> out;
        std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    };
    for (int trial = 0; trial < 100; ++trial) {
        auto mk = [&] {
            std::vector<int> v(rng() % 6);
            for (int& x : v) x = static_cast<int>(rng() % 20);
            std::sort(v.begin(), v.end());
            return v;
        };
        const auto a = mk(), b = mk(), c = mk();
        CHECK(merge(a, b) == merge(b, a));
        CHECK(merge(merge(a, b), c) == merge(a, merge(b, c)));
    }
    CHECK(merge({1, 3}, {2}) == std::vector<int>{1, 2, 3});
}

TEST_CASE("parallel_map preserves item order") {
    std::vector<int> items(500);
    std::iota(items.begin(), items.end(), 0);
    Executor exec(8);
    const auto out = exec.parallel_map("square", items, [](int x) { return x * x; });
    for (int i = 0; i < 500; ++i) CHECK(out[static_cast<std::size_t>(i)] == i * i);
}

TEST_CASE("map failure reports the partition") {
    const SequenceDatabase db = random_db(7, 20, 1);
    Executor exec(4);
    auto parts = partition_db(db, 5);
    CHECK_THROWS_WITH_AS(
        (exec.map_reduce<int, int>(
            "boom", parts,
            [](const DataPartition& p) -> std::vector<std::pair<int, int>> {
                if (p.id == 3) throw std::runtime_error("bad partition");
                return {};
            },
            [](int&, int&&) {}, [](const int&, const int&) { return 0; })),
        doctest::Contains("task 3"), std::runtime_error);
}

TEST_CASE("broadcast shares one immutable value") {
    Executor exec(4);
    const auto handle = exec.broadcast(std::vector<int>{1, 2, 3}, 24);
    std::vector<int> items(8);
    const auto reads = exec.parallel_map("read", items, [&](int) { return (*handle)[1]; });
    for (int v : reads) CHECK(v == 2);
    CHECK(exec.stats().broadcasts == 1);
    CHECK(exec.stats().broadcast_bytes == 24);
    static_assert(std::is_const_v<std::remove_reference_t<decltype(*handle)>>);
}
