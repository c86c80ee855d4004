#pragma once

// In-process partitioned dataflow: contiguous granule partitions, a
// map/reduce-by-key stage runner over a worker pool, broadcast handles for
// shared read-only indexes, and shuffle accounting.
//
// Determinism contract: for a fixed input and partitioning, stage results are
// identical for any worker count. Workers only compute per-partition map
// outputs; all key merging happens on the driver in partition order.

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "dstpm/core.hpp"

namespace dstpm {

struct DataPartition {
    int id = 0;
    GranulePos lo = 0;  // inclusive
    GranulePos hi = 0;  // inclusive
};

// n contiguous, balanced (sizes differ by at most 1) partitions covering
// 1..|db|; n is clamped to |db|.
std::vector<DataPartition> partition_db(const SequenceDatabase& db, int n);

struct StageStats {
    std::string stage;
    std::int64_t tasks_run = 0;
    std::int64_t shuffle_records = 0;
    std::int64_t shuffle_bytes = 0;
    double wall_ms = 0.0;
};

struct ExecStats {
    std::vector<StageStats> stages;
    std::int64_t broadcasts = 0;
    std::int64_t broadcast_bytes = 0;

    std::int64_t total_shuffle_bytes() const {
        std::int64_t b = 0;
        for (const StageStats& s : stages) b += s.shuffle_bytes;
        return b;
    }
    double total_wall_ms() const {
        double w = 0;
        for (const StageStats& s : stages) w += s.wall_ms;
        return w;
    }
};

class Executor {
  public:
    explicit Executor(int workers) : workers_(workers < 1 ? 1 : workers) {}

    int workers() const { return workers_; }
    const ExecStats& stats() const { return stats_; }

    // Runs map_fn over every partition on the worker pool, then merges the
    // emitted (key, value) pairs by key with merge_fn, in partition order.
    // size_fn(key, value) estimates the serialized size of one reduced
    // record for shuffle accounting. merge_fn must be associative and
    // commutative. A map_fn failure aborts the stage with the partition id.
    template <class K, class V>
    std::map<K, V> map_reduce(
        const std::string& stage, const std::vector<DataPartition>& partitions,
        const std::function<std::vector<std::pair<K, V>>(const DataPartition&)>& map_fn,
        const std::function<void(V&, V&&)>& merge_fn,
        const std::function<std::int64_t(const K&, const V&)>& size_fn) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<std::vector<std::pair<K, V>>> per_part(partitions.size());
        run_indexed(stage, partitions.size(),
                    [&](std::size_t i) { per_part[i] = map_fn(partitions[i]); });
        StageStats st;
        st.stage = stage;
        st.tasks_run = static_cast<std::int64_t>(partitions.size());
        std::map<K, V> merged;
        for (auto& part : per_part) {
            st.shuffle_records += static_cast<std::int64_t>(part.size());
            for (auto& [k, v] : part) {
                auto it = merged.find(k);
                if (it == merged.end())
                    merged.emplace(std::move(k), std::move(v));
                else
                    merge_fn(it->second, std::move(v));
            }
        }
        for (const auto& [k, v] : merged) st.shuffle_bytes += size_fn(k, v);
        st.wall_ms = elapsed_ms(t0);
        stats_.stages.push_back(std::move(st));
        return merged;
    }

    // Order-preserving parallel map over an item list; items are processed in
    // fixed-size chunks (one task per chunk).
    template <class T, class Fn>
    auto parallel_map(const std::string& stage, const std::vector<T>& items, Fn&& fn)
        -> std::vector<decltype(fn(items[0]))> {
        using R = decltype(fn(items[0]));
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<R> out(items.size());
        const std::size_t chunk = chunk_size(items.size());
        const std::size_t tasks = items.empty() ? 0 : (items.size() + chunk - 1) / chunk;
        run_indexed(stage, tasks, [&](std::size_t t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(items.size(), lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(items[i]);
        });
        StageStats st;
        st.stage = stage;
        st.tasks_run = static_cast<std::int64_t>(tasks);
        st.wall_ms = elapsed_ms(t0);
        stats_.stages.push_back(std::move(st));
        return out;
    }

    // Shared read-only handle; accounting records one broadcast of the given
    // serialized size.
    template <class T>
    std::shared_ptr<const T> broadcast(T value, std::int64_t serialized_size = 0) {
        ++stats_.broadcasts;
        stats_.broadcast_bytes += serialized_size;
        return std::make_shared<const T>(std::move(value));
    }

  private:
    static double elapsed_ms(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }

    std::size_t chunk_size(std::size_t n) const {
        if (n == 0) return 1;
        // aim for a few tasks per worker so stealing balances uneven items
        const std::size_t target = static_cast<std::size_t>(workers_) * 4;
        std::size_t c = (n + target - 1) / target;
        return c < 1 ? 1 : c;
    }

    void run_indexed(const std::string& stage, std::size_t tasks,
                     const std::function<void(std::size_t)>& body);

    int workers_;
    ExecStats stats_;
};

}  // namespace dstpm
