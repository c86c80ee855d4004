#include "dstpm/dataflow.hpp"

#include <mutex>

namespace dstpm {

std::vector<DataPartition> partition_db(const SequenceDatabase& db, int n) {
    if (n < 1) throw std::invalid_argument("partition count must be >= 1");
    const int total = static_cast<int>(db.size());
    if (total == 0) return {};
    if (n > total) n = total;
    std::vector<DataPartition> parts;
    parts.reserve(static_cast<std::size_t>(n));
    const int base = total / n;
    const int extra = total % n;  // first `extra` partitions get one more
    GranulePos lo = 1;
    for (int i = 0; i < n; ++i) {
        const int len = base + (i < extra ? 1 : 0);
        parts.push_back({i, lo, static_cast<GranulePos>(lo + len - 1)});
        lo += len;
    }
    return parts;
}

void Executor::run_indexed(const std::string& stage, std::size_t tasks,
                           const std::function<void(std::size_t)>& body) {
    if (tasks == 0) return;
    const int n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers_), tasks);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) {
            try {
                body(i);
            } catch (const std::exception& e) {
                throw std::runtime_error(stage + ": task " + std::to_string(i) +
                                         " failed: " + e.what());
            }
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::string first_error;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks) return;
            try {
                body(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (first_error.empty())
                    first_error = stage + ": task " + std::to_string(i) + " failed: " + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);
}

}  // namespace dstpm
