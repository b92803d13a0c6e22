#ifndef KNAPGAP_PARALLEL_HPP
#define KNAPGAP_PARALLEL_HPP

/**
 * Deterministic work distribution for per-guess / per-tuple tasks.
 *
 * Items come from a lazy producer, are processed in bounded batches (the
 * stream is never materialized in full), and results are handed to the
 * consumer strictly in stream order.  The reduction therefore cannot observe
 * the execution order, and serial and concurrent runs produce identical
 * output.
 */

#include <future>
#include <optional>
#include <utility>
#include <vector>

namespace knapgap {

template <typename Produce, typename Work, typename Consume>
void ordered_pipeline(Produce produce, Work work, Consume consume, int threads = 1,
                      int batch_per_thread = 16) {
    if (threads <= 1) {
        while (auto item = produce()) consume(work(std::move(*item)));
        return;
    }
    using Item = typename std::decay_t<decltype(*produce())>;
    using Out = decltype(work(std::declval<Item>()));
    const std::size_t batch_size = (std::size_t)threads * (std::size_t)batch_per_thread;
    std::vector<Item> batch;
    batch.reserve(batch_size);
    for (;;) {
        batch.clear();
        while (batch.size() < batch_size) {
            auto item = produce();
            if (!item) break;
            batch.push_back(std::move(*item));
        }
        if (batch.empty()) break;
        std::vector<std::optional<Out>> results(batch.size());
        std::vector<std::future<void>> workers;
        workers.reserve(threads);
        for (int t = 0; t < threads; ++t) {
            workers.push_back(std::async(std::launch::async, [&, t]() {
                for (std::size_t i = t; i < batch.size(); i += (std::size_t)threads)
                    results[i].emplace(work(std::move(batch[i])));
            }));
        }
        for (auto& w : workers) w.get();
        for (auto& r : results) consume(std::move(*r));
        if (batch.size() < batch_size) break;  // producer exhausted
    }
}

}  // namespace knapgap

#endif  // KNAPGAP_PARALLEL_HPP
