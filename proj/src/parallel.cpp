#include "dunkl/parallel.hpp"

#include <oneapi/tbb/blocked_range.h>
#include <oneapi/tbb/global_control.h>
#include <oneapi/tbb/info.h>
#include <oneapi/tbb/parallel_for.h>
#include <oneapi/tbb/partitioner.h>

#include <memory>
#include <mutex>

namespace dunkl {

namespace {
std::mutex g_mutex;
std::unique_ptr<tbb::global_control> g_control;
int g_threads = 0;
} // namespace

void set_thread_count(int n) {
    std::lock_guard lock(g_mutex);
    g_control.reset();
    g_threads = n > 0 ? n : 0;
    if (g_threads > 0)
        g_control = std::make_unique<tbb::global_control>(
            tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(g_threads));
}

int thread_count() {
    std::lock_guard lock(g_mutex);
    return g_threads > 0 ? g_threads : tbb::info::default_concurrency();
}

void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    if (grain == 0) grain = 1;
    // Chunk boundaries are fixed up front; TBB only decides who runs them.
    const std::size_t chunks = (n + grain - 1) / grain;
    tbb::parallel_for(
        tbb::blocked_range<std::size_t>(0, chunks, 1),
        [&](const tbb::blocked_range<std::size_t>& range) {
            for (std::size_t c = range.begin(); c != range.end(); ++c) {
                const std::size_t lo = c * grain;
                body(lo, std::min(n, lo + grain));
            }
        },
        tbb::simple_partitioner());
}

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

} // namespace dunkl
