#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace lcrit {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Neumaier-compensated accumulator. Sums with ~1 ulp error per term
// independent of cancellation between terms.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (unsigned __int128)r * r > n) --r;
    while ((unsigned __int128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(uint64_t n, uint64_t& root) {
    root = isqrt_u64(n);
    return root * root == n;
}

inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(block) for block = 0..n_blocks-1 on a small thread pool and merges
// the per-block partial sums in block order. The result is independent of the
// worker count: partitioning is fixed and the merge order is deterministic.
inline double parallel_block_sum(std::size_t n_blocks, unsigned workers,
                                 const std::function<double(std::size_t)>& fn) {
    std::vector<double> partial(n_blocks, 0.0);
    unsigned nw = resolve_workers(workers);
    if (nw <= 1 || n_blocks <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) partial[b] = fn(b);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (;;) {
                std::size_t b = next.fetch_add(1);
                if (b >= n_blocks) break;
                partial[b] = fn(b);
            }
        };
        std::vector<std::thread> pool;
        unsigned n = std::min<std::size_t>(nw, n_blocks);
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    NeumaierSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

} // namespace lcrit
