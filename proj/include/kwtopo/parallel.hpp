#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace kwtopo {

/// Deterministic chunked sum over the index range [0, count). The range is
/// cut into fixed-size chunks; `chunk_fn(begin, end)` returns the sum of one
/// chunk, and chunk sums are folded in a pairwise tree whose shape depends
/// only on the chunk count. Results are therefore bit-identical for any
/// worker count.
template <typename T>
T chunked_sum(uint64_t count, unsigned workers,
              const std::function<T(uint64_t, uint64_t)>& chunk_fn,
              uint64_t chunk_size = 1u << 14) {
    if (count == 0) return T{};
    uint64_t n_chunks = (count + chunk_size - 1) / chunk_size;
    std::vector<T> sums(n_chunks);

    auto run = [&](uint64_t chunk_begin, uint64_t chunk_end) {
        for (uint64_t c = chunk_begin; c < chunk_end; ++c) {
            uint64_t lo = c * chunk_size;
            uint64_t hi = std::min(count, lo + chunk_size);
            sums[c] = chunk_fn(lo, hi);
        }
    };

    if (workers <= 1 || n_chunks == 1) {
        run(0, n_chunks);
    } else {
        unsigned w = std::min<uint64_t>(workers, n_chunks);
        std::vector<std::thread> pool;
        uint64_t per = (n_chunks + w - 1) / w;
        for (unsigned t = 0; t < w; ++t) {
            uint64_t lo = t * per;
            uint64_t hi = std::min<uint64_t>(n_chunks, lo + per);
            if (lo >= hi) break;
            pool.emplace_back(run, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // Pairwise tree over chunk sums; shape depends only on n_chunks.
    while (sums.size() > 1) {
        std::vector<T> next;
        next.reserve((sums.size() + 1) / 2);
        for (size_t i = 0; i + 1 < sums.size(); i += 2) next.push_back(sums[i] + sums[i + 1]);
        if (sums.size() % 2 == 1) next.push_back(sums.back());
        sums = std::move(next);
    }
    return sums.front();
}

} // namespace kwtopo
