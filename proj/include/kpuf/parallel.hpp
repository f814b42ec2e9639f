#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <omp.h>

namespace kpuf {

/// Every data-parallel kernel in this project has a serial reference path
/// and an OpenMP path selected by this policy. Both paths accumulate into
/// the same fixed chunk grid and combine partials in index order, so results
/// are bitwise identical regardless of policy or thread count; the test
/// suite asserts this and tools/kpuf_bench compares their timings.
enum class ExecPolicy { Serial, OpenMP };

/// Worker cap: OMP_NUM_THREADS-style limit further clamped by the
/// KPUF_THREADS environment variable.
int effective_threads();

namespace parallel {

inline constexpr std::size_t chunk_size = 4096;

/// Chunked sum of fn(i) over [0, n). fn must be pure.
template <typename Fn>
double chunked_sum(std::size_t n, ExecPolicy policy, Fn&& fn) {
    const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<double> partial(n_chunks, 0.0);

    if (policy == ExecPolicy::OpenMP) {
#pragma omp parallel for schedule(static) num_threads(effective_threads())
        for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_chunks); ++c) {
            const std::size_t begin = static_cast<std::size_t>(c) * chunk_size;
            const std::size_t end = begin + chunk_size < n ? begin + chunk_size : n;
            double acc = 0.0;
            for (std::size_t i = begin; i < end; ++i)
                acc += fn(i);
            partial[static_cast<std::size_t>(c)] = acc;
        }
    } else {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const std::size_t begin = c * chunk_size;
            const std::size_t end = begin + chunk_size < n ? begin + chunk_size : n;
            double acc = 0.0;
            for (std::size_t i = begin; i < end; ++i)
                acc += fn(i);
            partial[c] = acc;
        }
    }

    double total = 0.0;
    for (double p : partial)
        total += p;
    return total;
}

/// Run fn(i) for i in [0, n). Iterations must be independent.
template <typename Fn>
void parallel_for(std::size_t n, ExecPolicy policy, Fn&& fn) {
    if (policy == ExecPolicy::OpenMP) {
#pragma omp parallel for schedule(dynamic) num_threads(effective_threads())
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            fn(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
    }
}

} // namespace parallel
} // namespace kpuf
