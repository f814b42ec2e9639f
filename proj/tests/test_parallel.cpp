#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "kpuf/parallel.hpp"

using namespace kpuf;

TEST_SUITE("parallel") {

TEST_CASE("chunked_sum: OpenMP result is bitwise equal to the serial reference") {
    const std::size_t n = 1 << 20;
    std::vector<double> data(n);
    for (std::size_t i = 0; i < n; ++i)
        data[i] = std::sin(static_cast<double>(i)) * 1e-3 + 1.0 / (static_cast<double>(i) + 1.0);

    const auto f = [&](std::size_t i) { return data[i] * data[i] - 0.5 * data[i]; };
    const double serial = parallel::chunked_sum(n, ExecPolicy::Serial, f);
    const double omp = parallel::chunked_sum(n, ExecPolicy::OpenMP, f);
    CHECK(serial == omp); // identical chunk grid, identical combine order
}

TEST_CASE("chunked_sum handles short and empty ranges") {
    const auto one = [](std::size_t) { return 1.0; };
    CHECK(parallel::chunked_sum(0, ExecPolicy::OpenMP, one) == 0.0);
    CHECK(parallel::chunked_sum(5, ExecPolicy::OpenMP, one) == 5.0);
    CHECK(parallel::chunked_sum(parallel::chunk_size + 1, ExecPolicy::Serial, one) ==
          static_cast<double>(parallel::chunk_size + 1));
}

TEST_CASE("parallel_for covers every index exactly once") {
    const std::size_t n = 10007;
    std::vector<int> hits(n, 0);
    parallel::parallel_for(n, ExecPolicy::OpenMP, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits)
        CHECK(h == 1);
}

TEST_CASE("KPUF_THREADS caps the worker count") {
    const int unrestricted = effective_threads();
    CHECK(unrestricted >= 1);
    setenv("KPUF_THREADS", "1", 1);
    CHECK(effective_threads() == 1);
    setenv("KPUF_THREADS", "not-a-number", 1);
    CHECK(effective_threads() == unrestricted);
    setenv("KPUF_THREADS", "1000000", 1);
    CHECK(effective_threads() == unrestricted);
    unsetenv("KPUF_THREADS");
    CHECK(effective_threads() == unrestricted);
}

} // TEST_SUITE
