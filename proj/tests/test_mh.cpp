#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kpuf/stats/diagnostics.hpp"
#include "kpuf/stats/mh.hpp"
#include "kpuf/stats/special.hpp"

using namespace kpuf::stats;

namespace {

// Reduced model: one cell, y successes in n trials, Jeffreys Beta(1/2,1/2)
// prior, sampled on the logit scale with the same random-walk machinery the
// GLMM uses. The exact posterior is Beta(y + 1/2, n - y + 1/2).
struct ReducedModelDraws {
    std::vector<std::vector<double>> chains; // probability scale
};

ReducedModelDraws sample_reduced(int y, int n, int n_chains, int warmup, int keep,
                                 std::uint64_t seed) {
    ReducedModelDraws out;
    for (int ch = 0; ch < n_chains; ++ch) {
        std::mt19937_64 engine(seed + static_cast<std::uint64_t>(ch) * 1000003);
        const auto log_target = [&](double theta) {
            return -(y + 0.5) * softplus(-theta) - (n - y + 0.5) * softplus(theta);
        };
        AdaptiveStep step(0.5, 0.40);
        double theta = 0.0;
        double cached = log_target(theta);
        std::vector<double> draws;
        draws.reserve(static_cast<std::size_t>(keep));
        for (int it = 0; it < warmup + keep; ++it) {
            rw_update(&theta, &cached, log_target, step, engine, it < warmup);
            if (it >= warmup)
                draws.push_back(inv_logit(theta));
        }
        out.chains.push_back(std::move(draws));
    }
    return out;
}

} // namespace

TEST_SUITE("mh") {

TEST_CASE("reduced-model posterior matches the exact Beta posterior") {
    const int y = 7, n = 50;
    const double a = y + 0.5, b = n - y + 0.5;
    const double exact_mean = a / (a + b);
    const double exact_var = a * b / ((a + b) * (a + b) * (a + b + 1.0));

    const auto res = sample_reduced(y, n, 4, 2000, 4000, 99);

    std::vector<double> pooled;
    for (const auto& c : res.chains)
        pooled.insert(pooled.end(), c.begin(), c.end());
    double mean = 0.0;
    for (double v : pooled)
        mean += v;
    mean /= static_cast<double>(pooled.size());
    double var = 0.0;
    for (double v : pooled) {
        const double d = v - mean;
        var += d * d;
    }
    var /= static_cast<double>(pooled.size() - 1);

    const double ess = effective_sample_size(res.chains);
    REQUIRE(ess > 200.0);

    // 3 Monte-Carlo standard errors for the mean and the variance
    const double mcse_mean = std::sqrt(exact_var / ess);
    CHECK(std::fabs(mean - exact_mean) < 3.0 * mcse_mean);
    const double mcse_var = exact_var * std::sqrt(2.0 / ess);
    CHECK(std::fabs(var - exact_var) < 3.0 * mcse_var);
}

TEST_CASE("adaptation lands in the target acceptance band") {
    const int y = 3, n = 200;
    std::mt19937_64 engine(1234);
    const auto log_target = [&](double theta) {
        return -(y + 0.5) * softplus(-theta) - (n - y + 0.5) * softplus(theta);
    };
    AdaptiveStep step(5.0, 0.40); // deliberately far too large initially
    double theta = 0.0;
    double cached = log_target(theta);
    for (int it = 0; it < 2000; ++it)
        rw_update(&theta, &cached, log_target, step, engine, true);

    double acc = 0.0;
    const int m = 4000;
    for (int it = 0; it < m; ++it)
        acc += rw_update(&theta, &cached, log_target, step, engine, false);
    acc /= m;
    CHECK(acc > 0.2);
    CHECK(acc < 0.6);
}

TEST_CASE("frozen step after warmup leaves the chain reproducible") {
    std::mt19937_64 e1(5), e2(5);
    AdaptiveStep s1(0.3, 0.4), s2(0.3, 0.4);
    const auto target = [](double x) { return -0.5 * x * x; };
    double x1 = 0.0, c1 = target(x1);
    double x2 = 0.0, c2 = target(x2);
    for (int i = 0; i < 500; ++i) {
        rw_update(&x1, &c1, target, s1, e1, false);
        rw_update(&x2, &c2, target, s2, e2, false);
    }
    CHECK(x1 == x2);
}

} // TEST_SUITE
