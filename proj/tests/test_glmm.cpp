#include <doctest.h>

#include <cmath>
#include <numeric>

#include "kpuf/errors.hpp"
#include "kpuf/rng.hpp"
#include "kpuf/stats/glmm.hpp"
#include "kpuf/stats/special.hpp"

using namespace kpuf;
using namespace kpuf::stats;

namespace {

VisitTable small_uniform_table(int n_runs, std::uint64_t seed) {
    const PufImage puf = generate_puf(70);
    std::vector<std::uint8_t> pt(240);
    for (std::size_t i = 0; i < pt.size(); ++i)
        pt[i] = static_cast<std::uint8_t>(i * 3);
    return run_visit_experiment(pt, n_runs, derive_block(1, "pw", 0), puf, seed);
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v)
        acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

} // namespace

TEST_SUITE("glmm") {

TEST_CASE("zero observations reproduce the priors") {
    ModelSpec spec;
    spec.variant = ModelVariant::BothEffects;
    spec.trials = 1;
    McmcSettings mcmc;
    mcmc.chains = 4;
    mcmc.warmup = 1500;
    mcmc.keep = 2500;
    const auto fit = detail::run_sampler({}, 0, spec, mcmc, 3, /*enforce_diagnostics=*/false);

    // abar ~ Normal(0, 5^2)
    CHECK(std::fabs(mean_of(fit.abar)) < 0.6);
    CHECK(sd_of(fit.abar) == doctest::Approx(5.0).epsilon(0.12));

    // sigma ~ half-Normal(0, 1): mean sqrt(2/pi), sd sqrt(1 - 2/pi)
    const double hn_mean = std::sqrt(2.0 / M_PI);
    const double hn_sd = std::sqrt(1.0 - 2.0 / M_PI);
    CHECK(mean_of(fit.sigma_cell) == doctest::Approx(hn_mean).epsilon(0.25));
    CHECK(sd_of(fit.sigma_cell) == doctest::Approx(hn_sd).epsilon(0.35));
    CHECK(mean_of(fit.sigma_run) == doctest::Approx(hn_mean).epsilon(0.25));
    for (double s : fit.sigma_cell)
        CHECK(s > 0.0);
}

TEST_CASE("an all-zero table is refused as degenerate") {
    VisitTable t;
    t.n_runs = 2;
    t.n_trials_per_run = 4;
    for (int r = 1; r <= 2; ++r)
        for (int c = 0; c < puf_cells; ++c)
            t.records.push_back({r, c, 0});
    ModelSpec spec;
    spec.trials = 4;
    CHECK_THROWS_AS(fit_glmm(t, spec, McmcSettings{}, 1), DegenerateDataError);
}

TEST_CASE("spec trials must agree with the table") {
    const auto table = small_uniform_table(3, 5);
    ModelSpec spec;
    spec.trials = table.n_trials_per_run + 1;
    CHECK_THROWS_AS(fit_glmm(table, spec, McmcSettings{}, 1), DomainError);
}

TEST_CASE("empty and malformed tables are domain errors") {
    ModelSpec spec;
    CHECK_THROWS_AS(fit_glmm(VisitTable{}, spec, McmcSettings{}, 1), DomainError);

    VisitTable bad;
    bad.n_runs = 1;
    bad.n_trials_per_run = 2;
    bad.records = {{1, 0, 2}};
    CHECK_THROWS_AS(fit_glmm(bad, spec, McmcSettings{}, 1), DomainError);
}

TEST_CASE("a short run fails the convergence gate loudly") {
    const auto table = small_uniform_table(3, 6);
    ModelSpec spec;
    spec.trials = table.n_trials_per_run;
    McmcSettings mcmc;
    mcmc.chains = 4;
    mcmc.warmup = 0; // no adaptation, overdispersed starts stay apart
    mcmc.keep = 20;
    CHECK_THROWS_AS(fit_glmm(table, spec, mcmc, 7), DiagnosticError);
    try {
        fit_glmm(table, spec, mcmc, 7);
    } catch (const DiagnosticError& e) {
        CHECK_FALSE(e.offending_params().empty());
    }
}

TEST_CASE("small uniform fit recovers the intercept") {
    const auto table = small_uniform_table(10, 8);
    ModelSpec spec;
    spec.variant = ModelVariant::BothEffects;
    spec.trials = table.n_trials_per_run;
    McmcSettings mcmc;
    mcmc.chains = 2;
    mcmc.warmup = 600;
    mcmc.keep = 600;
    const auto fit =
        detail::run_sampler([&] {
            std::vector<int> y(static_cast<std::size_t>(table.n_runs) * puf_cells);
            for (const auto& rec : table.records)
                y[(static_cast<std::size_t>(rec.run) - 1) * puf_cells +
                  static_cast<std::size_t>(rec.cell)] = rec.visits;
            return y;
        }(), table.n_runs, spec, mcmc, 9, /*enforce_diagnostics=*/false);

    const double med = quantile(fit.abar, 0.5);
    CHECK(std::fabs(med - logit(1.0 / 1024.0)) < 0.3);
    CHECK(fit.n_draws == 1200);
    REQUIRE(fit.has_cell_effect());
    REQUIRE(fit.has_run_effect());
    CHECK(fit.eta_cell.size() == static_cast<std::size_t>(fit.n_draws) * 1024);
    CHECK(fit.eta_run.size() == static_cast<std::size_t>(fit.n_draws) * 10);
}

TEST_CASE("variant selection controls which effects exist") {
    const auto table = small_uniform_table(3, 10);
    std::vector<int> y(static_cast<std::size_t>(table.n_runs) * puf_cells);
    for (const auto& rec : table.records)
        y[(static_cast<std::size_t>(rec.run) - 1) * puf_cells +
          static_cast<std::size_t>(rec.cell)] = rec.visits;

    ModelSpec spec;
    spec.trials = table.n_trials_per_run;
    McmcSettings mcmc;
    mcmc.chains = 2;
    mcmc.warmup = 100;
    mcmc.keep = 100;

    spec.variant = ModelVariant::InterceptOnly;
    auto fit = detail::run_sampler(y, table.n_runs, spec, mcmc, 11, false);
    CHECK_FALSE(fit.has_cell_effect());
    CHECK_FALSE(fit.has_run_effect());
    CHECK(fit.sigma_cell.empty());

    spec.variant = ModelVariant::CellOnly;
    fit = detail::run_sampler(y, table.n_runs, spec, mcmc, 11, false);
    CHECK(fit.has_cell_effect());
    CHECK_FALSE(fit.has_run_effect());
}

TEST_CASE("log_lik accessors expose the draws x observations matrix") {
    const auto table = small_uniform_table(2, 12);
    std::vector<int> y(static_cast<std::size_t>(table.n_runs) * puf_cells);
    for (const auto& rec : table.records)
        y[(static_cast<std::size_t>(rec.run) - 1) * puf_cells +
          static_cast<std::size_t>(rec.cell)] = rec.visits;
    ModelSpec spec;
    spec.trials = table.n_trials_per_run;
    McmcSettings mcmc;
    mcmc.chains = 2;
    mcmc.warmup = 50;
    mcmc.keep = 60;
    const auto fit = detail::run_sampler(y, table.n_runs, spec, mcmc, 13, false);

    CHECK(fit.n_obs == 2048);
    std::vector<double> col(static_cast<std::size_t>(fit.n_draws));
    fit.log_lik_column(100, col);
    for (int d = 0; d < fit.n_draws; ++d)
        CHECK(col[static_cast<std::size_t>(d)] == doctest::Approx(fit.log_lik(d, 100)));
    // a likelihood value is a log probability of observed data
    for (double v : col)
        CHECK(v <= 0.0);
}

TEST_CASE("summaries carry quantiles and diagnostics for every parameter") {
    const auto table = small_uniform_table(2, 14);
    std::vector<int> y(static_cast<std::size_t>(table.n_runs) * puf_cells);
    for (const auto& rec : table.records)
        y[(static_cast<std::size_t>(rec.run) - 1) * puf_cells +
          static_cast<std::size_t>(rec.cell)] = rec.visits;
    ModelSpec spec;
    spec.trials = table.n_trials_per_run;
    McmcSettings mcmc;
    mcmc.chains = 2;
    mcmc.warmup = 50;
    mcmc.keep = 60;
    const auto fit = detail::run_sampler(y, table.n_runs, spec, mcmc, 15, false);
    const auto rows = summarize_fit(fit);
    REQUIRE(rows.size() == 3 + 1024 + 2); // abar, scales, effects
    CHECK(rows[0].name == "abar");
    for (const auto& r : rows) {
        CHECK(r.lo95 <= r.median);
        CHECK(r.median <= r.hi95);
        CHECK(r.lo80 >= r.lo95);
        CHECK(r.hi80 <= r.hi95);
    }
}

} // TEST_SUITE
