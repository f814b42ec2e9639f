#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kpuf/experiment.hpp"
#include "kpuf/parallel.hpp"

namespace kpuf::stats {

/// The three model variants compared in the analysis: cell and run random
/// effects, cell effect only, or the global intercept alone.
enum class ModelVariant { BothEffects, CellOnly, InterceptOnly };

std::string variant_name(ModelVariant v);

struct ModelSpec {
    ModelVariant variant = ModelVariant::BothEffects;
    int trials = 480;                   // binomial n per (cell, run)
    double intercept_prior_sd = 5.0;    // abar ~ Normal(0, sd^2) on logit scale
    double effect_scale_prior_sd = 1.0; // sigma_c, sigma_r ~ half-Normal(0, sd^2)
};

struct McmcSettings {
    int chains = 4;
    int warmup = 1000;
    int keep = 1000;
    double target_accept = 0.40;
    ExecPolicy policy = ExecPolicy::OpenMP;
    double rhat_limit = 1.01;
    double min_ess = 400.0;
};

struct ParamDiagnostic {
    std::string name;
    double rhat = 1.0;
    double ess = 0.0;
};

/// Posterior draws for one fitted model. The pointwise log-likelihood
/// matrix (draws x observations) is exposed through log_lik() /
/// log_lik_column() and computed from the stored draws on demand.
class PosteriorFit {
public:
    ModelSpec spec;
    int n_runs = 0;
    int n_cells = puf_cells;
    int n_obs = 0;    // n_runs * 1024, run-major grid
    int n_draws = 0;  // kept draws pooled across chains, chain-major
    int n_chains = 0;

    std::vector<int> y;                  // [n_obs]
    std::vector<double> log_choose_term; // [n_obs], log C(n, y_i)

    std::vector<double> abar;       // [n_draws]
    std::vector<double> sigma_cell; // [n_draws] or empty
    std::vector<double> sigma_run;  // [n_draws] or empty
    std::vector<double> eta_cell;   // [n_draws * 1024] draw-major, or empty
    std::vector<double> eta_run;    // [n_draws * n_runs] draw-major, or empty

    std::vector<ParamDiagnostic> diagnostics; // abar, scales, worst effects
    std::vector<double> accept_rates;         // one entry per update family

    bool has_cell_effect() const { return !eta_cell.empty(); }
    bool has_run_effect() const { return !eta_run.empty(); }

    double linear_predictor(int draw, int obs) const;
    double log_lik(int draw, int obs) const;
    /// Fill out[0..n_draws) with the log-likelihood column of one observation.
    void log_lik_column(int obs, std::span<double> out) const;
};

/// Fit the binomial logit GLMM by adaptive random-walk Metropolis-within-
/// Gibbs with non-centered random effects. Throws DegenerateDataError on an
/// all-zero table and DiagnosticError (naming the offending parameters) when
/// split R-hat or effective sample size miss their thresholds.
PosteriorFit fit_glmm(const VisitTable& table, const ModelSpec& spec,
                      const McmcSettings& mcmc, std::uint64_t seed);

/// Posterior summary row for the CSV export.
struct ParamSummary {
    std::string name;
    double median = 0.0;
    double lo95 = 0.0, hi95 = 0.0;
    double lo80 = 0.0, hi80 = 0.0;
    double rhat = 0.0;
    double ess = 0.0;
};

std::vector<ParamSummary> summarize_fit(const PosteriorFit& fit);
void export_summary(const std::vector<ParamSummary>& rows, const std::string& path);

/// Type-7 linear-interpolation quantile of a copy of `values`.
double quantile(std::vector<double> values, double q);

namespace detail {

/// Raw sampler entry point, exposed so tests can run reduced data sets
/// (including zero observations, where the posterior must reproduce the
/// priors). Observations are y[run * 1024 + cell] when n_obs > 0.
PosteriorFit run_sampler(std::vector<int> y, int n_runs, const ModelSpec& spec,
                         const McmcSettings& mcmc, std::uint64_t seed,
                         bool enforce_diagnostics);

} // namespace detail

} // namespace kpuf::stats
