#pragma once

#include <string>
#include <vector>

#include "kpuf/parallel.hpp"
#include "kpuf/stats/glmm.hpp"

namespace kpuf::stats {

/// Generalized Pareto fit (shape k, scale sigma) to sample exceedances by
/// the Zhang-Stephens empirical-Bayes profile method, with the weak prior
/// that pulls k toward 0.5 used by the standard PSIS recipe.
struct GpdFit {
    double k = 0.0;
    double sigma = 1.0;
};

GpdFit gpd_fit(std::vector<double> exceedances);

/// GPD quantile function (location 0).
double gpd_quantile(double p, double k, double sigma);

/// Pareto-smoothed importance sampling on one vector of log ratios.
/// Returns the smoothed log weights (normalized to max 0) and the tail
/// shape diagnostic.
struct PsisResult {
    std::vector<double> log_weights;
    double pareto_k = 0.0;
};

PsisResult psis_smooth(std::vector<double> log_ratios);

/// Pointwise predictive quantities for one model on one data set.
struct ElpdResult {
    std::string model;
    std::string method = "psis_loo";     // "waic" after the documented fallback
    double elpd = 0.0;
    double se = 0.0;
    std::vector<double> pointwise;       // [n_obs]
    std::vector<double> pareto_k;        // [n_obs]; empty when method == waic
    int n_high_k = 0;                    // observations with k > 0.7
};

/// PSIS-LOO elpd of a fitted model; falls back to WAIC when any tail
/// diagnostic exceeds 0.7 (the fallback is recorded in `method`).
ElpdResult elpd_loo(const PosteriorFit& fit, ExecPolicy policy = ExecPolicy::OpenMP);

/// WAIC elpd (lpd minus the variance penalty), always available.
ElpdResult elpd_waic(const PosteriorFit& fit, ExecPolicy policy = ExecPolicy::OpenMP);

struct ComparisonRow {
    std::string model;
    std::string method;
    double looic = 0.0;     // -2 * elpd
    double looic_se = 0.0;  // 2 * se(elpd)
    double elpd = 0.0;
    double elpd_diff = 0.0; // vs the best model (best has 0)
    double se_diff = 0.0;   // paired SE of the difference
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows; // best model first
};

/// Compare models fitted to the identical observation set (DomainError
/// otherwise). Rows are ordered best elpd first.
ComparisonTable compare_models(const std::vector<const PosteriorFit*>& fits,
                               ExecPolicy policy = ExecPolicy::OpenMP);

void export_comparison(const ComparisonTable& table, const std::string& path);

} // namespace kpuf::stats
