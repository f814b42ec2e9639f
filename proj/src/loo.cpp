#include "kpuf/stats/loo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <span>

#include "kpuf/errors.hpp"
#include "kpuf/stats/special.hpp"

namespace kpuf::stats {

namespace {

double log_sum_exp(std::span<const double> v) {
    double max = -std::numeric_limits<double>::infinity();
    for (double x : v)
        max = std::max(max, x);
    if (!std::isfinite(max))
        return max;
    double acc = 0.0;
    for (double x : v)
        acc += std::exp(x - max);
    return max + std::log(acc);
}

} // namespace

GpdFit gpd_fit(std::vector<double> x) {
    if (x.size() < 5)
        throw DomainError("gpd_fit needs at least 5 exceedances");
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    if (x.front() <= 0.0)
        throw DomainError("gpd_fit exceedances must be positive");

    const std::size_t m = 30 + static_cast<std::size_t>(std::floor(std::sqrt(n)));
    const double quart = x[static_cast<std::size_t>(std::floor(n / 4.0 + 0.5)) - 1];
    const double x_max = x.back();

    // profile log likelihood per observation at candidate b:
    //   zs_k(b) = -mean(log1p(-b x)); l(b) = log(b / zs_k) + zs_k - 1
    std::vector<double> b_grid(m), l_prof(m);
    for (std::size_t j = 0; j < m; ++j) {
        b_grid[j] = 1.0 / x_max +
                    (1.0 - std::sqrt(static_cast<double>(m) / (static_cast<double>(j) + 0.5))) /
                        (3.0 * quart);
        double zs_k = 0.0;
        for (double xi : x)
            zs_k += std::log1p(-b_grid[j] * xi);
        zs_k = -zs_k / static_cast<double>(n);
        l_prof[j] = static_cast<double>(n) * (std::log(b_grid[j] / zs_k) + zs_k - 1.0);
    }

    // posterior-mean b over the grid
    const double l_max = *std::max_element(l_prof.begin(), l_prof.end());
    double w_sum = 0.0, b_hat = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double w = std::exp(l_prof[j] - l_max);
        w_sum += w;
        b_hat += w * b_grid[j];
    }
    b_hat /= w_sum;

    double k = 0.0;
    for (double xi : x)
        k += std::log1p(-b_hat * xi);
    k /= static_cast<double>(n);

    GpdFit fit;
    fit.sigma = -k / b_hat;
    // weak prior pulling k toward 0.5 (regularizes small tails)
    fit.k = k * static_cast<double>(n) / (static_cast<double>(n) + 10.0) + 5.0 / (static_cast<double>(n) + 10.0);
    return fit;
}

double gpd_quantile(double p, double k, double sigma) {
    if (!(p >= 0.0) || !(p < 1.0))
        throw DomainError("gpd_quantile requires p in [0,1)");
    if (std::fabs(k) < 1e-12)
        return -sigma * std::log1p(-p);
    return sigma * std::expm1(-k * std::log1p(-p)) / k;
}

PsisResult psis_smooth(std::vector<double> log_ratios) {
    PsisResult res;
    const std::size_t s = log_ratios.size();
    if (s == 0)
        throw DomainError("psis_smooth on empty ratios");

    double max_lr = *std::max_element(log_ratios.begin(), log_ratios.end());
    for (double& lw : log_ratios)
        lw -= max_lr;

    const std::size_t tail_len = static_cast<std::size_t>(
        std::ceil(std::min(0.2 * static_cast<double>(s), 3.0 * std::sqrt(static_cast<double>(s)))));

    if (tail_len >= 5 && s > tail_len) {
        std::vector<std::size_t> order(s);
        std::iota(order.begin(), order.end(), 0);
        std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s - tail_len),
                         order.end(),
                         [&](std::size_t a, std::size_t b) { return log_ratios[a] < log_ratios[b]; });
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(s - tail_len), order.end(),
                  [&](std::size_t a, std::size_t b) { return log_ratios[a] < log_ratios[b]; });

        // the largest non-tail value is the smoothing threshold
        double thresh = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + tail_len < s; ++i)
            thresh = std::max(thresh, log_ratios[order[i]]);

        const double exp_thresh = std::exp(thresh);
        std::vector<double> exceed(tail_len);
        bool all_positive = true;
        for (std::size_t j = 0; j < tail_len; ++j) {
            exceed[j] = std::exp(log_ratios[order[s - tail_len + j]]) - exp_thresh;
            if (exceed[j] <= 0.0)
                all_positive = false;
        }

        if (all_positive) {
            const GpdFit fit = gpd_fit(exceed);
            res.pareto_k = fit.k;
            for (std::size_t j = 0; j < tail_len; ++j) {
                const double p = (static_cast<double>(j) + 0.5) / static_cast<double>(tail_len);
                const double q = gpd_quantile(p, fit.k, fit.sigma) + exp_thresh;
                log_ratios[order[s - tail_len + j]] = std::min(std::log(q), 0.0);
            }
        } else {
            // ties at the threshold; leave the tail unsmoothed
            res.pareto_k = 0.0;
        }
    }

    res.log_weights = std::move(log_ratios);
    return res;
}

namespace {

ElpdResult pointwise_elpd(const PosteriorFit& fit, ExecPolicy policy, bool want_loo) {
    const int n_obs = fit.n_obs;
    const int n_draws = fit.n_draws;
    if (n_obs <= 0 || n_draws <= 0)
        throw DomainError("fit holds no draws or no observations");

    ElpdResult res;
    res.model = variant_name(fit.spec.variant);
    res.pointwise.resize(static_cast<std::size_t>(n_obs));
    if (want_loo)
        res.pareto_k.resize(static_cast<std::size_t>(n_obs));

    // cell-major transposes keep the per-observation column loops contiguous
    std::vector<double> eta_cell_t, eta_run_t;
    if (fit.has_cell_effect()) {
        eta_cell_t.resize(fit.eta_cell.size());
        for (int d = 0; d < n_draws; ++d)
            for (int c = 0; c < fit.n_cells; ++c)
                eta_cell_t[static_cast<std::size_t>(c) * n_draws + d] =
                    fit.eta_cell[static_cast<std::size_t>(d) * fit.n_cells + c];
    }
    if (fit.has_run_effect()) {
        eta_run_t.resize(fit.eta_run.size());
        for (int d = 0; d < n_draws; ++d)
            for (int r = 0; r < fit.n_runs; ++r)
                eta_run_t[static_cast<std::size_t>(r) * n_draws + d] =
                    fit.eta_run[static_cast<std::size_t>(d) * fit.n_runs + r];
    }

    parallel::parallel_for(static_cast<std::size_t>(n_obs), policy, [&](std::size_t i) {
        const int cell = static_cast<int>(i) % fit.n_cells;
        const int run = static_cast<int>(i) / fit.n_cells;
        const double yi = fit.y[i];
        const double n = fit.spec.trials;
        const double lc = fit.log_choose_term[i];

        std::vector<double> ll(static_cast<std::size_t>(n_draws));
        const double* ec = fit.has_cell_effect()
                               ? &eta_cell_t[static_cast<std::size_t>(cell) * n_draws]
                               : nullptr;
        const double* er = fit.has_run_effect()
                               ? &eta_run_t[static_cast<std::size_t>(run) * n_draws]
                               : nullptr;
        for (int d = 0; d < n_draws; ++d) {
            double x = fit.abar[static_cast<std::size_t>(d)];
            if (ec)
                x += ec[d];
            if (er)
                x += er[d];
            ll[static_cast<std::size_t>(d)] = lc + yi * x - n * softplus(x);
        }

        if (want_loo) {
            std::vector<double> lr(static_cast<std::size_t>(n_draws));
            for (int d = 0; d < n_draws; ++d)
                lr[static_cast<std::size_t>(d)] = -ll[static_cast<std::size_t>(d)];
            PsisResult ps = psis_smooth(std::move(lr));
            res.pareto_k[i] = ps.pareto_k;
            // elpd_i = log( sum w * lik ) - log( sum w )
            std::vector<double> num(static_cast<std::size_t>(n_draws));
            for (int d = 0; d < n_draws; ++d)
                num[static_cast<std::size_t>(d)] =
                    ps.log_weights[static_cast<std::size_t>(d)] + ll[static_cast<std::size_t>(d)];
            res.pointwise[i] = log_sum_exp(num) - log_sum_exp(ps.log_weights);
        } else {
            // WAIC: lpd - p_waic
            const double lpd =
                log_sum_exp(ll) - std::log(static_cast<double>(n_draws));
            double mean = 0.0;
            for (double v : ll)
                mean += v;
            mean /= static_cast<double>(n_draws);
            double var = 0.0;
            for (double v : ll) {
                const double d = v - mean;
                var += d * d;
            }
            var /= static_cast<double>(n_draws - 1);
            res.pointwise[i] = lpd - var;
        }
    });

    double total = 0.0;
    for (double v : res.pointwise)
        total += v;
    res.elpd = total;

    double mean = total / static_cast<double>(n_obs);
    double var = 0.0;
    for (double v : res.pointwise) {
        const double d = v - mean;
        var += d * d;
    }
    var /= static_cast<double>(n_obs - 1);
    res.se = std::sqrt(var * static_cast<double>(n_obs));

    if (want_loo) {
        for (double k : res.pareto_k)
            if (k > 0.7)
                ++res.n_high_k;
    }
    return res;
}

} // namespace

ElpdResult elpd_waic(const PosteriorFit& fit, ExecPolicy policy) {
    ElpdResult res = pointwise_elpd(fit, policy, /*want_loo=*/false);
    res.method = "waic";
    return res;
}

ElpdResult elpd_loo(const PosteriorFit& fit, ExecPolicy policy) {
    ElpdResult res = pointwise_elpd(fit, policy, /*want_loo=*/true);
    if (res.n_high_k > 0) {
        // documented fallback: tail diagnostics failed for some observations
        const int high = res.n_high_k;
        res = pointwise_elpd(fit, policy, /*want_loo=*/false);
        res.method = "waic";
        res.n_high_k = high;
    }
    return res;
}

ComparisonTable compare_models(const std::vector<const PosteriorFit*>& fits,
                               ExecPolicy policy) {
    if (fits.empty())
        throw DomainError("compare_models needs at least one fit");
    for (const auto* f : fits) {
        if (f->n_obs != fits[0]->n_obs || f->spec.trials != fits[0]->spec.trials ||
            f->y != fits[0]->y)
            throw DomainError("fits were not computed on the identical observation set");
    }

    std::vector<ElpdResult> results;
    results.reserve(fits.size());
    for (const auto* f : fits)
        results.push_back(elpd_loo(*f, policy));

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].elpd > results[best].elpd)
            best = i;

    ComparisonTable table;
    const auto& bp = results[best].pointwise;
    for (const auto& r : results) {
        ComparisonRow row;
        row.model = r.model;
        row.method = r.method;
        row.elpd = r.elpd;
        row.looic = -2.0 * r.elpd;
        row.looic_se = 2.0 * r.se;
        row.elpd_diff = r.elpd - results[best].elpd;
        if (&r == &results[best]) {
            row.se_diff = 0.0;
        } else {
            const std::size_t n = r.pointwise.size();
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                mean += r.pointwise[i] - bp[i];
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = (r.pointwise[i] - bp[i]) - mean;
                var += d * d;
            }
            var /= static_cast<double>(n - 1);
            row.se_diff = std::sqrt(var * static_cast<double>(n));
        }
        table.rows.push_back(row);
    }
    std::sort(table.rows.begin(), table.rows.end(),
              [](const ComparisonRow& a, const ComparisonRow& b) { return a.elpd > b.elpd; });
    return table;
}

void export_comparison(const ComparisonTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "model,looic,looic_se,elpd_diff,se_diff\n";
    char buf[256];
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f,%.6f\n", r.model.c_str(), r.looic,
                      r.looic_se, r.elpd_diff, r.se_diff);
        out << buf;
    }
    if (!out)
        throw IoError("write failed for " + path);
}

} // namespace kpuf::stats
