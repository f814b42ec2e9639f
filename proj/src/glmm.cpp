#include "kpuf/stats/glmm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "kpuf/errors.hpp"
#include "kpuf/rng.hpp"
#include "kpuf/stats/diagnostics.hpp"
#include "kpuf/stats/mh.hpp"
#include "kpuf/stats/special.hpp"

namespace kpuf::stats {

std::string variant_name(ModelVariant v) {
    switch (v) {
    case ModelVariant::BothEffects:
        return "both";
    case ModelVariant::CellOnly:
        return "cell";
    case ModelVariant::InterceptOnly:
        return "none";
    }
    return "?";
}

double PosteriorFit::linear_predictor(int draw, int obs) const {
    const int cell = obs % n_cells;
    const int run = obs / n_cells;
    double x = abar[static_cast<std::size_t>(draw)];
    if (has_cell_effect())
        x += eta_cell[static_cast<std::size_t>(draw) * n_cells + static_cast<std::size_t>(cell)];
    if (has_run_effect())
        x += eta_run[static_cast<std::size_t>(draw) * n_runs + static_cast<std::size_t>(run)];
    return x;
}

double PosteriorFit::log_lik(int draw, int obs) const {
    const double x = linear_predictor(draw, obs);
    return log_choose_term[static_cast<std::size_t>(obs)] +
           y[static_cast<std::size_t>(obs)] * x - spec.trials * softplus(x);
}

void PosteriorFit::log_lik_column(int obs, std::span<double> out) const {
    const int cell = obs % n_cells;
    const int run = obs / n_cells;
    const double yi = y[static_cast<std::size_t>(obs)];
    const double lc = log_choose_term[static_cast<std::size_t>(obs)];
    const double n = spec.trials;
    for (int d = 0; d < n_draws; ++d) {
        double x = abar[static_cast<std::size_t>(d)];
        if (has_cell_effect())
            x += eta_cell[static_cast<std::size_t>(d) * n_cells + static_cast<std::size_t>(cell)];
        if (has_run_effect())
            x += eta_run[static_cast<std::size_t>(d) * n_runs + static_cast<std::size_t>(run)];
        out[static_cast<std::size_t>(d)] = lc + yi * x - n * softplus(x);
    }
}

namespace {

// Per-chain state of the non-centered parameterization. The likelihood is
// written in terms of x = abar + sigma_c z_c + sigma_r z_r; the z's carry
// standard-normal priors.
struct ChainState {
    double abar = 0.0;
    double log_sigma_cell = std::log(0.05);
    double log_sigma_run = std::log(0.05);
    std::vector<double> z_cell; // [1024] or empty
    std::vector<double> z_run;  // [n_runs] or empty
};

struct ChainDraws {
    std::vector<double> abar;
    std::vector<double> sigma_cell;
    std::vector<double> sigma_run;
    std::vector<double> eta_cell;
    std::vector<double> eta_run;
    double accept_abar = 0.0;
    double accept_scale = 0.0;
    double accept_z = 0.0;
};

class GlmmChain {
public:
    GlmmChain(std::span<const int> y, int n_runs, const ModelSpec& spec,
              const McmcSettings& mcmc, std::uint64_t chain_seed)
        : y_(y.begin(), y.end()), n_runs_(n_runs), spec_(spec), mcmc_(mcmc),
          engine_(chain_seed) {
        n_obs_ = static_cast<int>(y_.size());
        use_cell_ = spec.variant != ModelVariant::InterceptOnly;
        use_run_ = spec.variant == ModelVariant::BothEffects;

        // margin sums carry the linear terms of the effect updates
        if (n_obs_ > 0) {
            cell_sums_.assign(puf_cells, 0.0);
            run_sums_.assign(static_cast<std::size_t>(n_runs_), 0.0);
            for (int r = 0; r < n_runs_; ++r)
                for (int c = 0; c < puf_cells; ++c) {
                    const double v = y_[static_cast<std::size_t>(r) * puf_cells + c];
                    cell_sums_[static_cast<std::size_t>(c)] += v;
                    run_sums_[static_cast<std::size_t>(r)] += v;
                }
            y_total_ = std::accumulate(cell_sums_.begin(), cell_sums_.end(), 0.0);
        }

        init_state();

        step_abar_ = AdaptiveStep(0.05, mcmc.target_accept);
        step_ls_cell_ = AdaptiveStep(0.3, mcmc.target_accept);
        step_ls_run_ = AdaptiveStep(0.3, mcmc.target_accept);
        if (use_cell_)
            steps_z_cell_.assign(puf_cells, AdaptiveStep(0.5, mcmc.target_accept));
        if (use_run_)
            steps_z_run_.assign(static_cast<std::size_t>(n_runs_),
                                AdaptiveStep(0.5, mcmc.target_accept));

        cur_loglik_ = grid_loglik(state_.abar, sigma_cell(), sigma_run());
    }

    ChainDraws run() {
        ChainDraws draws;
        const int total = mcmc_.warmup + mcmc_.keep;
        draws.abar.reserve(static_cast<std::size_t>(mcmc_.keep));
        long n_abar = 0, n_scale = 0, n_z = 0;
        double acc_abar = 0.0, acc_scale = 0.0, acc_z = 0.0;

        for (int iter = 0; iter < total; ++iter) {
            const bool warm = iter < mcmc_.warmup;
            acc_abar += update_abar(warm);
            ++n_abar;
            if (use_cell_) {
                acc_scale += update_log_sigma(warm, /*cell=*/true);
                ++n_scale;
                acc_z += update_effects(warm, /*cell=*/true);
                ++n_z;
            }
            if (use_run_) {
                acc_scale += update_log_sigma(warm, /*cell=*/false);
                ++n_scale;
                acc_z += update_effects(warm, /*cell=*/false);
                ++n_z;
            }
            if (!warm)
                record(draws);
        }
        draws.accept_abar = n_abar ? acc_abar / static_cast<double>(n_abar) : 0.0;
        draws.accept_scale = n_scale ? acc_scale / static_cast<double>(n_scale) : 0.0;
        draws.accept_z = n_z ? acc_z / static_cast<double>(n_z) : 0.0;
        return draws;
    }

private:
    double sigma_cell() const { return use_cell_ ? std::exp(state_.log_sigma_cell) : 0.0; }
    double sigma_run() const { return use_run_ ? std::exp(state_.log_sigma_run) : 0.0; }

    void init_state() {
        std::normal_distribution<double> normal(0.0, 1.0);
        if (use_cell_) {
            state_.z_cell.resize(puf_cells);
            for (auto& z : state_.z_cell)
                z = 0.1 * normal(engine_);
        }
        if (use_run_) {
            state_.z_run.resize(static_cast<std::size_t>(n_runs_));
            for (auto& z : state_.z_run)
                z = 0.1 * normal(engine_);
        }
        if (n_obs_ > 0 && y_total_ > 0.0) {
            const double rate = y_total_ / (static_cast<double>(n_obs_) * spec_.trials);
            state_.abar = logit(std::clamp(rate, 1e-9, 1.0 - 1e-9)) + 0.1 * normal(engine_);
        } else {
            state_.abar = normal(engine_);
        }
        state_.log_sigma_cell = std::log(0.05) + 0.3 * normal(engine_);
        state_.log_sigma_run = std::log(0.05) + 0.3 * normal(engine_);
    }

    // Binomial log likelihood of the whole grid (log-choose constants
    // dropped; they cancel in every Metropolis ratio).
    double grid_loglik(double abar, double sc, double sr) const {
        if (n_obs_ == 0)
            return 0.0;
        const double n = spec_.trials;
        const double* zc = use_cell_ ? state_.z_cell.data() : nullptr;
        const double* zr = use_run_ ? state_.z_run.data() : nullptr;
        const int* y = y_.data();
        return parallel::chunked_sum(
            static_cast<std::size_t>(n_obs_), mcmc_.policy, [&](std::size_t i) {
                const std::size_t c = i % puf_cells;
                const std::size_t r = i / puf_cells;
                double x = abar;
                if (zc)
                    x += sc * zc[c];
                if (zr)
                    x += sr * zr[r];
                return y[i] * x - n * softplus(x);
            });
    }

    double update_abar(bool warm) {
        const double prior_sd = spec_.intercept_prior_sd;
        double cached = cur_loglik_ -
                        state_.abar * state_.abar / (2.0 * prior_sd * prior_sd);
        double value = state_.abar;
        double new_loglik = cur_loglik_;
        const double alpha = rw_update(
            &value, &cached,
            [&](double a) {
                const double ll = grid_loglik(a, sigma_cell(), sigma_run());
                new_loglik = ll;
                return ll - a * a / (2.0 * prior_sd * prior_sd);
            },
            step_abar_, engine_, warm);
        if (value != state_.abar) {
            state_.abar = value;
            cur_loglik_ = new_loglik;
        }
        return alpha;
    }

    double update_log_sigma(bool warm, bool cell) {
        double& ls = cell ? state_.log_sigma_cell : state_.log_sigma_run;
        AdaptiveStep& step = cell ? step_ls_cell_ : step_ls_run_;
        const double prior_sd = spec_.effect_scale_prior_sd;

        // half-Normal prior on sigma plus the log|d sigma / d log sigma|
        // Jacobian, so the walk happens on an unconstrained scale.
        const auto log_prior = [&](double s) {
            const double sigma = std::exp(s);
            return -sigma * sigma / (2.0 * prior_sd * prior_sd) + s;
        };

        double cached = cur_loglik_ + log_prior(ls);
        double value = ls;
        double new_loglik = cur_loglik_;
        const double alpha = rw_update(
            &value, &cached,
            [&](double s) {
                const double sc = cell ? std::exp(s) : sigma_cell();
                const double sr = cell ? sigma_run() : std::exp(s);
                const double ll = grid_loglik(state_.abar, sc, sr);
                new_loglik = ll;
                return ll + log_prior(s);
            },
            step, engine_, warm);
        if (value != ls) {
            ls = value;
            cur_loglik_ = new_loglik;
        }
        return alpha;
    }

    // One sweep over all z's of one effect family; returns mean acceptance.
    double update_effects(bool warm, bool cell) {
        std::vector<double>& z = cell ? state_.z_cell : state_.z_run;
        std::vector<AdaptiveStep>& steps = cell ? steps_z_cell_ : steps_z_run_;
        const double sigma = cell ? sigma_cell() : sigma_run();
        const int n_sites = static_cast<int>(z.size());
        const double n = spec_.trials;

        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        double acc = 0.0;
        for (int s = 0; s < n_sites; ++s) {
            const double z_old = z[static_cast<std::size_t>(s)];
            const double z_new = z_old + steps[static_cast<std::size_t>(s)].step() * normal(engine_);
            double delta = 0.5 * (z_old * z_old - z_new * z_new); // N(0,1) prior

            if (n_obs_ > 0) {
                const double d_eta = sigma * (z_new - z_old);
                // linear term uses the margin sum; softplus needs the loop
                double sp_delta = 0.0;
                if (cell) {
                    const double base = state_.abar + sigma * z_old;
                    const double* zr = use_run_ ? state_.z_run.data() : nullptr;
                    const double sr = sigma_run();
                    for (int r = 0; r < n_runs_; ++r) {
                        const double shared = zr ? sr * zr[r] : 0.0;
                        sp_delta += softplus(base + shared + d_eta) - softplus(base + shared);
                    }
                    delta += d_eta * cell_sums_[static_cast<std::size_t>(s)] - n * sp_delta;
                } else {
                    const double base = state_.abar + sigma * z_old;
                    const double* zc = use_cell_ ? state_.z_cell.data() : nullptr;
                    const double sc = sigma_cell();
                    for (int c = 0; c < puf_cells; ++c) {
                        const double shared = zc ? sc * zc[c] : 0.0;
                        sp_delta += softplus(base + shared + d_eta) - softplus(base + shared);
                    }
                    delta += d_eta * run_sums_[static_cast<std::size_t>(s)] - n * sp_delta;
                }
            }

            const double alpha = delta >= 0.0 ? 1.0 : std::exp(delta);
            if (unit(engine_) < alpha) {
                z[static_cast<std::size_t>(s)] = z_new;
                if (n_obs_ > 0)
                    cur_loglik_ += likelihood_part_of(delta, z_old, z_new);
            }
            if (warm)
                steps[static_cast<std::size_t>(s)].adapt(alpha);
            acc += alpha;
        }
        return n_sites > 0 ? acc / n_sites : 0.0;
    }

    static double likelihood_part_of(double delta, double z_old, double z_new) {
        return delta - 0.5 * (z_old * z_old - z_new * z_new);
    }

    void record(ChainDraws& draws) {
        draws.abar.push_back(state_.abar);
        if (use_cell_) {
            const double sc = sigma_cell();
            draws.sigma_cell.push_back(sc);
            for (double z : state_.z_cell)
                draws.eta_cell.push_back(sc * z);
        }
        if (use_run_) {
            const double sr = sigma_run();
            draws.sigma_run.push_back(sr);
            for (double z : state_.z_run)
                draws.eta_run.push_back(sr * z);
        }
    }

    std::vector<int> y_;          // run-major grid
    std::vector<double> cell_sums_;
    std::vector<double> run_sums_;
    double y_total_ = 0.0;
    int n_obs_ = 0;
    int n_runs_ = 0;
    bool use_cell_ = false;
    bool use_run_ = false;
    ModelSpec spec_;
    McmcSettings mcmc_;
    std::mt19937_64 engine_;
    ChainState state_;
    double cur_loglik_ = 0.0;

    AdaptiveStep step_abar_{0.05, 0.4};
    AdaptiveStep step_ls_cell_{0.3, 0.4};
    AdaptiveStep step_ls_run_{0.3, 0.4};
    std::vector<AdaptiveStep> steps_z_cell_;
    std::vector<AdaptiveStep> steps_z_run_;
};

} // namespace

namespace detail {

PosteriorFit run_sampler(std::vector<int> y, int n_runs, const ModelSpec& spec,
                         const McmcSettings& mcmc, std::uint64_t seed,
                         bool enforce_diagnostics) {
    if (mcmc.chains < 2)
        throw DomainError("at least 2 chains are required for split-chain diagnostics");
    if (mcmc.keep < 2 || mcmc.warmup < 0)
        throw DomainError("invalid MCMC iteration settings");

    const bool use_cell = spec.variant != ModelVariant::InterceptOnly;
    const bool use_run = spec.variant == ModelVariant::BothEffects;
    const int n_obs = static_cast<int>(y.size());

    std::vector<ChainDraws> chain_draws(static_cast<std::size_t>(mcmc.chains));
    parallel::parallel_for(static_cast<std::size_t>(mcmc.chains), mcmc.policy,
                           [&](std::size_t chain) {
                               // chains inside a fit never nest OpenMP regions
                               McmcSettings chain_mcmc = mcmc;
                               chain_mcmc.policy = ExecPolicy::Serial;
                               GlmmChain sampler(y, n_runs, spec, chain_mcmc,
                                                 derive_u64(seed, "kpuf.glmm.chain", chain));
                               chain_draws[chain] = sampler.run();
                           });

    PosteriorFit fit;
    fit.spec = spec;
    fit.n_runs = n_runs;
    fit.n_obs = n_obs;
    fit.n_chains = mcmc.chains;
    fit.n_draws = mcmc.chains * mcmc.keep;
    fit.y = std::move(y);
    fit.log_choose_term.resize(static_cast<std::size_t>(n_obs));
    for (int i = 0; i < n_obs; ++i)
        fit.log_choose_term[static_cast<std::size_t>(i)] =
            log_choose(spec.trials, fit.y[static_cast<std::size_t>(i)]);

    fit.abar.reserve(static_cast<std::size_t>(fit.n_draws));
    for (const auto& cd : chain_draws) {
        fit.abar.insert(fit.abar.end(), cd.abar.begin(), cd.abar.end());
        fit.sigma_cell.insert(fit.sigma_cell.end(), cd.sigma_cell.begin(), cd.sigma_cell.end());
        fit.sigma_run.insert(fit.sigma_run.end(), cd.sigma_run.begin(), cd.sigma_run.end());
        fit.eta_cell.insert(fit.eta_cell.end(), cd.eta_cell.begin(), cd.eta_cell.end());
        fit.eta_run.insert(fit.eta_run.end(), cd.eta_run.begin(), cd.eta_run.end());
    }
    double acc_a = 0.0, acc_s = 0.0, acc_z = 0.0;
    for (const auto& cd : chain_draws) {
        acc_a += cd.accept_abar;
        acc_s += cd.accept_scale;
        acc_z += cd.accept_z;
    }
    fit.accept_rates = {acc_a / mcmc.chains, acc_s / mcmc.chains, acc_z / mcmc.chains};

    // Convergence diagnostics on the natural-scale parameters. Every
    // retained parameter is checked for shrink factor; the three top-level
    // parameters also carry the effective-sample-size gate.
    const int per_chain = mcmc.keep;
    auto chain_view = [&](const std::vector<double>& pooled, int stride, int index) {
        std::vector<std::vector<double>> chains(static_cast<std::size_t>(mcmc.chains));
        for (int ch = 0; ch < mcmc.chains; ++ch) {
            auto& dst = chains[static_cast<std::size_t>(ch)];
            dst.resize(static_cast<std::size_t>(per_chain));
            for (int i = 0; i < per_chain; ++i)
                dst[static_cast<std::size_t>(i)] =
                    pooled[(static_cast<std::size_t>(ch) * per_chain + i) * stride +
                           static_cast<std::size_t>(index)];
        }
        return chains;
    };

    std::vector<std::string> offending;
    auto check = [&](const std::string& name, const std::vector<std::vector<double>>& chains,
                     bool ess_gate) {
        ParamDiagnostic d;
        d.name = name;
        d.rhat = split_rhat(chains);
        d.ess = effective_sample_size(chains);
        fit.diagnostics.push_back(d);
        if (enforce_diagnostics) {
            if (d.rhat >= mcmc.rhat_limit)
                offending.push_back(name + " (rhat=" + std::to_string(d.rhat) + ")");
            else if (ess_gate && d.ess <= mcmc.min_ess)
                offending.push_back(name + " (ess=" + std::to_string(d.ess) + ")");
        }
    };

    check("abar", chain_view(fit.abar, 1, 0), true);
    if (use_cell)
        check("sigma_cell", chain_view(fit.sigma_cell, 1, 0), true);
    if (use_run)
        check("sigma_run", chain_view(fit.sigma_run, 1, 0), true);

    // Effects: gate on the worst shrink factor across sites.
    if (use_cell) {
        double worst = 0.0;
        int worst_idx = 0;
        for (int c = 0; c < puf_cells; ++c) {
            const double r = split_rhat(chain_view(fit.eta_cell, puf_cells, c));
            if (r > worst) {
                worst = r;
                worst_idx = c;
            }
        }
        ParamDiagnostic d;
        d.name = "eta_cell[" + std::to_string(worst_idx) + "]";
        d.rhat = worst;
        d.ess = effective_sample_size(chain_view(fit.eta_cell, puf_cells, worst_idx));
        fit.diagnostics.push_back(d);
        if (enforce_diagnostics && worst >= mcmc.rhat_limit)
            offending.push_back(d.name + " (rhat=" + std::to_string(worst) + ")");
    }
    if (use_run) {
        double worst = 0.0;
        int worst_idx = 0;
        for (int r = 0; r < n_runs; ++r) {
            const double rh = split_rhat(chain_view(fit.eta_run, n_runs, r));
            if (rh > worst) {
                worst = rh;
                worst_idx = r;
            }
        }
        ParamDiagnostic d;
        d.name = "eta_run[" + std::to_string(worst_idx) + "]";
        d.rhat = worst;
        d.ess = effective_sample_size(chain_view(fit.eta_run, n_runs, worst_idx));
        fit.diagnostics.push_back(d);
        if (enforce_diagnostics && worst >= mcmc.rhat_limit)
            offending.push_back(d.name + " (rhat=" + std::to_string(worst) + ")");
    }

    if (!offending.empty()) {
        std::string msg = "convergence diagnostics failed:";
        for (const auto& p : offending)
            msg += " " + p;
        throw DiagnosticError(msg, offending);
    }
    return fit;
}

} // namespace detail

PosteriorFit fit_glmm(const VisitTable& table, const ModelSpec& spec,
                      const McmcSettings& mcmc, std::uint64_t seed) {
    if (table.records.empty() || table.n_runs < 1)
        throw DomainError("visit table is empty");
    if (table.records.size() != static_cast<std::size_t>(table.n_runs) * puf_cells)
        throw DomainError("visit table must hold n_runs * 1024 records");
    if (spec.trials != table.n_trials_per_run)
        throw DomainError("ModelSpec.trials (" + std::to_string(spec.trials) +
                          ") disagrees with the table (" +
                          std::to_string(table.n_trials_per_run) + ")");
    if (spec.trials < 1)
        throw DomainError("trials per run must be at least 1");

    std::vector<int> y(table.records.size());
    std::int64_t total = 0;
    for (const auto& rec : table.records) {
        if (rec.run < 1 || rec.run > table.n_runs || rec.cell < 0 || rec.cell >= puf_cells)
            throw DomainError("visit record (" + std::to_string(rec.run) + "," +
                              std::to_string(rec.cell) + ") outside the run x cell grid");
        const std::size_t idx = (static_cast<std::size_t>(rec.run) - 1) * puf_cells +
                                static_cast<std::size_t>(rec.cell);
        y[idx] = rec.visits;
        total += rec.visits;
    }
    if (total == 0)
        throw DegenerateDataError(
            "all visit counts are zero; the intercept likelihood is unbounded below");

    return detail::run_sampler(std::move(y), table.n_runs, spec, mcmc, seed,
                               /*enforce_diagnostics=*/true);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty())
        throw DomainError("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = lo + 1 < values.size() ? lo + 1 : lo;
    const double frac = h - std::floor(h);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

namespace {

ParamSummary summarize_one(const std::string& name, std::vector<double> draws,
                           const PosteriorFit& fit) {
    ParamSummary s;
    s.name = name;
    s.median = quantile(draws, 0.5);
    s.lo95 = quantile(draws, 0.025);
    s.hi95 = quantile(draws, 0.975);
    s.lo80 = quantile(draws, 0.10);
    s.hi80 = quantile(draws, 0.90);
    for (const auto& d : fit.diagnostics)
        if (d.name == name) {
            s.rhat = d.rhat;
            s.ess = d.ess;
        }
    return s;
}

std::vector<double> column(const std::vector<double>& pooled, int stride, int index,
                           int n_draws) {
    std::vector<double> out(static_cast<std::size_t>(n_draws));
    for (int d = 0; d < n_draws; ++d)
        out[static_cast<std::size_t>(d)] =
            pooled[static_cast<std::size_t>(d) * stride + static_cast<std::size_t>(index)];
    return out;
}

} // namespace

std::vector<ParamSummary> summarize_fit(const PosteriorFit& fit) {
    std::vector<ParamSummary> rows;
    rows.push_back(summarize_one("abar", fit.abar, fit));
    if (fit.has_cell_effect())
        rows.push_back(summarize_one("sigma_cell", fit.sigma_cell, fit));
    if (fit.has_run_effect())
        rows.push_back(summarize_one("sigma_run", fit.sigma_run, fit));
    if (fit.has_cell_effect())
        for (int c = 0; c < fit.n_cells; ++c)
            rows.push_back(summarize_one("eta_cell[" + std::to_string(c) + "]",
                                         column(fit.eta_cell, fit.n_cells, c, fit.n_draws),
                                         fit));
    if (fit.has_run_effect())
        for (int r = 0; r < fit.n_runs; ++r)
            rows.push_back(summarize_one("eta_run[" + std::to_string(r + 1) + "]",
                                         column(fit.eta_run, fit.n_runs, r, fit.n_draws),
                                         fit));
    return rows;
}

void export_summary(const std::vector<ParamSummary>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "param,median,lo95,hi95,lo80,hi80,rhat,ess\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g,%.9g,%.9g,%.9g,%.6g,%.6g\n",
                      r.name.c_str(), r.median, r.lo95, r.hi95, r.lo80, r.hi80, r.rhat,
                      r.ess);
        out << buf;
    }
    if (!out)
        throw IoError("write failed for " + path);
}

} // namespace kpuf::stats
