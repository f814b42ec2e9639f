#include "kpuf/stats/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpuf/errors.hpp"

namespace kpuf::stats {

namespace {

std::vector<std::vector<double>> split_in_half(const std::vector<std::vector<double>>& chains) {
    std::vector<std::vector<double>> halves;
    for (const auto& c : chains) {
        const std::size_t half = c.size() / 2;
        if (half < 2)
            throw DomainError("chains too short to split for diagnostics");
        halves.emplace_back(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(half));
        halves.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(half),
                            c.begin() + static_cast<std::ptrdiff_t>(2 * half));
    }
    return halves;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) {
        const double d = x - mean;
        s += d * d;
    }
    return s / static_cast<double>(v.size() - 1);
}

struct Variances {
    double w = 0.0;        // mean within-sequence variance
    double var_plus = 0.0; // pooled posterior variance estimate
    std::size_t len = 0;   // per-sequence length
    std::vector<double> means;
};

Variances pooled_variances(const std::vector<std::vector<double>>& seqs) {
    Variances out;
    out.len = seqs.front().size();
    const double m = static_cast<double>(seqs.size());
    const double n = static_cast<double>(out.len);

    double w = 0.0;
    for (const auto& s : seqs) {
        const double mu = mean_of(s);
        out.means.push_back(mu);
        w += sample_var(s, mu);
    }
    w /= m;

    const double grand = mean_of(out.means);
    double b = 0.0;
    for (double mu : out.means) {
        const double d = mu - grand;
        b += d * d;
    }
    b *= n / (m - 1.0);

    out.w = w;
    out.var_plus = (n - 1.0) / n * w + b / n;
    return out;
}

} // namespace

double split_rhat(const std::vector<std::vector<double>>& chains) {
    if (chains.size() < 2)
        throw DomainError("split_rhat needs at least 2 chains");
    const auto halves = split_in_half(chains);
    const auto v = pooled_variances(halves);
    if (v.w <= 0.0)
        return 1.0; // constant draws
    return std::sqrt(v.var_plus / v.w);
}

double effective_sample_size(const std::vector<std::vector<double>>& chains) {
    if (chains.size() < 2)
        throw DomainError("effective_sample_size needs at least 2 chains");
    const auto halves = split_in_half(chains);
    const auto v = pooled_variances(halves);
    const std::size_t n = v.len;
    const std::size_t m = halves.size();
    const double total = static_cast<double>(n) * static_cast<double>(m);
    if (v.var_plus <= 0.0)
        return total;

    // combined autocorrelation at lag t from per-sequence autocovariances
    const std::size_t max_lag = std::min<std::size_t>(n - 1, 1000);
    std::vector<double> rho(max_lag + 1, 0.0);
    rho[0] = 1.0;
    std::vector<double> acov_t(m, 0.0);
    for (std::size_t t = 1; t <= max_lag; ++t) {
        double mean_acov = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const auto& s = halves[j];
            const double mu = v.means[j];
            double acc = 0.0;
            for (std::size_t i = t; i < n; ++i)
                acc += (s[i] - mu) * (s[i - t] - mu);
            acov_t[j] = acc / static_cast<double>(n);
            mean_acov += acov_t[j];
        }
        mean_acov /= static_cast<double>(m);
        rho[t] = 1.0 - (v.w - mean_acov) / v.var_plus;
    }

    // Geyer initial monotone positive sequence over paired sums
    double tau = rho[0];
    std::size_t t = 1;
    double prev_pair = std::numeric_limits<double>::infinity();
    while (t + 1 <= max_lag) {
        double pair = rho[t] + rho[t + 1];
        if (pair < 0.0)
            break;
        pair = std::min(pair, prev_pair);
        prev_pair = pair;
        tau += 2.0 * pair;
        t += 2;
    }

    const double ess = total / tau;
    return std::min(ess, total * 2.0); // antithetic chains can exceed the draw count
}

} // namespace kpuf::stats
