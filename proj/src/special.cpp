#include "kpuf/stats/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kpuf/errors.hpp"

namespace kpuf::stats {

double logit(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw DomainError("logit requires p in (0,1), got " + std::to_string(p));
    return std::log(p) - std::log1p(-p);
}

double inv_logit(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double softplus(double x) {
    if (x > 0.0)
        return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double log_choose(std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial_log_pmf(std::int64_t n, double p, std::int64_t k) {
    if (n < 0 || k < 0 || k > n)
        throw DomainError("binomial pmf requires 0 <= k <= n");
    if (!(p >= 0.0) || !(p <= 1.0))
        throw DomainError("binomial pmf requires p in [0,1], got " + std::to_string(p));
    if (p == 0.0)
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (p == 1.0)
        return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
    return log_choose(n, k) + static_cast<double>(k) * std::log(p) +
           static_cast<double>(n - k) * std::log1p(-p);
}

double binomial_pmf(std::int64_t n, double p, std::int64_t k) {
    return std::exp(binomial_log_pmf(n, p, k));
}

namespace {

// Lower regularized incomplete gamma by series (x < a+1).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by Lentz continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw DomainError("gamma_q requires a > 0 and x >= 0");
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_sf(double x, double dof) {
    if (!(dof > 0.0))
        throw DomainError("chi_square_sf requires dof > 0");
    if (x <= 0.0)
        return 1.0;
    return gamma_q(dof / 2.0, x / 2.0);
}

} // namespace kpuf::stats
