#pragma once

#include <cstdint>

namespace kpuf::stats {

/// log-odds transform and its inverse; exact inverses to 1e-12 over [-20,20].
double logit(double p);
double inv_logit(double x);

/// log(1 + e^x) without overflow.
double softplus(double x);

/// Exact Binomial(n, p) pmf at k via log-gamma arithmetic; relative error
/// below 1e-12. Throws DomainError outside 0<=k<=n, 0<=p<=1.
double binomial_pmf(std::int64_t n, double p, std::int64_t k);
/// log pmf; -inf where the pmf is zero.
double binomial_log_pmf(std::int64_t n, double p, std::int64_t k);
/// log C(n, k).
double log_choose(std::int64_t n, std::int64_t k);

/// Regularized upper incomplete gamma Q(a, x) (series/continued fraction).
double gamma_q(double a, double x);

/// Upper-tail probability of a chi-square variate with dof degrees of
/// freedom: Q(dof/2, x/2).
double chi_square_sf(double x, double dof);

} // namespace kpuf::stats
