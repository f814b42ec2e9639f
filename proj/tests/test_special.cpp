#include <doctest.h>

#include <cmath>

#include "kpuf/errors.hpp"
#include "kpuf/stats/special.hpp"

using namespace kpuf;
using namespace kpuf::stats;

TEST_SUITE("special") {

TEST_CASE("binomial pmf matches high-precision reference values") {
    // frozen from an independent 40-digit evaluation of C(480,k) p^k (1-p)^(480-k)
    const double p = 1.0 / 1024.0;
    const double expected[10] = {
        0.62564070210569065,    0.29355575465369649,    0.068725907370049179,
        0.01070413285203112,    0.0012477691521062669,  0.00011611693380304654,
        8.9859145579092713e-6,  5.9479451200237322e-7,  3.437656453777157e-8,
        1.7623263236481135e-9,
    };
    for (int k = 0; k < 10; ++k)
        CHECK(binomial_pmf(480, p, k) == doctest::Approx(expected[k]).epsilon(1e-12));
}

TEST_CASE("binomial pmf normalizes") {
    const double p = 1.0 / 1024.0;
    double sum = 0.0;
    for (int k = 0; k <= 480; ++k)
        sum += binomial_pmf(480, p, k);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("binomial pmf edge cases") {
    CHECK(binomial_pmf(10, 0.0, 0) == 1.0);
    CHECK(binomial_pmf(10, 0.0, 3) == 0.0);
    CHECK(binomial_pmf(10, 1.0, 10) == 1.0);
    CHECK(binomial_pmf(0, 0.5, 0) == 1.0);
    CHECK_THROWS_AS(binomial_pmf(10, 0.5, 11), DomainError);
    CHECK_THROWS_AS(binomial_pmf(10, 0.5, -1), DomainError);
    CHECK_THROWS_AS(binomial_pmf(10, 1.5, 5), DomainError);
}

TEST_CASE("log_choose sanity") {
    CHECK(std::exp(log_choose(5, 2)) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::exp(log_choose(480, 0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("logit and inverse logit are exact inverses over [-20, 20]") {
    for (double x = -20.0; x <= 20.0; x += 0.125) {
        const double p = inv_logit(x);
        CHECK(logit(p) == doctest::Approx(x).epsilon(1e-12));
    }
    for (double p = 0.001; p < 1.0; p += 0.001)
        CHECK(inv_logit(logit(p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("frozen logit anchor values") {
    CHECK(logit(1.0 / 1024.0) == doctest::Approx(-6.9304947659516265).epsilon(1e-12));
    CHECK(inv_logit(-6.9) == doctest::Approx(0.0010067708200856372).epsilon(1e-12));
    CHECK_THROWS_AS(logit(0.0), DomainError);
    CHECK_THROWS_AS(logit(1.0), DomainError);
}

TEST_CASE("softplus is accurate at both extremes") {
    CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(softplus(40.0) == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(softplus(-40.0) == doctest::Approx(std::exp(-40.0)).epsilon(1e-10));
}

TEST_CASE("chi-square survival matches reference values") {
    // frozen from an independent implementation of the regularized
    // incomplete gamma function
    CHECK(chi_square_sf(950.0, 1023) == doctest::Approx(9.4940549668169172e-01).epsilon(1e-9));
    CHECK(chi_square_sf(1023.0, 1023) == doctest::Approx(4.9412008986727302e-01).epsilon(1e-9));
    CHECK(chi_square_sf(1100.0, 1023) == doctest::Approx(4.6866328217488061e-02).epsilon(1e-9));
    CHECK(chi_square_sf(1200.0, 1023) == doctest::Approx(9.8706059561673749e-05).epsilon(1e-9));
    CHECK(chi_square_sf(1300.0, 1023) == doctest::Approx(7.6022681938298583e-09).epsilon(1e-7));
    CHECK(chi_square_sf(11.07, 5) == doctest::Approx(5.0009618622405425e-02).epsilon(1e-9));
    CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_sf(18.307038053275146, 10) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_square_sf(0.0, 2) == 1.0);
}

TEST_CASE("gamma_q domain checks") {
    CHECK_THROWS_AS(gamma_q(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(gamma_q(1.0, -1.0), DomainError);
    CHECK(gamma_q(3.0, 0.0) == 1.0);
}

} // TEST_SUITE
