#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "zmlab/steinhaus.hpp"

using namespace zmlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const PrimeTable& table1e4() {
    static PrimeTable t = sieve(10000);
    return t;
}
}  // namespace

TEST_CASE("sample_rmf: determinism and complete multiplicativity") {
    auto& t = table1e4();
    RmfSample a = sample_rmf(t, 1000, 42);
    RmfSample b = sample_rmf(t, 1000, 42);
    CHECK(a.theta == b.theta);
    RmfSample c = sample_rmf(t, 1000, 43);
    CHECK(a.theta != c.theta);

    auto f = rmf_values(a, 1000);
    CHECK(std::abs(f[4] - f[2] * f[2]) < 1e-15);
    CHECK(std::abs(f[12] - f[2] * f[2] * f[3]) < 1e-14);
    for (int n = 1; n <= 1000; ++n) CHECK_THAT(std::abs(f[std::size_t(n)]), WithinAbs(1.0, 1e-12));
}

TEST_CASE("sample_rmf: mean of f(2) is near zero over many samples") {
    KahanCplx acc;
    const int N = 10000;
    for (int s = 0; s < N; ++s) acc.add(unit_phase(counter_phase(9001, std::uint64_t(s), 2)));
    // 3 standard errors of a unit-circle mean: components have variance 1/2
    CHECK(std::abs(acc.value()) / N <= 3.0 / std::sqrt(double(N)) * (1.0 / std::sqrt(2.0)) * 2.0);
}

TEST_CASE("sample_rmf: parameter validation") {
    auto& t = table1e4();
    CHECK_THROWS_AS(sample_rmf(t, 1, 42), std::invalid_argument);
    CHECK_THROWS_AS(sample_rmf(t, 10001, 42), std::invalid_argument);
    CHECK_THROWS_AS(mc_moment(t, 10, 2.0, 1, 42), std::invalid_argument);
    CHECK_THROWS_AS(mc_moment(t, 10001, 2.0, 100, 42), std::invalid_argument);
}

TEST_CASE("rmf_partial_sum: basics") {
    auto& t = table1e4();
    RmfSample s = sample_rmf(t, 5000, 5);
    CHECK(rmf_partial_sum(s, 1) == cplx{1.0, 0.0});
    for (std::uint32_t x : {10u, 100u, 3000u}) CHECK(std::abs(rmf_partial_sum(s, x)) <= double(x));
    CHECK_THROWS_AS(rmf_partial_sum(s, 5001), std::invalid_argument);
    // keyed fast path agrees with the sample-based path
    detail::RmfScratch ws;
    cplx fast = detail::rmf_partial_sum_keyed(t, 3000, 5, 0, ws);
    CHECK(std::abs(fast - rmf_partial_sum(s, 3000)) < 1e-12);
}

TEST_CASE("multiplicative_energy: frozen examples and brute-force oracle") {
    CHECK(multiplicative_energy(2, 2).count == BigCount(6));
    CHECK(multiplicative_energy(3, 2).count == BigCount(15));
    CHECK(multiplicative_energy(4, 2).count == BigCount(32));

    for (std::uint32_t x = 1; x <= 6; ++x)
        for (std::uint32_t k = 1; k <= 2; ++k) {
            CAPTURE(x, k);
            REQUIRE(multiplicative_energy(x, k).count == BigCount(oracles::brute_energy(x, k)));
        }
    CHECK(multiplicative_energy(3, 3).count == BigCount(oracles::brute_energy(3, 3)));
    CHECK(multiplicative_energy(4, 3).count == BigCount(oracles::brute_energy(4, 3)));
}

TEST_CASE("multiplicative_energy: k=1 diagonal, monotonicity, lower bound") {
    for (std::uint32_t x : {1u, 2u, 7u, 50u, 400u})
        CHECK(multiplicative_energy(x, 1).count == BigCount(x));
    BigCount prev = 0;
    for (std::uint32_t x = 2; x <= 20; ++x) {
        auto e = multiplicative_energy(x, 2);
        CHECK(e.count >= prev);
        CHECK(e.count >= BigCount(x) * BigCount(x));  // >= x^k
        prev = e.count;
    }
    CHECK(multiplicative_energy(10, 2).count <= multiplicative_energy(10, 3).count);
    CHECK_THROWS_AS(multiplicative_energy(100000, 3), resource_error);
}

TEST_CASE("mc_moment: converges to the exact energy") {
    auto& t = table1e4();
    auto check = [&](std::uint32_t x, double k, std::uint64_t seed) {
        MomentEstimate est = mc_moment(t, x, k, 20000, seed, 2);
        double exact = double(multiplicative_energy(x, std::uint32_t(k)).count);
        CAPTURE(x, k, est.value, exact, est.error_indicator);
        REQUIRE(std::fabs(est.value - exact) <= 3.0 * est.error_indicator);
    };
    check(2, 1.0, 101);
    check(2, 2.0, 102);
    check(30, 2.0, 103);
    check(5, 3.0, 104);
}

TEST_CASE("mc_moment: deterministic and worker-count independent") {
    auto& t = table1e4();
    MomentEstimate a = mc_moment(t, 50, 1.5, 5000, 7, 1);
    MomentEstimate b = mc_moment(t, 50, 1.5, 5000, 7, 4);
    CHECK(a.value == b.value);
    CHECK(a.error_indicator == b.error_indicator);
    // halving the sample count roughly doubles the variance of the mean
    MomentEstimate c = mc_moment(t, 50, 1.5, 2500, 7, 1);
    CHECK(c.error_indicator > a.error_indicator);
}

TEST_CASE("shift_exp_moment_quadrature: k=1 collapses to the shift count") {
    auto& t = table1e4();
    // ln 100 = 4.6..: shifts -2..2
    CHECK(shift_exp_moment_quadrature(t, 100.0, 1.0) == 5.0);
    // no primes below 2: empty product
    CHECK(shift_exp_moment_quadrature(t, 1.5, 3.0) == 1.0);
    CHECK_THROWS_AS(shift_exp_moment_quadrature(t, 100.0, 2.0, -1, 32), std::invalid_argument);
}

TEST_CASE("shift_exp_moment_quadrature: node doubling is converged") {
    auto& t = table1e4();
    double a = shift_exp_moment_quadrature(t, 100.0, 2.0, -1, 256);
    double b = shift_exp_moment_quadrature(t, 100.0, 2.0, -1, 512);
    CHECK_THAT(b, WithinRel(a, 1e-10));
}

TEST_CASE("shift_exp_moment_quadrature: agrees with Monte Carlo") {
    auto& t = table1e4();
    double quad = shift_exp_moment_quadrature(t, 30.0, 1.5);
    MomentEstimate mc = shift_exp_moment_monte_carlo(t, 30.0, 1.5, 20000, 77, -1, 2);
    CAPTURE(quad, mc.value, mc.error_indicator);
    CHECK(std::fabs(quad - mc.value) <= 3.0 * mc.error_indicator);
}

TEST_CASE("tail_error: fixed points") {
    CHECK(tail_error(0.0, 3.0, 4) == 0.0);
    for (double a : {0.1, 0.5, 1.3}) {
        CHECK_THAT(tail_error(a, 2.0, 0), WithinRel(std::exp(2.0 * a) - 1.0, 1e-14));
    }
    CHECK_THAT(tail_error(0.3, 3.0, 4), WithinAbs(oracles::tail_double_series(0.3, 3.0, 4), 1e-12));
}

TEST_CASE("tail_error: identity against the double series") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 60; ++i) {
        double reD = 4.0 * std::generate_canonical<double, 53>(rng) - 2.0;
        double k = 1.0 + 3.0 * std::generate_canonical<double, 53>(rng);
        long long J = (long long)(rng() % 13);
        double diff_form = tail_error(reD, k, J);
        double series = oracles::tail_double_series(reD, k, J);
        CAPTURE(reD, k, J);
        REQUIRE_THAT(diff_form, WithinAbs(series, 1e-12));
    }
}

TEST_CASE("tail_error: nonnegativity and the explicit tail bound") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        double reD = 4.0 * std::generate_canonical<double, 53>(rng) - 2.0;
        double k = 1.0 + 3.0 * std::generate_canonical<double, 53>(rng);
        long long J = (long long)(rng() % 13);
        double v = tail_error(std::fabs(reD), k, J);
        REQUIRE(v >= 0.0);
        double z = (k - 1.0) * std::fabs(reD);
        double bound = 4.0 * std::exp(2.0 * z) * std::pow(z, double(J + 1)) /
                       std::tgamma(double(J + 2));
        // allow the rounding floor of the difference form (a few extended-
        // precision ulps of e^{2|z|})
        double floor_ulp = 4096.0 * 1.1e-19 * std::exp(2.0 * z);
        REQUIRE(std::fabs(tail_error(reD, k, J)) <= bound + floor_ulp);
    }
}
