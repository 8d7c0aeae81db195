#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "robin/special.hpp"

using robin::special::bessel_i;
using robin::special::bessel_i_derivative;
using robin::special::bessel_k;
using robin::special::gamma_fn;

namespace {

// Independent oracle: 20 terms of I_0(x) = sum (x/2)^{2m} / (m!)^2 plus the
// geometric remainder bound. At x = 1 the first omitted term is ~1.5e-49, so
// the truncation is certified far below the 1e-10 assertion.
double i0_series_20(double x, double* remainder_bound) {
    double term = 1.0;
    double sum = 1.0;
    const double q = 0.25 * x * x;
    for (int m = 1; m < 20; ++m) {
        term *= q / (m * m);
        sum += term;
    }
    const double next = term * q / (20.0 * 20.0);
    *remainder_bound = next / (1.0 - q / (21.0 * 21.0));
    return sum;
}

}  // namespace

TEST_CASE("gamma function reference values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    // high-precision references across [0.5, 50]
    CHECK(gamma_fn(0.75) ==
          doctest::Approx(1.2254167024651776451).epsilon(1e-13));
    CHECK(gamma_fn(1.5) ==
          doctest::Approx(0.88622692545275801365).epsilon(1e-13));
    CHECK(gamma_fn(3.25) ==
          doctest::Approx(2.5492569667185292818).epsilon(1e-13));
    CHECK(gamma_fn(10.3) ==
          doctest::Approx(716430.68906237524455).epsilon(1e-13));
    CHECK(gamma_fn(20.5) ==
          doctest::Approx(5.4062429823350750447e17).epsilon(1e-13));
    CHECK(gamma_fn(35.1) ==
          doctest::Approx(4.2073719740052947072e38).epsilon(1e-13));
    CHECK(gamma_fn(49.5) ==
          doctest::Approx(8.6676018431352723453e61).epsilon(1e-13));
    // recurrence below 0.5
    CHECK(gamma_fn(0.25) ==
          doctest::Approx(gamma_fn(1.25) / 0.25).epsilon(1e-14));
}

TEST_CASE("gamma function domain errors") {
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.5), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(INFINITY), std::domain_error);
}

TEST_CASE("bessel_i at the origin") {
    CHECK(bessel_i(0.0, 0.0).value == 1.0);
    CHECK(bessel_i(0.5, 0.0).value == 0.0);
    CHECK(bessel_i(3.0, 0.0).value == 0.0);
}

TEST_CASE("bessel_i against the certified series oracle") {
    double bound = 0.0;
    const double oracle = i0_series_20(1.0, &bound);
    CHECK(bound < 1e-45);
    CHECK(bessel_i(0.0, 1.0).value ==
          doctest::Approx(oracle).epsilon(1e-10));
    // value frozen from the oracle
    CHECK(bessel_i(0.0, 1.0).value ==
          doctest::Approx(1.2660658777520083356).epsilon(1e-10));
}

TEST_CASE("half-integer closed forms") {
    // I_{1/2}(x) = sqrt(2/(pi x)) sinh x
    for (double x : {0.3, 1.0, 2.0, 7.7}) {
        const double closed = std::sqrt(2.0 / (M_PI * x)) * std::sinh(x);
        CHECK(bessel_i(0.5, x).value ==
              doctest::Approx(closed).epsilon(1e-9));
    }
    // I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x)
    for (double x : {0.5, 1.0, 4.0}) {
        const double closed = std::sqrt(2.0 / (M_PI * x)) *
                              (std::cosh(x) - std::sinh(x) / x);
        CHECK(bessel_i(1.5, x).value ==
              doctest::Approx(closed).epsilon(1e-9));
    }
    // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}; at x = 2 this is sqrt(pi/4) e^{-2}
    CHECK(bessel_k(0.5, 2.0).value ==
          doctest::Approx(std::sqrt(M_PI / 4.0) * std::exp(-2.0))
              .epsilon(1e-9));
    CHECK(bessel_k(0.5, 2.0).value ==
          doctest::Approx(0.11993777196806144737).epsilon(1e-9));
    // K_{3/2}(x) = sqrt(pi/(2x)) e^{-x} (1 + 1/x)
    for (double x : {0.5, 2.0, 11.0}) {
        const double closed =
            std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * (1.0 + 1.0 / x);
        CHECK(bessel_k(1.5, x).value ==
              doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("bessel reference values across branches") {
    CHECK(bessel_i(0.0, 2.7).value ==
          doctest::Approx(3.8416509765959342030).epsilon(1e-10));
    CHECK(bessel_i(1.3, 0.9).value ==
          doctest::Approx(0.33109516631862371785).epsilon(1e-10));
    CHECK(bessel_i(4.0, 17.2).value ==
          doctest::Approx(1774457.3110491247334).epsilon(1e-10));
    CHECK(bessel_i(0.0, 100.0).scaled_value ==
          doctest::Approx(0.039944379299096682648).epsilon(1e-8));
    CHECK(bessel_k(0.0, 10.0).value ==
          doctest::Approx(1.7780062316167651811e-5).epsilon(1e-8));
    CHECK(bessel_k(2.7, 4.1).value ==
          doctest::Approx(0.021872218951859291618).epsilon(1e-8));
    CHECK(bessel_k(1.0, 100.0).scaled_value ==
          doctest::Approx(0.12579995047957852933).epsilon(1e-8));
    CHECK(bessel_i(2.0, 700.0).scaled_value ==
          doctest::Approx(0.015038237024546452310).epsilon(1e-8));
    CHECK(bessel_k(2.0, 700.0).scaled_value ==
          doctest::Approx(0.047497787133623556524).epsilon(1e-8));
}

TEST_CASE("Wronskian identity as an independent cross-check") {
    // I_nu(x) K_{nu+1}(x) + I_{nu+1}(x) K_nu(x) = 1/x
    const double nu = 0.3, x = 1.7;
    const double lhs = bessel_i(nu, x).value * bessel_k(nu + 1.0, x).value +
                       bessel_i(nu + 1.0, x).value * bessel_k(nu, x).value;
    CHECK(lhs == doctest::Approx(1.0 / x).epsilon(1e-8));
}

TEST_CASE("monotonicity") {
    CHECK(bessel_i(0.0, 2.0).value > bessel_i(0.0, 1.0).value);
    CHECK(bessel_k(0.0, 20.0).value < bessel_k(0.0, 10.0).value);
    CHECK(bessel_k(0.0, 20.0).value ==
          doctest::Approx(5.7412378153365242927e-10).epsilon(1e-8));
}

TEST_CASE("scaled and unscaled values are consistent") {
    for (double x : {0.5, 5.0, 29.0, 31.0, 200.0}) {
        const auto iv = bessel_i(1.2, x);
        CHECK(iv.value ==
              doctest::Approx(iv.scaled_value * std::exp(x)).epsilon(1e-12));
        const auto kv = bessel_k(1.2, x);
        CHECK(kv.value ==
              doctest::Approx(kv.scaled_value * std::exp(-x)).epsilon(1e-12));
    }
}

TEST_CASE("branch crossover consistency on [25, 35]") {
    for (double nu : {0.0, 0.5, 2.0}) {
        for (double x = 25.0; x <= 35.0; x += 1.25) {
            const double a = robin::special::bessel_i_scaled_by_series(nu, x);
            const double b =
                robin::special::bessel_i_scaled_by_asymptotic(nu, x);
            CHECK(std::abs(a - b) <= 1e-7 * a);
        }
    }
}

TEST_CASE("recurrence-based derivative") {
    // I_1'(x) = (I_0(x) + I_2(x)) / 2, cross-checked by finite differences
    const double x = 1.3, h = 1e-6;
    const double fd =
        (bessel_i(1.0, x + h).value - bessel_i(1.0, x - h).value) / (2.0 * h);
    CHECK(bessel_i_derivative(1.0, x) == doctest::Approx(fd).epsilon(1e-8));
    CHECK_THROWS_AS(bessel_i_derivative(0.5, 1.0), std::domain_error);
}

TEST_CASE("bessel domain errors") {
    CHECK_THROWS_AS(bessel_i(-0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(0.5, -2.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(-1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(0.0, std::nan("")), std::domain_error);
}
