#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <random>

#include "wsnsim/metrics.hpp"

using namespace wsnsim;

TEST_SUITE("metrics") {

TEST_CASE("bits per symbol")
{
    CHECK(bits_per_symbol(2) == 1);
    CHECK(bits_per_symbol(16) == 4);
    CHECK(bits_per_symbol(256) == 8);
    CHECK_THROWS_AS(bits_per_symbol(3), std::invalid_argument);
    CHECK_THROWS_AS(bits_per_symbol(0), std::invalid_argument);
}

TEST_CASE("error counting uses natural binary labels")
{
    auto r = count_errors(5, 5, 16);
    CHECK(r.symbol_error == 0);
    CHECK(r.bit_errors == 0);

    r = count_errors(1, 2, 2);
    CHECK(r.symbol_error == 1);
    CHECK(r.bit_errors == 1);

    // words 00 vs 11
    r = count_errors(1, 4, 4);
    CHECK(r.symbol_error == 1);
    CHECK(r.bit_errors == 2);

    CHECK_THROWS_AS(count_errors(0, 1, 4), std::out_of_range);
    CHECK_THROWS_AS(count_errors(1, 5, 4), std::out_of_range);
}

TEST_CASE("wilson interval edge and frozen values")
{
    const auto zero = wilson_ci(0, 100, 0.95);
    CHECK(zero.low == 0.0);
    // z^2/(n+z^2) with z = 1.959963984540054, evaluated independently
    CHECK(zero.high == doctest::Approx(0.036993498206985678).epsilon(1e-12));

    const auto half = wilson_ci(50, 100, 0.95);
    CHECK(half.low < 0.5);
    CHECK(half.high > 0.5);
    CHECK(half.low + half.high == doctest::Approx(1.0).epsilon(1e-12));

    const auto full = wilson_ci(100, 100, 0.95);
    CHECK(full.high == 1.0);
    CHECK(full.low > 0.9);

    CHECK_THROWS_AS(wilson_ci(2, 1, 0.95), std::invalid_argument);
    CHECK_THROWS_AS(wilson_ci(0, 0, 0.95), std::invalid_argument);
    CHECK_THROWS_AS(wilson_ci(0, 10, 1.5), std::invalid_argument);
}

TEST_CASE("wilson interval covers the truth at the nominal rate")
{
    std::mt19937 gen(77);
    std::binomial_distribution<int> binom(10000, 0.01);
    const int experiments = 10000;
    int covered = 0;
    for (int i = 0; i < experiments; ++i) {
        const int errors = binom(gen);
        const auto ci = wilson_ci(errors, 10000, 0.95);
        if (ci.low <= 0.01 && 0.01 <= ci.high)
            ++covered;
    }
    const double coverage = covered / double(experiments);
    CHECK(coverage > 0.94);
    CHECK(coverage < 0.96);
}

TEST_CASE("tally merge identity and commutativity")
{
    ErrorTally a;
    a.bits_per_symbol = 3;
    a.trials = 100;
    a.symbol_errors = 10;
    a.bit_errors = 17;

    const ErrorTally zero;
    const auto with_zero = merge_tallies(a, zero);
    CHECK(with_zero.trials == a.trials);
    CHECK(with_zero.symbol_errors == a.symbol_errors);
    CHECK(with_zero.bit_errors == a.bit_errors);
    CHECK(with_zero.bits_per_symbol == 3);

    ErrorTally b;
    b.bits_per_symbol = 3;
    b.trials = 50;
    b.symbol_errors = 5;
    b.bit_errors = 6;
    const auto ab = merge_tallies(a, b);
    const auto ba = merge_tallies(b, a);
    CHECK(ab.trials == 150);
    CHECK(ab.trials == ba.trials);
    CHECK(ab.symbol_errors == ba.symbol_errors);
    CHECK(ab.bit_errors == ba.bit_errors);

    ErrorTally other;
    other.bits_per_symbol = 4;
    other.trials = 1;
    CHECK_THROWS_AS(merge_tallies(a, other), std::invalid_argument);
}

TEST_CASE("tallies aggregate into consistent points")
{
    ErrorTally t;
    t.bits_per_symbol = 2;
    t.trials = 100;
    t.symbol_errors = 10;
    t.bit_errors = 12;
    const BerPoint p = tally_to_point(t);
    CHECK(p.ser == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(p.ber == doctest::Approx(0.06).epsilon(1e-15));
    CHECK(p.ci_low <= p.ber);
    CHECK(p.ci_high >= p.ber);
    CHECK(p.ser >= p.ber);
    CHECK(p.trials == 100);

    const ErrorTally empty;
    CHECK_THROWS_AS(tally_to_point(empty), std::invalid_argument);
}

TEST_CASE("binary tallies give equal ser and ber")
{
    ErrorTally t;
    t.bits_per_symbol = 1;
    t.trials = 1000;
    t.symbol_errors = 137;
    t.bit_errors = 137;
    const BerPoint p = tally_to_point(t);
    CHECK(p.ser == p.ber);
}

} // TEST_SUITE
