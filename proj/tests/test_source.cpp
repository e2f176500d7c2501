#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <vector>

#include "wsnsim/source.hpp"

using namespace wsnsim;

TEST_SUITE("source") {

TEST_CASE("quantizer maps boundaries and interior bins")
{
    const EventModel m = EventModel::continuous(0.0, 1.0, 4);
    CHECK(quantize_event(0.0, m) == 1);
    CHECK(quantize_event(1.0, m) == 4);
    CHECK(quantize_event(0.49, m) == 2);
    CHECK_THROWS_AS(quantize_event(-0.1, m), std::domain_error);
    CHECK_THROWS_AS(quantize_event(1.1, m), std::domain_error);
}

TEST_CASE("quantizer is monotone and covers every level")
{
    const EventModel m = EventModel::continuous(-2.0, 6.0, 16);
    int prev = 1;
    std::vector<bool> hit(17, false);
    for (int i = 0; i <= 4000; ++i) {
        const double a = -2.0 + 8.0 * i / 4000.0;
        const int level = quantize_event(a, m);
        REQUIRE(level >= prev);
        REQUIRE(level >= 1);
        REQUIRE(level <= 16);
        hit[level] = true;
        prev = level;
    }
    for (int level = 1; level <= 16; ++level)
        CHECK(hit[level]);
}

TEST_CASE("model construction rejects bad shapes")
{
    CHECK_THROWS_AS(EventModel::uniform_symbol(1), std::invalid_argument);
    CHECK_THROWS_AS(EventModel::uniform_symbol(3), std::invalid_argument);
    CHECK_THROWS_AS(EventModel::continuous(1.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(EventModel::continuous(2.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(SensorModel::make(0, 0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(SensorModel::make(2, 1.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(SensorModel::make(2, -0.1, 4), std::invalid_argument);
}

TEST_CASE("uniform event draws are balanced")
{
    const EventModel m = EventModel::uniform_symbol(2);
    SplitRng rng(11, 0);
    const int n = 1000000;
    int ones = 0;
    for (int i = 0; i < n; ++i)
        if (draw_event(m, rng) == 1)
            ++ones;
    const double sigma = std::sqrt(0.25 / n);
    CHECK(std::fabs(ones / double(n) - 0.5) < 3.0 * sigma);
}

TEST_CASE("continuous draws land uniformly on the levels")
{
    const EventModel m = EventModel::continuous(0.0, 1.0, 4);
    SplitRng rng(12, 0);
    const int n = 400000;
    int counts[5] = {0};
    for (int i = 0; i < n; ++i)
        ++counts[draw_event(m, rng)];
    const double sigma = std::sqrt(0.25 * 0.75 / n);
    for (int level = 1; level <= 4; ++level)
        CHECK(std::fabs(counts[level] / double(n) - 0.25) < 3.0 * sigma);
}

TEST_CASE("perfect and totally faulty sensors are deterministic")
{
    SplitRng rng(13, 0);
    const auto perfect = SensorModel::make(5, 1.0, 8);
    for (int rep = 0; rep < 100; ++rep)
        for (int v : sensor_observe(3, perfect, rng))
            REQUIRE(v == 3);

    const auto faulty = SensorModel::make(4, 0.0, 2);
    for (int rep = 0; rep < 100; ++rep)
        for (int v : sensor_observe(1, faulty, rng))
            REQUIRE(v == 2);
}

TEST_CASE("misdetections are uniform over the wrong symbols")
{
    SplitRng rng(14, 0);
    const auto model = SensorModel::make(1, 0.9, 16);
    const int n = 1000000;
    const int truth = 7;
    int correct = 0;
    int wrong[17] = {0};
    for (int i = 0; i < n; ++i) {
        const int got = sensor_observe(truth, model, rng)[0];
        if (got == truth)
            ++correct;
        else
            ++wrong[got];
    }
    const double sigma_c = std::sqrt(0.9 * 0.1 / n);
    CHECK(std::fabs(correct / double(n) - 0.9) < 3.0 * sigma_c);

    const double p_each = 0.1 / 15.0;
    const double sigma_w = std::sqrt(p_each * (1 - p_each) / n);
    double chi2 = 0.0;
    const double expect = n * p_each;
    for (int s = 1; s <= 16; ++s) {
        if (s == truth) {
            CHECK(wrong[s] == 0);
            continue;
        }
        CHECK(std::fabs(wrong[s] / double(n) - p_each) < 3.0 * sigma_w);
        chi2 += (wrong[s] - expect) * (wrong[s] - expect) / expect;
    }
    // 99th percentile of chi-square with 14 degrees of freedom
    CHECK(chi2 < 29.141);
}

TEST_CASE("observing an out-of-range symbol throws")
{
    SplitRng rng(15, 0);
    const auto model = SensorModel::make(2, 0.5, 4);
    CHECK_THROWS_AS(sensor_observe(0, model, rng), std::out_of_range);
    CHECK_THROWS_AS(sensor_observe(5, model, rng), std::out_of_range);
}

} // TEST_SUITE
