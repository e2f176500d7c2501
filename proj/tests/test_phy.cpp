#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "wsnsim/channel.hpp"
#include "wsnsim/phy.hpp"

using namespace wsnsim;

TEST_SUITE("phy") {

TEST_CASE("waveform parameter factory applies defaults and guards")
{
    const auto wp = WaveformParams::make(8, 4, 2.0);
    CHECK(wp.samples_per_slot == 32);
    CHECK(wp.slot_time() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(wp.tone_spacing_hz == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(wp.power() == doctest::Approx(8.0).epsilon(1e-15));

    CHECK_THROWS_AS(WaveformParams::make(8, 4, 2.0, 1.0, 16),
                    std::invalid_argument); // fewer than 4M samples
    CHECK_THROWS_AS(WaveformParams::make(8, 4, 2.0, 1.0, 0, 2.0),
                    std::invalid_argument); // spacing below 1/slot
    CHECK_THROWS_AS(WaveformParams::make(1, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(WaveformParams::make(4, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(WaveformParams::make(4, 1, -1.0), std::invalid_argument);
    // a non-power-of-two tone count is fine at this layer; only the bit
    // mapping upstream restricts M
    CHECK_NOTHROW(WaveformParams::make(3, 1, 1.0));
}

TEST_CASE("tone frequencies are multiples of the spacing")
{
    auto wp = WaveformParams::make(8, 1, 1.0);
    wp.tone_spacing_hz = 1000.0;
    CHECK(tone_frequency(3, wp) == doctest::Approx(3000.0));

    const auto single_sensor = WaveformParams::make(4, 1, 1.0, 1e-3);
    CHECK(tone_frequency(1, single_sensor) == doctest::Approx(1000.0));

    CHECK_THROWS_AS(tone_frequency(0, wp), std::invalid_argument);
    CHECK_THROWS_AS(tone_frequency(9, wp), std::invalid_argument);
}

TEST_CASE("adjacent tones integrate to zero over one slot")
{
    const auto wp = WaveformParams::make(4, 2, 1.0); // slot 0.5, spacing 2 Hz
    const double dt = wp.sample_dt();
    std::complex<double> acc = 0.0;
    for (int k = 0; k < wp.samples_per_slot; ++k) {
        const double t = k * dt;
        acc += std::exp(std::complex<double>(
                   0.0, 2.0 * std::numbers::pi * wp.tone_spacing_hz * t))
             * dt;
    }
    CHECK(std::abs(acc) < 1e-12);
}

TEST_CASE("slot synthesis keeps length and energy")
{
    const auto wp = WaveformParams::make(8, 2, 3.0, 1.0, 64);
    for (int m : {1, 5, 8}) {
        const auto slot = synthesize_slot(m, 2, 1.234, wp);
        REQUIRE(slot.size() == 64);
        double energy = 0.0;
        for (const auto& s : slot)
            energy += std::norm(s) * wp.sample_dt();
        CHECK(energy == doctest::Approx(wp.per_sensor_energy).epsilon(1e-9));
    }
}

TEST_CASE("gaussian pulse keeps slot energy too")
{
    const auto wp = WaveformParams::make(4, 1, 2.0, 1.0, 256, 0.0,
                                         WaveformParams::Pulse::Gaussian, 0.5);
    const auto slot = synthesize_slot(2, 1, 0.0, wp);
    double energy = 0.0;
    for (const auto& s : slot)
        energy += std::norm(s) * wp.sample_dt();
    CHECK(energy == doctest::Approx(wp.per_sensor_energy).epsilon(1e-9));
}

TEST_CASE("noiseless demodulation concentrates the symbol energy")
{
    const auto wp = WaveformParams::make(8, 2, 2.5);
    for (int m0 = 1; m0 <= 8; ++m0) {
        std::vector<std::complex<double>> frame;
        for (int l = 1; l <= 2; ++l) {
            const auto slot = synthesize_slot(m0, l, 0.9 * l, wp);
            frame.insert(frame.end(), slot.begin(), slot.end());
        }
        const auto e = demodulate(frame, wp);
        REQUIRE(e.tones() == 8);
        REQUIRE(e.sensors() == 2);
        double total = 0.0;
        for (int m = 0; m < 8; ++m)
            for (int l = 0; l < 2; ++l) {
                total += e.at(m, l);
                if (m + 1 == m0)
                    CHECK(e.at(m, l)
                          == doctest::Approx(wp.per_sensor_energy)
                                 .epsilon(1e-9));
                else
                    CHECK(e.at(m, l) <= 1e-6 * wp.per_sensor_energy);
            }
        // at least 99.99% of the captured energy sits in row m0
        const double row = e.at(m0 - 1, 0) + e.at(m0 - 1, 1);
        CHECK(row >= 0.9999 * total);
    }
}

TEST_CASE("energies are phase agnostic")
{
    const auto wp = WaveformParams::make(4, 1, 1.5);
    const auto ref = demodulate(synthesize_slot(3, 1, 0.0, wp), wp);
    for (double phi : {0.7, 2.1, 5.9}) {
        const auto e = demodulate(synthesize_slot(3, 1, phi, wp), wp);
        for (int m = 0; m < 4; ++m)
            CHECK(e.at(m, 0) == doctest::Approx(ref.at(m, 0))
                                    .epsilon(1e-9)
                                    .scale(wp.per_sensor_energy));
    }
}

TEST_CASE("input scaling squares into the energies")
{
    const auto wp = WaveformParams::make(4, 1, 1.0);
    auto frame = synthesize_slot(2, 1, 0.4, wp);
    const auto base = demodulate(frame, wp);
    for (auto& s : frame)
        s *= 3.0;
    const auto scaled = demodulate(frame, wp);
    for (int m = 0; m < 4; ++m)
        CHECK(scaled.at(m, 0)
              == doctest::Approx(9.0 * base.at(m, 0)).epsilon(1e-12));
}

TEST_CASE("frame length mismatches are rejected")
{
    const auto wp = WaveformParams::make(4, 2, 1.0);
    std::vector<std::complex<double>> bad(wp.samples_per_slot * 2 - 1);
    EnergyMatrix e;
    CHECK_THROWS_AS(demodulate(bad, wp, e), std::invalid_argument);
}

TEST_CASE("demodulated noise and signal moments match the discrete model")
{
    // waveform path with h = 1: mean on-tone energy E + n0, off-tone n0
    const auto wp = WaveformParams::make(4, 1, 2.5);
    const double n0 = 1.0;
    const double fs = 1.0 / wp.sample_dt();
    SplitRng rng(31, 0);
    const int n = 20000;
    double on = 0.0, off = 0.0;
    EnergyMatrix e;
    std::vector<std::complex<double>> frame;
    for (int i = 0; i < n; ++i) {
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        synthesize_slot(2, 1, phi, wp, frame);
        add_awgn(frame, n0 * fs, rng);
        demodulate(frame, wp, e);
        on += e.at(1, 0);
        off += e.at(3, 0);
    }
    const double es = wp.per_sensor_energy;
    const double sd_on = std::sqrt(2.0 * n0 * es + n0 * n0);
    CHECK(std::fabs(on / n - (es + n0)) < 3.0 * sd_on / std::sqrt(double(n)));
    CHECK(std::fabs(off / n - n0) < 3.0 * n0 / std::sqrt(double(n)));
}

TEST_CASE("symbol-level trial reproduces the noiseless limit")
{
    SplitRng rng(32, 0);
    const auto h = ChannelRealization::unit(3);
    const std::vector<int> observed = {2, 4, 1};
    const auto bank = symbol_level_trial(4, h, 2.0, 0.0, observed, rng);
    auto e = bank.energies();
    for (int m = 0; m < 4; ++m)
        for (int l = 0; l < 3; ++l) {
            if (m + 1 == observed[l])
                CHECK(e.at(m, l) == doctest::Approx(2.0).epsilon(1e-12));
            else
                CHECK(e.at(m, l) == 0.0);
        }
}

TEST_CASE("symbol-level noise is exponential with mean n0")
{
    SplitRng rng(33, 0);
    const auto h = ChannelRealization::unit(1);
    const std::vector<int> observed = {1};
    const double n0 = 1.5;
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    MatchedFilterBank bank;
    for (int i = 0; i < n; ++i) {
        symbol_level_trial(2, h, 0.0, n0, observed, rng, bank);
        const double x = std::norm(bank.at(1, 0));
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::fabs(mean - n0) < 3.0 * n0 / std::sqrt(double(n)));
    // exponential: variance = mean^2 (loose 5% check at this sample size)
    CHECK(std::fabs(var - n0 * n0) / (n0 * n0) < 0.05);
}

} // TEST_SUITE
