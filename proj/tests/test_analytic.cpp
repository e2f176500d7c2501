#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "wsnsim/analytic.hpp"

using namespace wsnsim;

TEST_SUITE("analytic") {

TEST_CASE("awgn sep collapses to the coin flip at zero snr")
{
    CHECK(awgn_mfsk_sep(2, 0.0) == 0.5);
    for (int m : {2, 4, 8, 16, 64, 256, 1024})
        CHECK(awgn_mfsk_sep(m, 0.0) == (m - 1.0) / m);
}

TEST_CASE("awgn sep matches the frozen binary value")
{
    // 0.5 * exp(-0.5), evaluated independently
    CHECK(awgn_mfsk_sep(2, 1.0)
          == doctest::Approx(0.30326532985631671).epsilon(1e-15));
}

TEST_CASE("awgn sep is decreasing in snr and increasing in order")
{
    for (int m : {2, 16, 256}) {
        double prev = 1.0;
        for (double g : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
            const double p = awgn_mfsk_sep(m, g);
            CHECK(p >= 0.0);
            CHECK(p <= (m - 1.0) / m);
            CHECK(p < prev);
            prev = p;
        }
    }
    for (double g : {0.5, 3.0, 10.0}) {
        double prev = 0.0;
        for (int m : {2, 4, 8, 16, 32, 64, 128, 256}) {
            const double p = awgn_mfsk_sep(m, g);
            CHECK(p > prev);
            prev = p;
        }
    }
}

TEST_CASE("awgn sep survives the large-M cancellation")
{
    // the M=256 alternating sum has terms near 1e74; any naive double
    // accumulation returns garbage far outside [0,1]
    const double p = awgn_mfsk_sep(256, 10.0);
    CHECK(p > 0.12);
    CHECK(p < 0.17);
    const double q = awgn_mfsk_sep(1024, 20.0);
    CHECK(q > 0.0);
    CHECK(q < 1.0);
}

TEST_CASE("awgn sep rejects bad arguments")
{
    CHECK_THROWS_AS(awgn_mfsk_sep(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(awgn_mfsk_sep(2048, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(awgn_mfsk_sep(2, -0.1), std::invalid_argument);
}

TEST_CASE("rayleigh bfsk closed form")
{
    CHECK(rayleigh_ncbfsk_ber(0.0) == 0.5);
    CHECK(rayleigh_ncbfsk_ber(1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(rayleigh_ncbfsk_ber(100.0)
          == doctest::Approx(9.8039215686274508e-3).epsilon(1e-15));
    for (double g : {0.0, 0.7, 3.0, 42.0, 1e6})
        CHECK(rayleigh_ncbfsk_ber(g) * (2.0 + g)
              == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(rayleigh_ncbfsk_ber(-1.0), std::invalid_argument);
}

TEST_CASE("ser to ber conversion")
{
    CHECK(ser_to_ber(0.37, 2) == 0.37);
    CHECK(ser_to_ber(0.3, 4) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(ser_to_ber(0.0, 16) == 0.0);
    CHECK_THROWS_AS(ser_to_ber(1.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(ser_to_ber(0.5, 1), std::invalid_argument);
}

TEST_CASE("high snr floor values")
{
    CHECK(high_snr_ber_floor(1.0, 16) == 0.0);
    CHECK(high_snr_ber_floor(0.9995, 16)
          == doctest::Approx(0.0005 * 8.0 / 15.0).epsilon(1e-12));
    CHECK(high_snr_ber_floor(0.999, 16)
          == doctest::Approx(0.001 * 8.0 / 15.0).epsilon(1e-12));
    // the two published plateau readings sit within 2.5% of the formula
    CHECK(std::fabs(high_snr_ber_floor(0.9995, 16) - 2.656e-4) / 2.656e-4
          < 0.025);
    CHECK(std::fabs(high_snr_ber_floor(0.999, 16) - 5e-4) / 5e-4 < 0.07);
    CHECK_THROWS_AS(high_snr_ber_floor(1.2, 16), std::invalid_argument);
    CHECK_THROWS_AS(high_snr_ber_floor(0.5, 1), std::invalid_argument);
}

TEST_CASE("brute force estimator brackets the binary rayleigh value")
{
    const auto est = brute_force_sc_ser(2, 1, 1.0, 1.0, 1000000, 5);
    CHECK(est.trials == 1000000);
    CHECK(est.ci_low <= 1.0 / 3.0);
    CHECK(est.ci_high >= 1.0 / 3.0);
    CHECK(est.ci_high - est.ci_low < 0.004);
}

TEST_CASE("an always-wrong sensor saturates the error rate")
{
    const auto est = brute_force_sc_ser(2, 1, 1e8, 0.0, 1000000, 6);
    CHECK(est.ser > 0.999);
    CHECK(est.ci_high == 1.0);
}

TEST_CASE("brute force estimator rejects bad arguments")
{
    CHECK_THROWS_AS(brute_force_sc_ser(2, 1, 1.0, 1.0, 1000),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_sc_ser(1, 1, 1.0, 1.0, 1000000),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_sc_ser(2, 0, 1.0, 1.0, 1000000),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_sc_ser(2, 1, -1.0, 1.0, 1000000),
                    std::invalid_argument);
}

} // TEST_SUITE
