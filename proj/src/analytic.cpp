#include "wsnsim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wsnsim/metrics.hpp"

namespace wsnsim {
namespace {

// C(M-1,k) reaches ~1e305 at M=1024 while the sum lands in [0,1]; the
// mantissa must cover the full dynamic range or the cancellation destroys
// every significant digit. 400 decimal digits (~1330 bits) keeps the
// binomials exact through M=1024 with ~90 bits to spare for the result.
using bigfloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<400>,
    boost::multiprecision::et_off>;

} // namespace

double awgn_mfsk_sep(int order, double gamma)
{
    if (order < 2)
        throw std::invalid_argument("order must be at least 2");
    if (order > 1024)
        throw std::invalid_argument("order above 1024 exceeds the evaluator's precision budget");
    if (!(gamma >= 0.0))
        throw std::invalid_argument("gamma must be non-negative");

    bigfloat sum = 0;
    bigfloat binom = 1; // C(order-1, k), updated in place
    const bigfloat neg_gamma = -gamma;
    for (int k = 1; k <= order - 1; ++k) {
        binom *= order - k;
        binom /= k;
        const bigfloat term =
            binom / (k + 1) * exp(neg_gamma * k / (k + 1));
        if (k & 1)
            sum += term;
        else
            sum -= term;
    }
    return std::clamp(static_cast<double>(sum), 0.0, 1.0);
}

double rayleigh_ncbfsk_ber(double gamma_bar)
{
    if (!(gamma_bar >= 0.0))
        throw std::invalid_argument("gamma_bar must be non-negative");
    return 1.0 / (2.0 + gamma_bar);
}

double ser_to_ber(double ser, int order)
{
    if (order < 2)
        throw std::invalid_argument("order must be at least 2");
    if (!(ser >= 0.0 && ser <= 1.0))
        throw std::invalid_argument("ser must lie in [0, 1]");
    return ser * (order / 2.0) / (order - 1);
}

double high_snr_ber_floor(double p_correct, int order)
{
    if (order < 2)
        throw std::invalid_argument("order must be at least 2");
    if (!(p_correct >= 0.0 && p_correct <= 1.0))
        throw std::invalid_argument("p_correct must lie in [0, 1]");
    return (1.0 - p_correct) * (order / 2.0) / (order - 1);
}

OracleEstimate brute_force_sc_ser(int order, int sensor_count,
                                  double gamma_bar, double p_correct,
                                  std::uint64_t trials, std::uint64_t seed)
{
    if (order < 2)
        throw std::invalid_argument("order must be at least 2");
    if (sensor_count < 1)
        throw std::invalid_argument("sensor_count must be at least 1");
    if (!(gamma_bar >= 0.0))
        throw std::invalid_argument("gamma_bar must be non-negative");
    if (!(p_correct >= 0.0 && p_correct <= 1.0))
        throw std::invalid_argument("p_correct must lie in [0, 1]");
    if (trials < 1000000)
        throw std::invalid_argument("oracle precision requires at least 1e6 trials");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> symbol_dist(1, order);
    std::uniform_int_distribution<int> wrong_dist(1, order - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // complex parts of unit-power gains and unit-power noise
    std::normal_distribution<double> half_normal(0.0, std::sqrt(0.5));

    const double amp = std::sqrt(gamma_bar / sensor_count);
    std::vector<double> best_per_tone(static_cast<std::size_t>(order));

    std::uint64_t symbol_errors = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const int true_symbol = symbol_dist(rng);

        std::fill(best_per_tone.begin(), best_per_tone.end(), 0.0);
        for (int l = 0; l < sensor_count; ++l) {
            int observed = true_symbol;
            if (unit(rng) >= p_correct) {
                observed = wrong_dist(rng);
                if (observed >= true_symbol)
                    ++observed;
            }
            const double h_re = half_normal(rng);
            const double h_im = half_normal(rng);
            for (int m = 0; m < order; ++m) {
                double re = half_normal(rng);
                double im = half_normal(rng);
                if (m + 1 == observed) {
                    re += amp * h_re;
                    im += amp * h_im;
                }
                const double energy = re * re + im * im;
                if (energy > best_per_tone[static_cast<std::size_t>(m)])
                    best_per_tone[static_cast<std::size_t>(m)] = energy;
            }
        }

        int decided = 1;
        double best = best_per_tone[0];
        for (int m = 1; m < order; ++m) {
            if (best_per_tone[static_cast<std::size_t>(m)] > best) {
                best = best_per_tone[static_cast<std::size_t>(m)];
                decided = m + 1;
            }
        }
        if (decided != true_symbol)
            ++symbol_errors;
    }

    OracleEstimate est;
    est.trials = trials;
    est.ser = static_cast<double>(symbol_errors) / static_cast<double>(trials);
    const auto ci = wilson_ci(symbol_errors, trials, 0.99);
    est.ci_low = ci.low;
    est.ci_high = ci.high;
    return est;
}

} // namespace wsnsim
