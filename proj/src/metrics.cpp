#include "wsnsim/metrics.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace wsnsim {

int bits_per_symbol(int order)
{
    if (order < 2 || (order & (order - 1)) != 0)
        throw std::invalid_argument("order must be a power of two >= 2");
    return std::countr_zero(static_cast<unsigned>(order));
}

BitErrorCount count_errors(int true_symbol, int decided_symbol, int order)
{
    if (true_symbol < 1 || true_symbol > order || decided_symbol < 1
        || decided_symbol > order)
        throw std::out_of_range("symbol outside [1..M]");
    const unsigned diff = static_cast<unsigned>(true_symbol - 1)
                        ^ static_cast<unsigned>(decided_symbol - 1);
    return {diff != 0 ? 1 : 0, std::popcount(diff)};
}

ConfidenceInterval wilson_ci(std::uint64_t errors, std::uint64_t trials,
                             double confidence)
{
    if (trials < 1)
        throw std::invalid_argument("wilson_ci needs at least one trial");
    if (errors > trials)
        throw std::invalid_argument("errors exceed trials");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::invalid_argument("confidence must lie in (0, 1)");

    const boost::math::normal_distribution<double> normal;
    const double z = boost::math::quantile(normal, 0.5 * (1.0 + confidence));
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / n;
    const double z2 = z * z;

    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;

    ConfidenceInterval ci;
    ci.low = center - half;
    ci.high = center + half;
    // the score bounds are exact at the boundary counts; clear any rounding
    if (errors == 0)
        ci.low = 0.0;
    if (errors == trials)
        ci.high = 1.0;
    if (ci.low < 0.0)
        ci.low = 0.0;
    if (ci.high > 1.0)
        ci.high = 1.0;
    return ci;
}

ErrorTally merge_tallies(const ErrorTally& a, const ErrorTally& b)
{
    // a fresh tally merges into anything
    if (a.trials != 0 && b.trials != 0 && a.bits_per_symbol != b.bits_per_symbol)
        throw std::invalid_argument("cannot merge tallies with different symbol widths");
    ErrorTally out;
    out.trials = a.trials + b.trials;
    out.symbol_errors = a.symbol_errors + b.symbol_errors;
    out.bit_errors = a.bit_errors + b.bit_errors;
    out.bits_per_symbol = a.trials != 0 ? a.bits_per_symbol : b.bits_per_symbol;
    return out;
}

BerPoint tally_to_point(const ErrorTally& tally, double confidence)
{
    if (tally.trials == 0)
        throw std::invalid_argument("empty tally");
    BerPoint p;
    p.trials = tally.trials;
    p.symbol_errors = tally.symbol_errors;
    p.bit_errors = tally.bit_errors;
    const double n = static_cast<double>(tally.trials);
    p.ser = static_cast<double>(tally.symbol_errors) / n;
    const std::uint64_t bits = tally.trials
                             * static_cast<std::uint64_t>(tally.bits_per_symbol);
    p.ber = static_cast<double>(tally.bit_errors) / static_cast<double>(bits);
    const auto ci = wilson_ci(tally.bit_errors, bits, confidence);
    p.ci_low = ci.low;
    p.ci_high = ci.high;
    return p;
}

} // namespace wsnsim
