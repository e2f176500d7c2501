#include "wsnsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace wsnsim {

ChannelRealization ChannelRealization::unit(int sensor_count)
{
    ChannelRealization c;
    c.gains.assign(static_cast<std::size_t>(sensor_count), {1.0, 0.0});
    c.correlation = 0.0;
    return c;
}

void draw_gains(int sensor_count, double rho, SplitRng& rng,
                ChannelRealization& out)
{
    if (sensor_count < 1)
        throw std::invalid_argument("sensor count must be >= 1");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("correlation rho must lie in [0, 1]");

    out.correlation = rho;
    out.gains.resize(static_cast<std::size_t>(sensor_count));

    // single common factor + per-branch factor keeps E[|h|^2] = 1 for any rho
    const std::complex<double> common = rng.complex_gaussian(1.0);
    const double wc = std::sqrt(rho);
    const double wg = std::sqrt(1.0 - rho);
    for (auto& h : out.gains)
        h = wc * common + wg * rng.complex_gaussian(1.0);
}

ChannelRealization draw_gains(int sensor_count, double rho, SplitRng& rng)
{
    ChannelRealization out;
    draw_gains(sensor_count, rho, rng, out);
    return out;
}

void add_awgn(std::span<std::complex<double>> samples, double noise_power,
              SplitRng& rng)
{
    if (noise_power < 0.0)
        throw std::invalid_argument("noise power must be >= 0");
    if (noise_power == 0.0)
        return;
    for (auto& s : samples)
        s += rng.complex_gaussian(noise_power);
}

} // namespace wsnsim
