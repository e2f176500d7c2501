#pragma once

#include <complex>
#include <span>
#include <vector>

#include "wsnsim/rng.hpp"

namespace wsnsim {

// One block-fading realization: complex gains h_l, one per sensor, constant
// over a symbol and redrawn independently every trial. Unit average power
// E[|h_l|^2] = 1, so SNR bookkeeping lives entirely in symbol energy vs n0.
struct ChannelRealization {
    std::vector<std::complex<double>> gains;
    double correlation = 0.0; // rho the gains were drawn with

    int size() const { return static_cast<int>(gains.size()); }

    /// Fading bypass: h_l = 1 for all sensors (pure-AWGN validation runs).
    static ChannelRealization unit(int sensor_count);
};

/// Draw equicorrelated Rayleigh gains, h_l = sqrt(rho)*c + sqrt(1-rho)*g_l
/// with c, g_l i.i.d. CN(0,1). rho=0 gives independent branches, rho=1
/// fully correlated ones. Throws std::invalid_argument on rho outside [0,1]
/// or sensor_count < 1.
void draw_gains(int sensor_count, double rho, SplitRng& rng,
                ChannelRealization& out);

ChannelRealization draw_gains(int sensor_count, double rho, SplitRng& rng);

/// Add i.i.d. circular complex Gaussian noise of total power `noise_power`
/// per sample, in place. noise_power = 0 leaves the samples untouched.
void add_awgn(std::span<std::complex<double>> samples, double noise_power,
              SplitRng& rng);

} // namespace wsnsim
