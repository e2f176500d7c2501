#pragma once

#include <cstdint>

namespace wsnsim {

/// Symbol error probability of non-coherent orthogonal MFSK in AWGN at
/// linear symbol SNR `gamma`:
///
///   SEP = sum_{k=1}^{M-1} (-1)^{k+1} C(M-1,k)/(k+1) * exp(-k*gamma/(k+1))
///
/// The alternating sum cancels catastrophically for large M (the C(255,k)
/// terms reach ~1e74 while the result stays in [0,1]), so the accumulation
/// runs in extended precision sized to M. Supports M up to 1024.
double awgn_mfsk_sep(int order, double gamma);

/// Bit error rate of non-coherent binary FSK over flat Rayleigh fading at
/// linear average SNR gamma_bar: exactly 1 / (2 + gamma_bar).
double rayleigh_ncbfsk_ber(double gamma_bar);

/// Orthogonal-signaling SER -> BER conversion: Pb = Ps * (M/2)/(M-1).
double ser_to_ber(double ser, int order);

/// High-SNR BER plateau caused by imperfect local detection. Asymptotically
/// the fused decision follows the strongest branch's sensor, which misreports
/// with probability 1 - p_correct regardless of the channel order statistics,
/// so the floor is (1 - p_correct) * (M/2)/(M-1) for any sensor count.
double high_snr_ber_floor(double p_correct, int order);

struct OracleEstimate {
    double ser = 0.0;
    double ci_low = 0.0;  // 99% Wilson bounds
    double ci_high = 1.0;
    std::uint64_t trials = 0;
};

/// Straight-line, single-threaded Monte Carlo estimate of the selection
/// combining SER, coded independently of the engine path and driven by a
/// different generator (std::mt19937_64 with library distributions).
/// `gamma_bar` is the total symbol SNR; per-sensor energy is gamma_bar / L.
OracleEstimate brute_force_sc_ser(int order, int sensor_count,
                                  double gamma_bar, double p_correct,
                                  std::uint64_t trials,
                                  std::uint64_t seed = 1);

} // namespace wsnsim
