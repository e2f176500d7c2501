#pragma once

#include <complex>
#include <span>
#include <vector>

#include "wsnsim/channel.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

// Sampled-waveform parameters for one TDMA symbol frame: L slots of duration
// slot_time() = symbol_time / L, each carrying one of M tones at complex
// baseband (carrier_hz is informational only).
//
// Default tone spacing is 1/slot_time() so the bank stays orthogonal over a
// slot; a spacing of 1/symbol_time can be configured instead but leaks
// between tones once L > 1.
struct WaveformParams {
    enum class Pulse { Rectangular, Gaussian };

    int order = 2;        // M tones
    int sensor_count = 1; // L slots per symbol
    double symbol_time = 1.0;
    int samples_per_slot = 8;
    double carrier_hz = 0.0;
    Pulse pulse = Pulse::Rectangular;
    double gaussian_bt = 0.3; // -3 dB bandwidth x slot_time, Gaussian pulse only
    double tone_spacing_hz = 0.0;
    double per_sensor_energy = 1.0; // E = P * slot_time

    double slot_time() const { return symbol_time / sensor_count; }
    double sample_dt() const { return slot_time() / samples_per_slot; }
    double power() const { return per_sensor_energy / slot_time(); }

    /// Validating factory. samples_per_slot = 0 picks 4*M; tone_spacing = 0
    /// picks 1/slot_time(). Throws std::invalid_argument on bad dimensions,
    /// samples_per_slot < 4*M, or spacing below 1/slot_time().
    static WaveformParams make(int order, int sensor_count,
                               double per_sensor_energy,
                               double symbol_time = 1.0,
                               int samples_per_slot = 0,
                               double tone_spacing_hz = 0.0,
                               Pulse pulse = Pulse::Rectangular,
                               double gaussian_bt = 0.3);
};

// M x L grid of non-negative correlator output energies, rows = tones,
// columns = sensors. Row t holds symbol t+1.
class EnergyMatrix {
public:
    EnergyMatrix() = default;
    EnergyMatrix(int tones, int sensors);

    double& at(int tone, int sensor) { return e_[tone * sensors_ + sensor]; }
    double at(int tone, int sensor) const { return e_[tone * sensors_ + sensor]; }

    int tones() const { return tones_; }
    int sensors() const { return sensors_; }
    void resize(int tones, int sensors);

    std::span<const double> row(int tone) const
    {
        return {e_.data() + tone * sensors_, static_cast<std::size_t>(sensors_)};
    }

private:
    int tones_ = 0;
    int sensors_ = 0;
    std::vector<double> e_;
};

// Complex matched-filter outputs y[tone][sensor] before the squaring; kept
// around because the coherent combiner needs them while the non-coherent
// ones only see |y|^2.
struct MatchedFilterBank {
    int tones = 0;
    int sensors = 0;
    std::vector<std::complex<double>> y;

    void resize(int t, int s);
    std::complex<double>& at(int tone, int sensor) { return y[tone * sensors + sensor]; }
    std::complex<double> at(int tone, int sensor) const { return y[tone * sensors + sensor]; }

    void energies(EnergyMatrix& out) const;
    EnergyMatrix energies() const;
};

/// Tone for symbol m (1-based): m * tone_spacing. Throws std::invalid_argument
/// for m outside [1..M].
double tone_frequency(int symbol, const WaveformParams& params);

/// Complex-baseband samples of one slot: amplitude sqrt(P), tone for `symbol`,
/// initial phase `phase`, pulse shape applied. `sensor` (1-based) fixes the
/// slot's position in absolute time, which enters only as a constant phase
/// offset on the tone. Output length = samples_per_slot.
void synthesize_slot(int symbol, int sensor, double phase,
                     const WaveformParams& params,
                     std::vector<std::complex<double>>& out);

std::vector<std::complex<double>> synthesize_slot(int symbol, int sensor,
                                                  double phase,
                                                  const WaveformParams& params);

/// Tone-bank energy detection over a full frame of L slots. frame.size() must
/// be L * samples_per_slot (throws std::invalid_argument otherwise).
/// e[m][l] = |sum_k r_l[k] * conj(tone_m[k]) * dt|^2 / slot_time, normalized
/// so a noiseless unit-gain transmission of tone m yields per_sensor_energy.
void demodulate(std::span<const std::complex<double>> frame,
                const WaveformParams& params, EnergyMatrix& out);

EnergyMatrix demodulate(std::span<const std::complex<double>> frame,
                        const WaveformParams& params);

/// Symbol-level equivalent of modulate -> fade -> AWGN -> matched filter:
/// y[m][l] = h_l * sqrt(es) * [m == observed_l] + CN(0, n0) for the M tones
/// of `order`. `observed` holds one 1-based symbol per sensor. Draw order is
/// sensor-major, tone-minor.
void symbol_level_trial(int order, const ChannelRealization& h, double es,
                        double n0, std::span<const int> observed, SplitRng& rng,
                        MatchedFilterBank& out);

MatchedFilterBank symbol_level_trial(int order, const ChannelRealization& h,
                                     double es, double n0,
                                     std::span<const int> observed,
                                     SplitRng& rng);

} // namespace wsnsim
