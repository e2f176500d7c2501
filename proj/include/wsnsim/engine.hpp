#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnsim/channel.hpp"
#include "wsnsim/fusion.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/phy.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/source.hpp"

namespace wsnsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Combiner { Sc, Egc, Mrc };
enum class Fidelity { Symbol, Waveform };
enum class FadingKind { Rayleigh, None };

std::string to_string(Combiner c);
std::string to_string(Fidelity f);
std::string to_string(FadingKind f);
Combiner combiner_from_string(const std::string& s);   // throws ConfigError
Fidelity fidelity_from_string(const std::string& s);   // throws ConfigError
FadingKind fading_from_string(const std::string& s);   // throws ConfigError

// Everything that defines one Monte Carlo operating point. The SNR is total
// symbol energy over n0 in dB with n0 normalized to 1; the total energy is
// split equally across the L sensors, so adding sensors lowers the power
// each one gets.
struct SimParams {
    int order = 2;        // M
    int sensor_count = 1; // L
    double snr_db = 0.0;  // 10*log10(E_total / n0)
    double p_correct = 1.0;
    Combiner combiner = Combiner::Sc;
    Fidelity fidelity = Fidelity::Symbol;
    FadingKind fading = FadingKind::Rayleigh;
    double rho = 0.0; // branch equicorrelation
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::uint64_t chunk_size = 65536;

    // waveform-fidelity detail; zeros mean "pick the default"
    double symbol_time = 1.0;
    int samples_per_slot = 0;    // 0 -> 4*M
    double tone_spacing_hz = 0.0; // 0 -> 1/slot_time
    WaveformParams::Pulse pulse = WaveformParams::Pulse::Rectangular;
    double gaussian_bt = 0.3;

    static constexpr double noise_n0 = 1.0;

    double total_energy() const;      // E_total = 10^(snr_db/10) * n0
    double per_sensor_energy() const; // E_total / L

    /// Throws ConfigError on any invalid combination (bad M/L/pc/rho,
    /// mrc with waveform fidelity, zero trials or chunk_size, ...).
    void validate() const;

    WaveformParams waveform_params() const;
};

// Per-trial trace, mainly for debugging and the odd spot check; the hot path
// only keeps the error counts.
struct TrialRecord {
    int true_event = 0;
    std::vector<int> observed;
    int decided = 0;
    int symbol_err = 0;
    int bit_errs = 0;
};

// Runs trials for a fixed parameter point, reusing all internal buffers.
// One instance per worker; not safe to share.
class TrialRunner {
public:
    explicit TrialRunner(const SimParams& params);

    /// Runs one trial; the returned record stays valid until the next call.
    const TrialRecord& run(SplitRng& rng);

private:
    SimParams params_;
    EventModel event_;
    SensorModel sensors_;
    WaveformParams wf_;
    double per_sensor_energy_ = 0.0;
    double sample_noise_power_ = 0.0;

    TrialRecord record_;
    ChannelRealization channel_;
    MatchedFilterBank bank_;
    EnergyMatrix energies_;
    FusionDecision decision_;
    std::vector<std::complex<double>> frame_;
    std::vector<std::complex<double>> slot_;
};

/// One-shot convenience around TrialRunner.
TrialRecord run_trial(const SimParams& params, SplitRng& rng);

/// Error tally for chunk `chunk_index` of a point: params.chunk_size trials
/// (the last chunk may be short), driven by SplitRng(params.seed, chunk_index).
ErrorTally run_chunk(const SimParams& params, std::uint64_t chunk_index,
                     TrialRunner& runner);

/// Full Monte Carlo estimate for one point. Trials are partitioned into
/// fixed chunks whose RNG substreams depend only on (seed, chunk index), so
/// the result is bit-identical for any worker count and completion order.
BerPoint run_point(const SimParams& params, int workers = 1);

} // namespace wsnsim
