#include "wsnsim/phy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wsnsim {

WaveformParams WaveformParams::make(int order, int sensor_count,
                                    double per_sensor_energy,
                                    double symbol_time, int samples_per_slot,
                                    double tone_spacing_hz, Pulse pulse,
                                    double gaussian_bt)
{
    if (order < 2)
        throw std::invalid_argument("order must be >= 2");
    if (sensor_count < 1)
        throw std::invalid_argument("sensor count must be >= 1");
    if (!(symbol_time > 0.0))
        throw std::invalid_argument("symbol time must be > 0");
    if (!(per_sensor_energy >= 0.0))
        throw std::invalid_argument("per-sensor energy must be >= 0");

    WaveformParams p;
    p.order = order;
    p.sensor_count = sensor_count;
    p.symbol_time = symbol_time;
    p.per_sensor_energy = per_sensor_energy;
    p.pulse = pulse;
    p.gaussian_bt = gaussian_bt;

    p.samples_per_slot = samples_per_slot > 0 ? samples_per_slot : 4 * order;
    if (p.samples_per_slot < 4 * order)
        throw std::invalid_argument("samples_per_slot must be >= 4*M, got "
                                    + std::to_string(p.samples_per_slot));

    const double slot = p.slot_time();
    p.tone_spacing_hz = tone_spacing_hz > 0.0 ? tone_spacing_hz : 1.0 / slot;
    // 1/slot_time keeps the bank orthogonal over a slot; anything tighter
    // than that leaks even in the noiseless case
    if (p.tone_spacing_hz * slot < 1.0 - 1e-9)
        throw std::invalid_argument("tone spacing below 1/slot_time");
    if (pulse == Pulse::Gaussian && !(gaussian_bt > 0.0))
        throw std::invalid_argument("gaussian pulse needs bt > 0");
    return p;
}

EnergyMatrix::EnergyMatrix(int tones, int sensors) { resize(tones, sensors); }

void EnergyMatrix::resize(int tones, int sensors)
{
    if (tones < 1 || sensors < 1)
        throw std::invalid_argument("energy matrix dimensions must be >= 1");
    tones_ = tones;
    sensors_ = sensors;
    e_.assign(static_cast<std::size_t>(tones) * sensors, 0.0);
}

void MatchedFilterBank::resize(int t, int s)
{
    if (t < 1 || s < 1)
        throw std::invalid_argument("filter bank dimensions must be >= 1");
    tones = t;
    sensors = s;
    y.assign(static_cast<std::size_t>(t) * s, {0.0, 0.0});
}

void MatchedFilterBank::energies(EnergyMatrix& out) const
{
    out.resize(tones, sensors);
    for (int m = 0; m < tones; ++m)
        for (int l = 0; l < sensors; ++l)
            out.at(m, l) = std::norm(at(m, l));
}

EnergyMatrix MatchedFilterBank::energies() const
{
    EnergyMatrix out;
    energies(out);
    return out;
}

double tone_frequency(int symbol, const WaveformParams& params)
{
    if (symbol < 1 || symbol > params.order)
        throw std::invalid_argument("tone index outside [1..M]");
    return symbol * params.tone_spacing_hz;
}

namespace {

// Sampled pulse envelope on the slot-local grid t_k = k*dt. The Gaussian
// window (-3 dB bandwidth B = bt/slot_time, centered mid-slot) is scaled so
// its sampled energy equals the slot time, making the transmitted energy
// P*slot_time for every pulse shape.
void pulse_envelope(const WaveformParams& p, std::vector<double>& w)
{
    const int n = p.samples_per_slot;
    w.resize(static_cast<std::size_t>(n));
    if (p.pulse == WaveformParams::Pulse::Rectangular) {
        for (int k = 0; k < n; ++k)
            w[k] = 1.0;
        return;
    }
    const double slot = p.slot_time();
    const double bw = p.gaussian_bt / slot;
    const double sigma_t = std::sqrt(std::log(2.0)) / (2.0 * M_PI * bw);
    const double dt = p.sample_dt();
    double energy = 0.0;
    for (int k = 0; k < n; ++k) {
        const double t = k * dt - 0.5 * slot;
        w[k] = std::exp(-0.5 * (t / sigma_t) * (t / sigma_t));
        energy += w[k] * w[k] * dt;
    }
    const double scale = std::sqrt(slot / energy);
    for (auto& v : w)
        v *= scale;
}

} // namespace

void synthesize_slot(int symbol, int sensor, double phase,
                     const WaveformParams& params,
                     std::vector<std::complex<double>>& out)
{
    if (sensor < 1 || sensor > params.sensor_count)
        throw std::invalid_argument("sensor index outside [1..L]");
    const double freq = tone_frequency(symbol, params);
    const int n = params.samples_per_slot;
    const double dt = params.sample_dt();
    const double amp = std::sqrt(params.power());

    // slot-local time; the slot's absolute-time offset (sensor-1)*slot_time
    // only shifts the tone's starting phase
    const double phi0 = phase
        + 2.0 * M_PI * freq * (sensor - 1) * params.slot_time();

    std::vector<double> w;
    pulse_envelope(params, w);

    out.resize(static_cast<std::size_t>(n));
    std::complex<double> phasor = std::polar(1.0, phi0);
    const std::complex<double> step = std::polar(1.0, 2.0 * M_PI * freq * dt);
    for (int k = 0; k < n; ++k) {
        out[k] = amp * w[k] * phasor;
        phasor *= step;
    }
}

std::vector<std::complex<double>> synthesize_slot(int symbol, int sensor,
                                                  double phase,
                                                  const WaveformParams& params)
{
    std::vector<std::complex<double>> out;
    synthesize_slot(symbol, sensor, phase, params, out);
    return out;
}

void demodulate(std::span<const std::complex<double>> frame,
                const WaveformParams& params, EnergyMatrix& out)
{
    const int n = params.samples_per_slot;
    const int sensors = params.sensor_count;
    const int tones = params.order;
    if (frame.size() != static_cast<std::size_t>(n) * sensors)
        throw std::invalid_argument("frame length must be L * samples_per_slot");

    out.resize(tones, sensors);
    const double dt = params.sample_dt();
    const double slot = params.slot_time();

    for (int m = 0; m < tones; ++m) {
        const double freq = (m + 1) * params.tone_spacing_hz;
        const std::complex<double> step = std::polar(1.0, -2.0 * M_PI * freq * dt);
        for (int l = 0; l < sensors; ++l) {
            const auto* r = frame.data() + static_cast<std::size_t>(l) * n;
            std::complex<double> acc{0.0, 0.0};
            std::complex<double> phasor{1.0, 0.0};
            for (int k = 0; k < n; ++k) {
                acc += r[k] * phasor;
                phasor *= step;
            }
            acc *= dt;
            out.at(m, l) = std::norm(acc) / slot;
        }
    }
}

EnergyMatrix demodulate(std::span<const std::complex<double>> frame,
                        const WaveformParams& params)
{
    EnergyMatrix out;
    demodulate(frame, params, out);
    return out;
}

void symbol_level_trial(int order, const ChannelRealization& h, double es,
                        double n0, std::span<const int> observed, SplitRng& rng,
                        MatchedFilterBank& out)
{
    if (order < 2)
        throw std::invalid_argument("order must be >= 2");
    if (es < 0.0 || n0 < 0.0)
        throw std::invalid_argument("energies must be >= 0");
    const int sensors = h.size();
    if (observed.size() != static_cast<std::size_t>(sensors))
        throw std::invalid_argument("one observed symbol per sensor required");

    if (out.tones != order || out.sensors != sensors)
        out.resize(order, sensors);

    const double amp = std::sqrt(es);
    for (int l = 0; l < sensors; ++l) {
        const int ml = observed[l];
        if (ml < 1 || ml > order)
            throw std::invalid_argument("observed symbol outside [1..M]");
        const std::complex<double> signal = h.gains[l] * amp;
        for (int m = 0; m < order; ++m) {
            std::complex<double> v = rng.complex_gaussian(n0);
            if (m + 1 == ml)
                v += signal;
            out.at(m, l) = v;
        }
    }
}

MatchedFilterBank symbol_level_trial(int order, const ChannelRealization& h,
                                     double es, double n0,
                                     std::span<const int> observed,
                                     SplitRng& rng)
{
    MatchedFilterBank out;
    symbol_level_trial(order, h, es, n0, observed, rng, out);
    return out;
}

} // namespace wsnsim
