#include "wsnsim/engine.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>
#include <utility>

namespace wsnsim {

std::string to_string(Combiner c)
{
    switch (c) {
    case Combiner::Sc: return "sc";
    case Combiner::Egc: return "egc";
    case Combiner::Mrc: return "mrc";
    }
    return "?";
}

std::string to_string(Fidelity f)
{
    return f == Fidelity::Symbol ? "symbol" : "waveform";
}

std::string to_string(FadingKind f)
{
    return f == FadingKind::Rayleigh ? "rayleigh" : "none";
}

Combiner combiner_from_string(const std::string& s)
{
    if (s == "sc")
        return Combiner::Sc;
    if (s == "egc")
        return Combiner::Egc;
    if (s == "mrc")
        return Combiner::Mrc;
    throw ConfigError("unknown combiner '" + s + "' (expected sc, egc, or mrc)");
}

Fidelity fidelity_from_string(const std::string& s)
{
    if (s == "symbol")
        return Fidelity::Symbol;
    if (s == "waveform")
        return Fidelity::Waveform;
    throw ConfigError("unknown fidelity '" + s
                      + "' (expected symbol or waveform)");
}

FadingKind fading_from_string(const std::string& s)
{
    if (s == "rayleigh")
        return FadingKind::Rayleigh;
    if (s == "none")
        return FadingKind::None;
    throw ConfigError("unknown fading '" + s + "' (expected rayleigh or none)");
}

double SimParams::total_energy() const
{
    return std::pow(10.0, snr_db / 10.0) * noise_n0;
}

double SimParams::per_sensor_energy() const
{
    return total_energy() / sensor_count;
}

void SimParams::validate() const
{
    if (!is_power_of_two(order) || order < 2)
        throw ConfigError("M must be a power of two >= 2");
    if (order > 1024)
        throw ConfigError("M above 1024 is not supported");
    if (sensor_count < 1)
        throw ConfigError("L must be at least 1");
    if (!std::isfinite(snr_db))
        throw ConfigError("snr_db must be finite");
    if (!(p_correct >= 0.0 && p_correct <= 1.0))
        throw ConfigError("pc must lie in [0, 1]");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw ConfigError("rho must lie in [0, 1]");
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
    if (chunk_size < 1)
        throw ConfigError("chunk_size must be at least 1");
    if (combiner == Combiner::Mrc && fidelity == Fidelity::Waveform)
        throw ConfigError("mrc needs the complex correlator outputs, which the "
                          "waveform path reduces to energies; use symbol "
                          "fidelity for mrc");
    try {
        (void)waveform_params();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

WaveformParams SimParams::waveform_params() const
{
    return WaveformParams::make(order, sensor_count, per_sensor_energy(),
                                symbol_time, samples_per_slot, tone_spacing_hz,
                                pulse, gaussian_bt);
}

TrialRunner::TrialRunner(const SimParams& params)
    : params_(params),
      event_(EventModel::uniform_symbol(params.order)),
      sensors_(SensorModel::make(params.sensor_count, params.p_correct,
                                 params.order)),
      wf_(params.waveform_params())
{
    params_.validate();
    per_sensor_energy_ = params_.per_sensor_energy();
    // noise power per complex sample so the correlator output carries
    // exactly n0 of noise energy, matching the symbol-level path
    sample_noise_power_ = SimParams::noise_n0 / wf_.sample_dt();
    record_.observed.resize(static_cast<std::size_t>(params_.sensor_count));
    if (params_.fading == FadingKind::None)
        channel_ = ChannelRealization::unit(params_.sensor_count);
    frame_.reserve(static_cast<std::size_t>(params_.sensor_count)
                   * static_cast<std::size_t>(wf_.samples_per_slot));
}

const TrialRecord& TrialRunner::run(SplitRng& rng)
{
    record_.true_event = draw_event(event_, rng);
    sensor_observe(record_.true_event, sensors_, rng, record_.observed);

    if (params_.fading == FadingKind::Rayleigh)
        draw_gains(params_.sensor_count, params_.rho, rng, channel_);

    if (params_.fidelity == Fidelity::Symbol) {
        symbol_level_trial(params_.order, channel_, per_sensor_energy_,
                           SimParams::noise_n0, record_.observed, rng, bank_);
        if (params_.combiner == Combiner::Mrc) {
            mrc_decide(bank_, channel_, decision_);
        } else {
            bank_.energies(energies_);
            if (params_.combiner == Combiner::Sc)
                sc_decide(energies_, SimParams::noise_n0, decision_);
            else
                egc_decide(energies_, decision_);
        }
    } else {
        frame_.clear();
        for (int l = 1; l <= params_.sensor_count; ++l) {
            const double phase =
                2.0 * std::numbers::pi * rng.uniform();
            synthesize_slot(record_.observed[static_cast<std::size_t>(l - 1)],
                            l, phase, wf_, slot_);
            const std::complex<double> h =
                channel_.gains[static_cast<std::size_t>(l - 1)];
            for (const auto& s : slot_)
                frame_.push_back(h * s);
        }
        add_awgn(frame_, sample_noise_power_, rng);
        demodulate(frame_, wf_, energies_);
        if (params_.combiner == Combiner::Sc)
            sc_decide(energies_, SimParams::noise_n0, decision_);
        else
            egc_decide(energies_, decision_);
    }

    record_.decided = decision_to_event(decision_);
    const auto errs =
        count_errors(record_.true_event, record_.decided, params_.order);
    record_.symbol_err = errs.symbol_error;
    record_.bit_errs = errs.bit_errors;
    return record_;
}

TrialRecord run_trial(const SimParams& params, SplitRng& rng)
{
    TrialRunner runner(params);
    return runner.run(rng);
}

ErrorTally run_chunk(const SimParams& params, std::uint64_t chunk_index,
                     TrialRunner& runner)
{
    const std::uint64_t chunks =
        (params.trials + params.chunk_size - 1) / params.chunk_size;
    if (chunk_index >= chunks)
        throw std::out_of_range("chunk index past the end of the point");
    const std::uint64_t start = chunk_index * params.chunk_size;
    const std::uint64_t count = std::min(params.chunk_size,
                                         params.trials - start);

    SplitRng rng(params.seed, chunk_index);
    ErrorTally tally;
    tally.bits_per_symbol = bits_per_symbol(params.order);
    for (std::uint64_t i = 0; i < count; ++i) {
        const TrialRecord& rec = runner.run(rng);
        tally.add(rec.symbol_err, rec.bit_errs);
    }
    return tally;
}

BerPoint run_point(const SimParams& params, int workers)
{
    params.validate();
    const std::uint64_t chunks =
        (params.trials + params.chunk_size - 1) / params.chunk_size;

    std::vector<ErrorTally> slots(static_cast<std::size_t>(chunks));
    const std::uint64_t worker_count = std::min<std::uint64_t>(
        workers < 1 ? 1 : static_cast<std::uint64_t>(workers), chunks);

    if (worker_count <= 1) {
        TrialRunner runner(params);
        for (std::uint64_t c = 0; c < chunks; ++c)
            slots[static_cast<std::size_t>(c)] = run_chunk(params, c, runner);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;

        auto body = [&] {
            try {
                TrialRunner runner(params);
                while (!failed.load(std::memory_order_relaxed)) {
                    const std::uint64_t c =
                        next.fetch_add(1, std::memory_order_relaxed);
                    if (c >= chunks)
                        break;
                    slots[static_cast<std::size_t>(c)] =
                        run_chunk(params, c, runner);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (std::uint64_t w = 0; w < worker_count; ++w)
            pool.emplace_back(body);
        for (auto& t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }

    ErrorTally total;
    for (const auto& slot : slots)
        total = merge_tallies(total, slot);
    return tally_to_point(total);
}

} // namespace wsnsim
