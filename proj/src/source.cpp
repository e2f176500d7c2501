#include "wsnsim/source.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wsnsim {

namespace {

void check_order(int order)
{
    if (order < 2 || !is_power_of_two(order))
        throw std::invalid_argument("modulation order must be a power of two >= 2, got "
                                    + std::to_string(order));
}

} // namespace

EventModel EventModel::uniform_symbol(int order)
{
    check_order(order);
    EventModel m;
    m.mode = Mode::UniformSymbol;
    m.order = order;
    return m;
}

EventModel EventModel::continuous(double lo, double hi, int order)
{
    check_order(order);
    if (!(lo < hi))
        throw std::invalid_argument("continuous event range requires lo < hi");
    EventModel m;
    m.mode = Mode::Continuous;
    m.range_lo = lo;
    m.range_hi = hi;
    m.order = order;
    return m;
}

SensorModel SensorModel::make(int sensor_count, double p_correct, int order)
{
    check_order(order);
    if (sensor_count < 1)
        throw std::invalid_argument("sensor count must be >= 1");
    if (!(p_correct >= 0.0 && p_correct <= 1.0))
        throw std::invalid_argument("p_correct must lie in [0, 1]");
    SensorModel m;
    m.sensor_count = sensor_count;
    m.p_correct = p_correct;
    m.order = order;
    return m;
}

int quantize_event(double a, const EventModel& model)
{
    if (a < model.range_lo || a > model.range_hi)
        throw std::domain_error("event value outside quantizer range");
    const double span = model.range_hi - model.range_lo;
    int level = 1 + static_cast<int>(
        std::floor((a - model.range_lo) / span * model.order));
    // a == range_hi lands one past the last bin
    if (level > model.order)
        level = model.order;
    return level;
}

int draw_event(const EventModel& model, SplitRng& rng)
{
    if (model.mode == EventModel::Mode::UniformSymbol)
        return 1 + static_cast<int>(rng.uniform_below(
            static_cast<std::uint64_t>(model.order)));
    const double a = model.range_lo
                   + rng.uniform() * (model.range_hi - model.range_lo);
    return quantize_event(a, model);
}

void sensor_observe(int true_symbol, const SensorModel& model, SplitRng& rng,
                    std::vector<int>& out)
{
    if (true_symbol < 1 || true_symbol > model.order)
        throw std::out_of_range("true symbol outside [1..M]");
    out.resize(static_cast<std::size_t>(model.sensor_count));
    for (int l = 0; l < model.sensor_count; ++l) {
        if (rng.uniform() < model.p_correct) {
            out[l] = true_symbol;
        } else {
            // uniform over the M-1 wrong symbols
            int wrong = 1 + static_cast<int>(rng.uniform_below(
                static_cast<std::uint64_t>(model.order - 1)));
            if (wrong >= true_symbol)
                ++wrong;
            out[l] = wrong;
        }
    }
}

std::vector<int> sensor_observe(int true_symbol, const SensorModel& model,
                                SplitRng& rng)
{
    std::vector<int> out;
    sensor_observe(true_symbol, model, rng, out);
    return out;
}

} // namespace wsnsim
