#pragma once

#include <vector>

#include "wsnsim/rng.hpp"

namespace wsnsim {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// What the sensors watch: an M-ary event, either drawn directly as a symbol
// or as a continuous reading that gets quantized onto the M levels.
struct EventModel {
    enum class Mode { UniformSymbol, Continuous };

    Mode mode = Mode::UniformSymbol;
    double range_lo = 0.0;
    double range_hi = 1.0;
    int order = 2; // M, power of two

    static EventModel uniform_symbol(int order);
    static EventModel continuous(double lo, double hi, int order);
};

// Local detection abstraction: each of the L sensors reports the true symbol
// with probability p_correct, otherwise one of the other M-1 symbols chosen
// uniformly. Faults are independent across sensors and of the channel.
struct SensorModel {
    enum class ErrorKind { UniformWrong };

    int sensor_count = 1;   // L
    double p_correct = 1.0; // P_c
    int order = 2;          // M, alphabet for misdetections
    ErrorKind error_kind = ErrorKind::UniformWrong;

    static SensorModel make(int sensor_count, double p_correct, int order);
};

/// Map a continuous reading onto a level in [1..M] with uniform left-closed
/// bins over [range_lo, range_hi]; the upper edge clamps to level M.
/// Throws std::domain_error when `a` lies outside the range.
int quantize_event(double a, const EventModel& model);

/// Draw one event symbol in [1..M].
int draw_event(const EventModel& model, SplitRng& rng);

/// Fill `out` with the L sensor reports for `true_symbol` (1-based).
void sensor_observe(int true_symbol, const SensorModel& model, SplitRng& rng,
                    std::vector<int>& out);

std::vector<int> sensor_observe(int true_symbol, const SensorModel& model,
                                SplitRng& rng);

} // namespace wsnsim
