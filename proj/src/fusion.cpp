#include "wsnsim/fusion.hpp"

#include <stdexcept>

namespace wsnsim {

namespace {

void check_shape(const EnergyMatrix& e)
{
    if (e.tones() < 1 || e.sensors() < 1)
        throw std::invalid_argument("energy matrix is empty");
}

// argmax over the statistics; strict > keeps the lowest index on ties
int argmax_symbol(const std::vector<double>& z)
{
    int best = 0;
    for (int m = 1; m < static_cast<int>(z.size()); ++m)
        if (z[m] > z[best])
            best = m;
    return best + 1;
}

} // namespace

void sc_decide(const EnergyMatrix& e, double branch_noise, FusionDecision& out)
{
    check_shape(e);
    if (branch_noise < 0.0)
        throw std::invalid_argument("branch noise must be >= 0");

    const int tones = e.tones();
    const int sensors = e.sensors();
    out.statistics.resize(static_cast<std::size_t>(tones));

    int best_tone = 0;
    int best_sensor_of_best_tone = 0;
    for (int m = 0; m < tones; ++m) {
        double row_max = e.at(m, 0);
        int row_arg = 0;
        for (int l = 1; l < sensors; ++l) {
            if (e.at(m, l) > row_max) {
                row_max = e.at(m, l);
                row_arg = l;
            }
        }
        out.statistics[m] = row_max + branch_noise;
        if (m == 0 || out.statistics[m] > out.statistics[best_tone]) {
            best_tone = m;
            best_sensor_of_best_tone = row_arg;
        }
    }

    out.symbol = best_tone + 1;
    out.winning_sensor = best_sensor_of_best_tone + 1;
}

FusionDecision sc_decide(const EnergyMatrix& e, double branch_noise)
{
    FusionDecision out;
    sc_decide(e, branch_noise, out);
    return out;
}

void egc_decide(const EnergyMatrix& e, FusionDecision& out)
{
    check_shape(e);
    const int tones = e.tones();
    const int sensors = e.sensors();
    out.statistics.resize(static_cast<std::size_t>(tones));
    for (int m = 0; m < tones; ++m) {
        double sum = 0.0;
        for (int l = 0; l < sensors; ++l)
            sum += e.at(m, l);
        out.statistics[m] = sum;
    }
    out.symbol = argmax_symbol(out.statistics);
    out.winning_sensor.reset();
}

FusionDecision egc_decide(const EnergyMatrix& e)
{
    FusionDecision out;
    egc_decide(e, out);
    return out;
}

void mrc_decide(const MatchedFilterBank& y, const ChannelRealization& h,
                FusionDecision& out)
{
    if (y.tones < 1 || y.sensors < 1)
        throw std::invalid_argument("filter bank is empty");
    if (y.sensors != h.size())
        throw std::invalid_argument("bank and channel sensor counts differ");

    out.statistics.resize(static_cast<std::size_t>(y.tones));
    for (int m = 0; m < y.tones; ++m) {
        double z = 0.0;
        for (int l = 0; l < y.sensors; ++l)
            z += (std::conj(h.gains[l]) * y.at(m, l)).real();
        out.statistics[m] = z;
    }
    out.symbol = argmax_symbol(out.statistics);
    out.winning_sensor.reset();
}

FusionDecision mrc_decide(const MatchedFilterBank& y,
                          const ChannelRealization& h)
{
    FusionDecision out;
    mrc_decide(y, h, out);
    return out;
}

int decision_to_event(const FusionDecision& d) { return d.symbol; }

} // namespace wsnsim
