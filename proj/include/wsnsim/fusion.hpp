#pragma once

#include <optional>
#include <vector>

#include "wsnsim/channel.hpp"
#include "wsnsim/phy.hpp"

namespace wsnsim {

// Outcome of one fusion-center decision. `symbol` is 1-based; statistics
// holds Z_1..Z_M. Ties always break toward the lowest index so runs are
// bit-reproducible.
struct FusionDecision {
    int symbol = 0;
    std::optional<int> winning_sensor; // 1-based, selection combining only
    std::vector<double> statistics;
};

/// Selection combining: Z_m = max_l (e[m][l] + N), decide argmax_m Z_m.
/// The equal per-branch noise offset N never changes the argmax; it is kept
/// in the statistics because the comparator is defined over r^2 + N.
/// winning_sensor is the branch holding the global maximum entry.
void sc_decide(const EnergyMatrix& e, double branch_noise, FusionDecision& out);
FusionDecision sc_decide(const EnergyMatrix& e, double branch_noise);

/// Square-law equal gain combining: Z_m = sum_l e[m][l].
void egc_decide(const EnergyMatrix& e, FusionDecision& out);
FusionDecision egc_decide(const EnergyMatrix& e);

/// Genie-aided maximal ratio combining on the complex matched-filter bank:
/// Z_m = Re(sum_l conj(h_l) * y[m][l]). Perfect channel knowledge assumed.
void mrc_decide(const MatchedFilterBank& y, const ChannelRealization& h,
                FusionDecision& out);
FusionDecision mrc_decide(const MatchedFilterBank& y,
                          const ChannelRealization& h);

/// The tone-to-event map is the identity by construction.
int decision_to_event(const FusionDecision& d);

} // namespace wsnsim
