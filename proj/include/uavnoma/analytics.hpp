#pragma once

#include <array>
#include <optional>

#include "uavnoma/mgdist.hpp"
#include "uavnoma/protocol.hpp"
#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// Success probability of the SIC branch
///
///     Pr[ X0 >= X1, X0 > alpha1 X1 + a1, X1 > alpha2 X2 + a2 ]
///
/// where X2 is the residual left after cancelling X0's signal. A missing `d2`
/// means perfect SIC (X2 = 0). Infinite thresholds give 0.
double varrho_sic(const MGDist& d0, const MGDist& d1, const std::optional<MGDist>& d2,
                  double a1, double alpha1, double a2, double alpha2);

/// Success probability of the direct branch Pr[ X0 > X1, X0 > alpha X1 + a ].
double varrho_direct(const MGDist& d0, const MGDist& d1, double a, double alpha);

/// UAV decodes x_E through the C-first branch.
double varrho1(const LinkModel& lm, const Thresholds& th);
/// UAV decodes x_E through the E-first branch.
double varrho2(const LinkModel& lm, const Thresholds& th);
/// F decodes the relayed x_E in the C-first and U-first branches.
std::array<double, 2> varrho3_4(const LinkModel& lm, const Thresholds& th);
/// F decodes x_C in phase 2 in the C-first and U-first branches.
std::array<double, 2> varrho5_6(const LinkModel& lm, const Thresholds& th);
/// Phase-2 x_C outage at F when the UAV is silent.
double varrho7(const LinkModel& lm, const Thresholds& th);
/// Phase-1 x_C outage at F.
double varrho8(const LinkModel& lm, const Thresholds& th);

/// Terms that depend on the phase-1 split only.
struct Phase1Terms { double rho1 = 0, rho2 = 0, rho8 = 0; };
/// Terms that depend on the phase-2 split only.
struct Phase2Terms { double rho3 = 0, rho4 = 0, rho5 = 0, rho6 = 0, rho7 = 0; };

Phase1Terms phase1_terms(const LinkModel& lm, const Thresholds& th);
Phase2Terms phase2_terms(const LinkModel& lm, const Thresholds& th);

struct OutageSet
{
    double op_e = 0;    // x_E end to end
    double op_c1 = 0;   // x_C, phase 1
    double op_c2 = 0;   // x_C, phase 2
    std::array<double, 8> rho{};   // rho[k] holds varrho_{k+1}
};

OutageSet combine(const Phase1Terms& p1, const Phase2Terms& p2);
OutageSet outage_set(const LinkModel& lm, const Thresholds& th);
OutageSet outage_set(const Scenario& s, const PowerAllocation& pw, double tau_scale = 1.0);

/// Sum throughput in bits/s/Hz from the three outage probabilities.
double throughput(const OutageSet& op, double rate_c, double rate_e);
double throughput(const Scenario& s, const PowerAllocation& pw);

} // namespace uavnoma
