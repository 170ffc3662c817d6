#pragma once

#include <array>
#include <string_view>

#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// Transmit powers of both phases, parameterized by the split ratios.
struct PowerAllocation
{
    double theta1 = 0.5;
    double theta2 = 0.5;
    double p_max1 = 1.0;   // watts
    double p_max2 = 1.0;

    double p_c1() const { return theta1 * p_max1; }
    double p_e() const { return (1.0 - theta1) * p_max1; }
    double p_c2() const { return theta2 * p_max2; }
    double p_u() const { return (1.0 - theta2) * p_max2; }

    void validate() const;
};

/// Budgets and split from the scenario; theta overrides when given.
PowerAllocation powers_from(const Scenario& s);
PowerAllocation powers_from(const Scenario& s, double theta1, double theta2);

/// SINR thresholds and the normalized constants of the outage expressions.
/// A constant whose transmit power is zero is +inf; case-dependent constants
/// that do not apply are NaN.
struct Thresholds
{
    double rate_c = 0, rate_e = 0;
    double tau_c = 0, tau_e = 0;
    double noise = 0;

    double gbar_c1 = 0, gbar_e = 0, gbar_c2 = 0, gbar_u = 0;

    // phase 1, at the UAV
    double a1 = 0, a2 = 0, alpha1 = 0, alpha2 = 0;
    double A1 = 0, A2 = 0, calA = 0;
    // phase 2, at the fusion center
    double b1 = 0, b2 = 0, beta1 = 0, beta2 = 0;
    double B1 = 0, B2 = 0, calB = 0, calB_hat = 0;

    bool alpha1_lt1 = false, alpha2_lt1 = false;
    bool beta1_lt1 = false, beta2_lt1 = false;
    /// Some transmit power is zero.
    bool degenerate = false;
};

/// `tau_scale` multiplies both SINR thresholds (diagnostic use only).
Thresholds derive_thresholds(double rate_c, double rate_e, double noise,
                             const PowerAllocation& pw, double tau_scale = 1.0);
Thresholds derive_thresholds(const Scenario& s, const PowerAllocation& pw,
                             double tau_scale = 1.0);

/// SINR threshold for a rate over half the frame: 2^(2R) - 1.
double half_frame_threshold(double rate);

/// One channel realization (power gains already include path loss).
struct TrialRealization
{
    double phi_cu = 0, phi_eu = 0, phi_uf = 0, phi_cf = 0;
    double res_cu = 0, res_cf = 0, res_uf = 0;
    double noise_u = 0, noise_f = 0;
};

struct SinrSet
{
    double fc_xc1 = 0;          // phase 1, x_C at F, interference free
    double uav_xc1_first = 0;   // phase 1, x_C at U treating x_E as noise
    double uav_xe_sic = 0;      // phase 1, x_E at U after cancelling x_C
    double uav_xe_first = 0;    // phase 1, x_E at U treating x_C as noise
    double fc_xc2_first = 0;    // phase 2, x_C at F treating the relay as noise
    double fc_xe_sic = 0;       // phase 2, x_E at F after cancelling x_C
    double fc_xe_first = 0;     // phase 2, x_E at F treating x_C as noise
    double fc_xc2_sic = 0;      // phase 2, x_C at F after cancelling x_E
    double fc_xc2_alone = 0;    // phase 2, x_C at F with a silent UAV
};

/// A zero denominator yields +inf (or 0 for a zero numerator).
SinrSet sinr_set(const TrialRealization& trial, const PowerAllocation& pw);

enum class UavBranch { CFirst, EFirst };
enum class FcBranch { CFirst, UFirst, None };

struct DecodeOutcome
{
    bool xc1_ok = false;        // phase-1 x_C at F
    bool xc1_at_uav_ok = false; // x_C cancelled at U (C-first branch only)
    bool xe_at_uav_ok = false;
    bool uav_silent = true;
    bool xc2_ok = false;
    bool xe_ok = false;         // x_E end to end
    UavBranch uav_branch = UavBranch::CFirst;
    FcBranch fc_branch = FcBranch::None;
};

/// Fixed orders (UAV order, FC order): D1 = (C,C), D2 = (E,C), D3 = (C,E), D4 = (E,E).
enum class Mechanism { ADM, D1, D2, D3, D4 };

inline constexpr std::array<Mechanism, 5> kAllMechanisms = {
    Mechanism::ADM, Mechanism::D1, Mechanism::D2, Mechanism::D3, Mechanism::D4};

std::string_view mechanism_name(Mechanism m);
/// Accepts "adm", "d1".."d4" (case-insensitive). Throws std::invalid_argument.
Mechanism parse_mechanism(std::string_view s);

/// Adaptive decoding: both receivers choose the SIC order from the
/// instantaneous gains (ties go to the C-first order).
DecodeOutcome run_adm_trial(const TrialRealization& trial, const PowerAllocation& pw,
                            const Thresholds& th);
/// Non-adaptive decoding with a fixed order. Throws for Mechanism::ADM.
DecodeOutcome run_nadm_trial(const TrialRealization& trial, const PowerAllocation& pw,
                             const Thresholds& th, Mechanism order);
DecodeOutcome run_trial(const TrialRealization& trial, const PowerAllocation& pw,
                        const Thresholds& th, Mechanism mech);

} // namespace uavnoma
