/**
 * @file asymptotics.hpp
 * @brief Deterministic-equivalent SINR of the simplified model, transmit
 * power inversion for a target rate, total power, and energy efficiency.
 *
 * Everything here is closed form in the scalars of SystemConfig. The general
 * correlated-channel route lives in general_de.hpp.
 */
#pragma once

#include <optional>

#include "dasee/config.hpp"

namespace dasee {

/// Deterministic-equivalent SINR terms. All three carry the same beta^2 scale.
struct SinrBreakdown {
  double S = 0.0;            ///< desired signal power
  double I_PC = 0.0;         ///< pilot-contamination interference
  double I_MU_scaled = 0.0;  ///< n * I_MU, uncorrelated multi-user interference

  /// Multi-user interference at a given antenna count.
  double I_MU(double n) const { return I_MU_scaled / n; }
};

SinrBreakdown sinr_breakdown(const SystemConfig& cfg);

/// S / (sigma^2/(p_d n) + I_PC + I_MU' / n).
double deterministic_sinr_simplified(const SystemConfig& cfg, const SinrBreakdown& brk,
                                     double n, double p_d);

/// log2(1 + S / I_PC); infinite without pilot contamination.
double pc_rate_ceiling(const SinrBreakdown& brk);

/// S / (2^gamma - 1) - I_PC. Positive iff gamma is achievable for large n.
double rate_margin(const SinrBreakdown& brk, double gamma);

/// Transmit power per user that meets rate gamma with n antennas per RRH.
/// Throws RateUnachievableError or InfeasibleAntennasError.
double required_transmit_power(const SystemConfig& cfg, const SinrBreakdown& brk,
                               double gamma, double n);

/// Smallest integer n with strictly positive required transmit power.
long min_antennas(const SystemConfig& cfg, const SinrBreakdown& brk, double gamma);

/// Total cell power given the achieved cell spectral efficiency (bit/s/Hz).
double total_power_for_se(const SystemConfig& cfg, const PowerModel& pm, double n,
                          double p_d, double cell_se);

/// Total cell power at uniform per-user rate gamma.
double total_power(const SystemConfig& cfg, const PowerModel& pm, double gamma, double n,
                   double p_d);

struct EeEvaluation {
  double ee = 0.0;       ///< bits/Joule
  double p_d = 0.0;      ///< W
  double P_total = 0.0;  ///< W
  double cell_se = 0.0;  ///< bit/s/Hz
};

/// Target-rate EE: p_d from the power inversion, then B * SE / P_total.
/// Propagates infeasibility as exceptions.
EeEvaluation evaluate_target_rate(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                                  double n);

double energy_efficiency(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                         double n);

/// Same as energy_efficiency but returns nullopt where infeasible.
std::optional<double> try_energy_efficiency(const SystemConfig& cfg, const PowerModel& pm,
                                            double gamma, double n);

/// Fixed-power EE: cfg.p_d is transmitted and the rate follows from the
/// deterministic SINR.
EeEvaluation evaluate_fixed_power(const SystemConfig& cfg, const PowerModel& pm, double n);

}  // namespace dasee
