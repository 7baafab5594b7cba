/**
 * @file config.hpp
 * @brief System parameters, power model, and the derived scalars of the
 * simplified distributed-antenna channel model.
 */
#pragma once

#include <string>

#include "dasee/errors.hpp"

namespace dasee {

enum class PilotNoiseMode {
  kExact,       ///< keep sigma^2 in the MMSE estimate quality terms
  kNegligible,  ///< sigma^2 << p_u tau_u Lbar beta d, nu = 1 / (Lbar beta)
};

std::string to_string(PilotNoiseMode mode);
PilotNoiseMode pilot_noise_mode_from_string(const std::string& s);

/// All scalar system parameters. Powers in watts, bandwidth in Hz.
struct SystemConfig {
  int L = 7;      ///< cells
  int M = 7;      ///< RRHs per cell
  int K = 10;     ///< users per cell
  int n = 20;     ///< antennas per RRH
  int psi = 1;    ///< pilot reuse factor
  int T = 196;    ///< coherence interval, symbols
  double B = 20e6;
  int d = 1;      ///< correlation factor, P = n / d
  double iota = 2.5;
  double Rc = 2000.0;
  double beta = 2.24e-8;
  double alpha1 = 0.54;
  double alpha2 = 0.075;
  double p_u = 0.5;
  double p_d = 1.0;
  double sigma2 = 1e-7;
  PilotNoiseMode pilot_noise_mode = PilotNoiseMode::kExact;

  int tau_u() const { return psi * K; }
  int N() const { return n * M; }
  /// Fraction of the coherence interval left for downlink data.
  double data_fraction() const { return static_cast<double>(T - tau_u()) / T; }

  bool operator==(const SystemConfig&) const = default;
};

struct PowerModel {
  double P_FIX = 9.0;       ///< W
  double P_RRH = 0.2;       ///< W per antenna
  double P_0 = 0.825;       ///< W per backhaul link
  double P_BT = 0.25e-9;    ///< W per bit/s
  double zeta = 0.4;        ///< amplifier efficiency

  bool operator==(const PowerModel&) const = default;
};

struct DerivedScalars {
  double L_bar1 = 0.0;
  double L_bar2 = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;  ///< +inf when L_bar2 == 0 in negligible mode
  double xi = 0.0;
  int tau_u = 0;
};

/// Throws ConfigError naming the first violated invariant.
void validate_config(const SystemConfig& cfg, const PowerModel& pm);
void validate_config(const SystemConfig& cfg);

DerivedScalars derived_scalars(const SystemConfig& cfg);

/// M^(iota/2), the nearest-RRH gain scaling.
double near_gain_scale(const SystemConfig& cfg);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace dasee
