#include "dasee/config.hpp"

#include <cmath>
#include <limits>

namespace dasee {

std::string to_string(PilotNoiseMode mode) {
  return mode == PilotNoiseMode::kExact ? "exact" : "negligible";
}

PilotNoiseMode pilot_noise_mode_from_string(const std::string& s) {
  if (s == "exact") return PilotNoiseMode::kExact;
  if (s == "negligible") return PilotNoiseMode::kNegligible;
  throw ConfigError("unknown pilot_noise_mode '" + s + "'");
}

void validate_config(const SystemConfig& cfg) {
  if (cfg.L < 1) throw ConfigError("L must be >= 1");
  if (cfg.M < 1) throw ConfigError("M must be >= 1");
  if (cfg.K < 1) throw ConfigError("K must be >= 1");
  if (cfg.n < 1) throw ConfigError("n must be >= 1");
  if (cfg.psi < 1 || cfg.psi > cfg.L) throw ConfigError("psi must be in [1, L]");
  if (cfg.L % cfg.psi != 0) throw ConfigError("L not divisible by psi");
  if (cfg.T < 1) throw ConfigError("T must be >= 1");
  if (cfg.tau_u() > cfg.T) throw ConfigError("psi*K exceeds T");
  if (cfg.d < 1) throw ConfigError("d must be >= 1");
  if (cfg.n % cfg.d != 0) throw ConfigError("n not divisible by d");
  if (!(cfg.B > 0)) throw ConfigError("B must be > 0");
  if (!(cfg.Rc > 0)) throw ConfigError("Rc must be > 0");
  if (!(cfg.beta > 0)) throw ConfigError("beta must be > 0");
  if (!(cfg.alpha1 >= 0 && cfg.alpha1 <= 1)) throw ConfigError("alpha1 must be in [0, 1]");
  if (!(cfg.alpha2 >= 0 && cfg.alpha2 <= 1)) throw ConfigError("alpha2 must be in [0, 1]");
  if (!(cfg.p_u > 0)) throw ConfigError("p_u must be > 0");
  if (!(cfg.p_d > 0)) throw ConfigError("p_d must be > 0");
  if (!(cfg.sigma2 > 0)) throw ConfigError("sigma2 must be > 0");
}

void validate_config(const SystemConfig& cfg, const PowerModel& pm) {
  validate_config(cfg);
  if (!(pm.P_FIX > 0)) throw ConfigError("P_FIX must be > 0");
  if (!(pm.P_RRH > 0)) throw ConfigError("P_RRH must be > 0");
  if (!(pm.P_0 > 0)) throw ConfigError("P_0 must be > 0");
  if (!(pm.P_BT > 0)) throw ConfigError("P_BT must be > 0");
  if (!(pm.zeta > 0 && pm.zeta <= 1)) throw ConfigError("zeta must be in (0, 1]");
}

double near_gain_scale(const SystemConfig& cfg) {
  return std::pow(static_cast<double>(cfg.M), cfg.iota / 2.0);
}

DerivedScalars derived_scalars(const SystemConfig& cfg) {
  DerivedScalars ds;
  const double M = cfg.M;
  const double co_pilot = static_cast<double>(cfg.L) / cfg.psi - 1.0;
  ds.tau_u = cfg.tau_u();
  ds.L_bar1 = near_gain_scale(cfg) + cfg.alpha2 * co_pilot;
  ds.L_bar2 = cfg.alpha1 + cfg.alpha2 * co_pilot;
  ds.xi = std::pow(M, cfg.iota / 2.0 - 1.0) + (1.0 - 1.0 / M) * cfg.alpha1 +
          cfg.alpha2 * (cfg.L - 1);

  const double inf = std::numeric_limits<double>::infinity();
  if (cfg.pilot_noise_mode == PilotNoiseMode::kNegligible) {
    ds.nu1 = 1.0 / (ds.L_bar1 * cfg.beta);
    ds.nu2 = ds.L_bar2 > 0 ? 1.0 / (ds.L_bar2 * cfg.beta) : inf;
  } else {
    const double e = cfg.p_u * ds.tau_u * cfg.d;
    ds.nu1 = e / (cfg.sigma2 + e * ds.L_bar1 * cfg.beta);
    ds.nu2 = e / (cfg.sigma2 + e * ds.L_bar2 * cfg.beta);
  }
  return ds;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace dasee
