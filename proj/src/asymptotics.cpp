#include "dasee/asymptotics.hpp"

#include <cmath>
#include <limits>

namespace dasee {

SinrBreakdown sinr_breakdown(const SystemConfig& cfg) {
  const DerivedScalars ds = derived_scalars(cfg);
  const double M = cfg.M;
  const double near = near_gain_scale(cfg);
  const double b2 = cfg.beta * cfg.beta;

  // The other-RRH terms vanish for M = 1 or alpha1 = 0; nu2 may be infinite then.
  const bool other_rrh = cfg.M > 1 && cfg.alpha1 > 0;
  const double own = near * near * ds.nu1 + (other_rrh ? (M - 1) * cfg.alpha1 * cfg.alpha1 * ds.nu2 : 0.0);
  const double cross = near * ds.nu1 + (other_rrh ? (M - 1) * cfg.alpha1 * ds.nu2 : 0.0);

  SinrBreakdown brk;
  brk.S = b2 * own;
  brk.I_PC = b2 * cfg.alpha2 * (ds.L_bar1 - near) * cross * cross / own;
  brk.I_MU_scaled = cfg.beta * cfg.d * cfg.K * ds.xi;
  return brk;
}

double deterministic_sinr_simplified(const SystemConfig& cfg, const SinrBreakdown& brk,
                                     double n, double p_d) {
  return brk.S / (cfg.sigma2 / (p_d * n) + brk.I_PC + brk.I_MU(n));
}

double pc_rate_ceiling(const SinrBreakdown& brk) {
  if (brk.I_PC <= 0) return std::numeric_limits<double>::infinity();
  return std::log2(1.0 + brk.S / brk.I_PC);
}

double rate_margin(const SinrBreakdown& brk, double gamma) {
  return brk.S / (std::exp2(gamma) - 1.0) - brk.I_PC;
}

long min_antennas(const SystemConfig&, const SinrBreakdown& brk, double gamma) {
  const double c = rate_margin(brk, gamma);
  if (!(c > 0)) throw RateUnachievableError(pc_rate_ceiling(brk));
  return static_cast<long>(std::floor(brk.I_MU_scaled / c)) + 1;
}

double required_transmit_power(const SystemConfig& cfg, const SinrBreakdown& brk,
                               double gamma, double n) {
  const double c = rate_margin(brk, gamma);
  if (!(c > 0)) throw RateUnachievableError(pc_rate_ceiling(brk));
  const double den = n * c - brk.I_MU_scaled;
  if (!(den > 0)) throw InfeasibleAntennasError(n, min_antennas(cfg, brk, gamma));
  return cfg.sigma2 / den;
}

double total_power_for_se(const SystemConfig& cfg, const PowerModel& pm, double n,
                          double p_d, double cell_se) {
  const double M = cfg.M;
  return pm.P_FIX + n * M * pm.P_RRH + cfg.data_fraction() * (p_d / pm.zeta) * cfg.K +
         M * (pm.P_0 + pm.P_BT * cfg.B * cell_se);
}

double total_power(const SystemConfig& cfg, const PowerModel& pm, double gamma, double n,
                   double p_d) {
  return total_power_for_se(cfg, pm, n, p_d, cfg.data_fraction() * cfg.K * gamma);
}

EeEvaluation evaluate_target_rate(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                                  double n) {
  EeEvaluation ev;
  ev.cell_se = cfg.data_fraction() * cfg.K * gamma;
  if (cfg.tau_u() >= cfg.T) {
    // No data symbols left: nothing is transmitted and nothing is delivered.
    ev.P_total = total_power_for_se(cfg, pm, n, 0.0, 0.0);
    return ev;
  }
  const SinrBreakdown brk = sinr_breakdown(cfg);
  ev.p_d = required_transmit_power(cfg, brk, gamma, n);
  ev.P_total = total_power_for_se(cfg, pm, n, ev.p_d, ev.cell_se);
  ev.ee = cfg.B * ev.cell_se / ev.P_total;
  return ev;
}

double energy_efficiency(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                         double n) {
  return evaluate_target_rate(cfg, pm, gamma, n).ee;
}

std::optional<double> try_energy_efficiency(const SystemConfig& cfg, const PowerModel& pm,
                                            double gamma, double n) {
  if (cfg.tau_u() >= cfg.T) return 0.0;
  const SinrBreakdown brk = sinr_breakdown(cfg);
  const double c = rate_margin(brk, gamma);
  if (!(c > 0) || !(n * c - brk.I_MU_scaled > 0)) return std::nullopt;
  return energy_efficiency(cfg, pm, gamma, n);
}

EeEvaluation evaluate_fixed_power(const SystemConfig& cfg, const PowerModel& pm, double n) {
  EeEvaluation ev;
  ev.p_d = cfg.p_d;
  const SinrBreakdown brk = sinr_breakdown(cfg);
  const double sinr = deterministic_sinr_simplified(cfg, brk, n, cfg.p_d);
  ev.cell_se = cfg.data_fraction() * cfg.K * std::log2(1.0 + sinr);
  ev.P_total = total_power_for_se(cfg, pm, n, cfg.p_d, ev.cell_se);
  ev.ee = cfg.B * ev.cell_se / ev.P_total;
  return ev;
}

}  // namespace dasee
