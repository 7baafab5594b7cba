#include "dasee/optimizer.hpp"

#include <cmath>
#include <limits>

#include "dasee/calibration.hpp"

namespace dasee::opt {

long floor_ceil_select(double x, const IntegerObjective& eval) {
  if (!(x >= 1.0)) throw std::invalid_argument("floor_ceil_select needs x >= 1");
  const long lo = static_cast<long>(std::floor(x));
  const long hi = static_cast<long>(std::ceil(x));
  const std::optional<double> e_hi = eval(hi);
  if (lo == hi) {
    if (!e_hi) throw InfeasibleProblemError("no feasible integer next to " + std::to_string(x));
    return hi;
  }
  const std::optional<double> e_lo = eval(lo);
  if (!e_lo && !e_hi) throw InfeasibleProblemError("no feasible integer next to " + std::to_string(x));
  if (!e_lo) return hi;
  if (!e_hi) return lo;
  return *e_lo > *e_hi ? lo : hi;
}

long exhaustive_argmax(const IntegerObjective& eval, long lo, long hi) {
  if (lo > hi) throw std::invalid_argument("empty scan range");
  std::optional<long> best;
  double best_ee = -std::numeric_limits<double>::infinity();
  for (long x = lo; x <= hi; ++x) {
    const std::optional<double> e = eval(x);
    if (e && (!best || *e > best_ee)) {
      best = x;
      best_ee = *e;
    }
  }
  if (!best) throw InfeasibleProblemError("every point of the scan range is infeasible");
  return *best;
}

namespace {

IntegerObjective antenna_objective(const SystemConfig& cfg, const PowerModel& pm, double gamma) {
  return [cfg, pm, gamma](long n) { return try_energy_efficiency(cfg, pm, gamma, static_cast<double>(n)); };
}

void fill_target_rate(OptimizationResult& res, const SystemConfig& cfg, const PowerModel& pm,
                      double gamma, double n) {
  const EeEvaluation ev = evaluate_target_rate(cfg, pm, gamma, n);
  res.ee = ev.ee;
  res.p_d = ev.p_d;
  res.P_total = ev.P_total;
}

OptimizationResult round_antennas(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                                  double n_cont) {
  OptimizationResult res;
  res.M = cfg.M;
  res.K = cfg.K;
  res.continuous_optimum = n_cont;
  res.window_lo = min_antennas(cfg, sinr_breakdown(cfg), gamma);
  res.n = floor_ceil_select(std::max(n_cont, 1.0), antenna_objective(cfg, pm, gamma));
  fill_target_rate(res, cfg, pm, gamma, static_cast<double>(*res.n));
  return res;
}

SystemConfig negligible(SystemConfig cfg) {
  cfg.pilot_noise_mode = PilotNoiseMode::kNegligible;
  return cfg;
}

}  // namespace

OptimizationResult optimal_n(const SystemConfig& cfg, const PowerModel& pm, double gamma) {
  validate_config(cfg, pm);
  const SinrBreakdown brk = sinr_breakdown(cfg);
  const double c = rate_margin(brk, gamma);
  if (!(c > 0)) throw RateUnachievableError(pc_rate_ceiling(brk));
  const double data = cfg.data_fraction() / pm.zeta;
  const double n_cont = std::sqrt(data * cfg.sigma2 * cfg.K / (c * cfg.M * pm.P_RRH)) +
                        brk.I_MU_scaled / c;
  return round_antennas(cfg, pm, gamma, n_cont);
}

OptimizationResult optimal_n_no_pc(const SystemConfig& cfg, const PowerModel& pm, double gamma) {
  SystemConfig nopc = negligible(cfg);
  nopc.psi = cfg.L;
  validate_config(nopc, pm);
  const double M = nopc.M;
  const double gain = (std::pow(M, nopc.iota / 2.0) + (M - 1.0) * nopc.alpha1) / (std::exp2(gamma) - 1.0);
  const double xi = derived_scalars(nopc).xi;
  const double data = nopc.data_fraction() / pm.zeta;
  const double n_cont =
      std::sqrt(data * nopc.sigma2 * nopc.K / (nopc.beta * gain * M * pm.P_RRH)) +
      nopc.d * nopc.K * xi / gain;
  return round_antennas(nopc, pm, gamma, n_cont);
}

OptimizationResult optimal_n_exhaustive(const SystemConfig& cfg, const PowerModel& pm,
                                        double gamma, long n_max) {
  validate_config(cfg, pm);
  const SinrBreakdown brk = sinr_breakdown(cfg);
  OptimizationResult res;
  res.M = cfg.M;
  res.K = cfg.K;
  res.window_lo = min_antennas(cfg, brk, gamma);
  res.window_hi = n_max;
  res.n = exhaustive_argmax(antenna_objective(cfg, pm, gamma), 1, n_max);
  fill_target_rate(res, cfg, pm, gamma, static_cast<double>(*res.n));
  return res;
}

namespace {

struct UserTerms {
  double c = 0.0;    // S / (2^gamma - 1) - I_PC, K-free in negligible mode
  double mu1 = 0.0;  // n c
  double mu2 = 0.0;
  double slope = 0.0;  // d beta xi: I_MU' per user
};

UserTerms user_terms(const SystemConfig& cfg, const PowerModel& pm, double gamma, double n) {
  const SystemConfig neg = negligible(cfg);
  const SinrBreakdown brk = sinr_breakdown(neg);
  UserTerms t;
  t.c = rate_margin(brk, gamma);
  if (!(t.c > 0)) throw RateUnachievableError(pc_rate_ceiling(brk));
  t.mu1 = n * t.c;
  t.mu2 = cfg.T / gamma * (pm.P_FIX + n * cfg.M * pm.P_RRH + cfg.M * pm.P_0);
  t.slope = cfg.d * cfg.beta * derived_scalars(neg).xi;
  return t;
}

}  // namespace

double k_upper_bound(const SystemConfig& cfg, double gamma, double n) {
  const SinrBreakdown brk = sinr_breakdown(negligible(cfg));
  const double c = rate_margin(brk, gamma);
  if (!(c > 0)) throw RateUnachievableError(pc_rate_ceiling(brk));
  const double slope = cfg.d * cfg.beta * derived_scalars(cfg).xi;
  return std::min(static_cast<double>(cfg.T) / cfg.psi, n * c / slope);
}

double z_of_K(const SystemConfig& cfg, const PowerModel& pm, double gamma, double n, double K) {
  const UserTerms t = user_terms(cfg, pm, gamma, n);
  const double hi = std::min(static_cast<double>(cfg.T) / cfg.psi, t.mu1 / t.slope);
  if (!(K > 0 && K < hi)) throw std::domain_error("K outside the open interval (0, " + std::to_string(hi) + ")");
  const double psi = cfg.psi, T = cfg.T;
  const double gap = t.mu1 - t.slope * K;
  const double data = (T - K * psi) * K;
  return t.mu2 * (2.0 * K * psi - T) * gap * gap +
         cfg.sigma2 / (pm.zeta * gamma) * t.slope * data * data;
}

std::optional<double> ee_of_users(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                                  double n, double K) {
  const UserTerms t = user_terms(cfg, pm, gamma, n);
  const double gap = t.mu1 - t.slope * K;
  if (!(K > 0) || K * cfg.psi > cfg.T || !(gap > 0)) return std::nullopt;
  const double frac = (cfg.T - cfg.psi * K) / cfg.T;
  const double p_d = cfg.sigma2 / gap;
  const double se = frac * K * gamma;
  const double P_total = pm.P_FIX + n * cfg.M * pm.P_RRH + frac * p_d / pm.zeta * K +
                         cfg.M * (pm.P_0 + pm.P_BT * cfg.B * se);
  return cfg.B * se / P_total;
}

OptimizationResult optimal_k(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                             double n) {
  validate_config(cfg, pm);
  const double hi_bound = k_upper_bound(cfg, gamma, n);

  // Bracket strictly inside the open interval.
  const double edge = 1e-9 * hi_bound;
  double lo = edge, hi = hi_bound - edge;
  if (!(z_of_K(cfg, pm, gamma, n, lo) < 0 && z_of_K(cfg, pm, gamma, n, hi) > 0))
    throw InfeasibleProblemError("z(K) has no sign change on the feasible interval");
  while (hi - lo >= 1e-3) {
    const double mid = 0.5 * (lo + hi);
    (z_of_K(cfg, pm, gamma, n, mid) < 0 ? lo : hi) = mid;
  }
  const double k_cont = 0.5 * (lo + hi);

  auto eval = [&](long K) { return ee_of_users(cfg, pm, gamma, n, static_cast<double>(K)); };
  OptimizationResult res;
  res.M = cfg.M;
  res.n = std::lround(n);
  res.continuous_optimum = k_cont;
  res.window_lo = 1;
  res.window_hi = static_cast<long>(std::ceil(hi_bound)) - 1;
  res.K = floor_ceil_select(std::max(k_cont, 1.0), eval);

  const UserTerms t = user_terms(cfg, pm, gamma, n);
  const double K = static_cast<double>(*res.K);
  res.ee = *eval(*res.K);
  res.p_d = cfg.sigma2 / (t.mu1 - t.slope * K);
  res.P_total = cfg.B * ((cfg.T - cfg.psi * K) / cfg.T) * K * gamma / res.ee;
  return res;
}

OptimizationResult optimal_k_exhaustive(const SystemConfig& cfg, const PowerModel& pm,
                                        double gamma, double n) {
  validate_config(cfg, pm);
  const long k_max = cfg.T / cfg.psi;
  auto eval = [&](long K) -> std::optional<double> {
    SystemConfig c = cfg;
    c.K = static_cast<int>(K);
    if (c.tau_u() >= c.T) return std::nullopt;
    return try_energy_efficiency(c, pm, gamma, n);
  };
  OptimizationResult res;
  res.M = cfg.M;
  res.n = std::lround(n);
  res.window_lo = 1;
  res.window_hi = k_max;
  res.K = exhaustive_argmax(eval, 1, k_max);
  SystemConfig best = cfg;
  best.K = static_cast<int>(*res.K);
  fill_target_rate(res, best, pm, gamma, n);
  return res;
}

std::vector<MScanEntry> m_scan(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                               long M_max, AntennaPolicy policy, const GainPolicy& gains) {
  if (M_max < 1) throw ConfigError("M_max must be >= 1");
  std::vector<MScanEntry> out;
  for (long M = 1; M <= M_max; ++M) {
    SystemConfig c = cfg;
    c.M = static_cast<int>(M);
    if (gains.recalibrate) {
      const calib::Layout layout = calib::build_layout(c.M, c.Rc, c.L, gains.cell_spacing);
      const calib::CalibrationResult fit = calib::calibrate(layout, c.iota, c.K, gains.drops, gains.seed);
      c.beta = fit.beta;
      c.alpha1 = std::min(fit.alpha1, 1.0);
      c.alpha2 = std::min(fit.alpha2, 1.0);
    }
    MScanEntry e;
    e.M = M;
    e.beta = c.beta;
    e.alpha1 = c.alpha1;
    e.alpha2 = c.alpha2;
    try {
      if (policy == AntennaPolicy::kFixed) {
        e.n = c.n;
        const EeEvaluation ev = evaluate_target_rate(c, pm, gamma, c.n);
        e.ee = ev.ee;
        e.p_d = ev.p_d;
        e.P_total = ev.P_total;
      } else {
        const OptimizationResult r = optimal_n(c, pm, gamma);
        e.n = *r.n;
        e.ee = r.ee;
        e.p_d = r.p_d;
        e.P_total = r.P_total;
      }
      e.feasible = true;
    } catch (const std::domain_error&) {
      e.feasible = false;
    }
    out.push_back(e);
  }
  return out;
}

OptimizationResult optimal_m(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                             long M_max, AntennaPolicy policy, const GainPolicy& gains) {
  const std::vector<MScanEntry> scan = m_scan(cfg, pm, gamma, M_max, policy, gains);
  const MScanEntry* best = nullptr;
  for (const MScanEntry& e : scan)
    if (e.feasible && (!best || e.ee > best->ee)) best = &e;
  if (!best) throw InfeasibleProblemError("no feasible M in [1, " + std::to_string(M_max) + "]");
  OptimizationResult res;
  res.M = best->M;
  res.n = best->n;
  res.K = cfg.K;
  res.ee = best->ee;
  res.p_d = best->p_d;
  res.P_total = best->P_total;
  res.window_lo = 1;
  res.window_hi = M_max;
  return res;
}

}  // namespace dasee::opt
