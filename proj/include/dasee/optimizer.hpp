/**
 * @file optimizer.hpp
 * @brief Energy-efficiency optimal antennas per RRH (closed form), users per
 * cell (bisection on the derivative numerator), and RRHs per cell (1-D search),
 * plus the exhaustive integer scans used to check them.
 */
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dasee/asymptotics.hpp"

namespace dasee::opt {

/// Integer -> EE, nullopt where the integer is infeasible.
using IntegerObjective = std::function<std::optional<double>(long)>;

struct OptimizationResult {
  std::optional<long> n;
  std::optional<long> K;
  std::optional<long> M;
  double continuous_optimum = 0.0;  ///< n° or K° before rounding; 0 for pure scans
  double ee = 0.0;                  ///< bits/Joule
  double p_d = 0.0;                 ///< W
  double P_total = 0.0;             ///< W
  long window_lo = 0;               ///< feasibility window of the rounded variable
  std::optional<long> window_hi;    ///< nullopt when unbounded
};

/// floor(x) if eval(floor x) > eval(ceil x), otherwise ceil(x); an infeasible
/// neighbour loses. Requires x >= 1. Throws InfeasibleProblemError if both
/// neighbours are infeasible.
long floor_ceil_select(double x, const IntegerObjective& eval);

/// Full scan of [lo, hi]; ties go to the smallest index.
long exhaustive_argmax(const IntegerObjective& eval, long lo, long hi);

/// Closed-form optimal antennas per RRH at cfg.M, cfg.K, using cfg's pilot
/// noise mode.
OptimizationResult optimal_n(const SystemConfig& cfg, const PowerModel& pm, double gamma);

/// Lower bound without pilot contamination: psi = L and negligible pilot
/// noise, evaluated from its own closed form.
OptimizationResult optimal_n_no_pc(const SystemConfig& cfg, const PowerModel& pm, double gamma);

/// Exhaustive counterpart of optimal_n over n in [1, n_max].
OptimizationResult optimal_n_exhaustive(const SystemConfig& cfg, const PowerModel& pm,
                                        double gamma, long n_max = 5000);

/// Numerator of d(1/eta)/dK for real K in (0, min(T/psi, mu1 / (d beta xi))).
/// Uses negligible pilot noise, where S and I_PC do not depend on K.
double z_of_K(const SystemConfig& cfg, const PowerModel& pm, double gamma, double n, double K);

/// Upper end of the open K interval, min(T/psi, mu1 / (d beta xi)).
double k_upper_bound(const SystemConfig& cfg, double gamma, double n);

/// EE as a function of a real user count (negligible pilot noise), the
/// objective behind z_of_K. nullopt outside the feasible interval.
std::optional<double> ee_of_users(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                                  double n, double K);

/// Bisection root of z_of_K (width < 1e-3), rounded by EE. cfg.K is ignored.
OptimizationResult optimal_k(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                             double n);

/// Exhaustive scan over integer K in [1, T/psi] using cfg's pilot noise mode.
OptimizationResult optimal_k_exhaustive(const SystemConfig& cfg, const PowerModel& pm,
                                        double gamma, double n);

enum class AntennaPolicy { kFixed, kOptimalPerM };

/// How (beta, alpha1, alpha2) follow M: held fixed (the nearest-RRH gain
/// still scales as M^(iota/2)), or refit from geometry for every M.
struct GainPolicy {
  bool recalibrate = false;
  int drops = 1000;
  std::uint64_t seed = 1;
  double cell_spacing = 2.0;
};

struct MScanEntry {
  long M = 0;
  bool feasible = false;
  long n = 0;
  double ee = 0.0;
  double p_d = 0.0;
  double P_total = 0.0;
  double beta = 0.0, alpha1 = 0.0, alpha2 = 0.0;
};

/// EE for every M in [1, M_max]. With kFixed, n = cfg.n.
std::vector<MScanEntry> m_scan(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                               long M_max, AntennaPolicy policy, const GainPolicy& gains = {});

/// Best entry of m_scan; ties go to the smaller M. Throws
/// InfeasibleProblemError when no M is feasible.
OptimizationResult optimal_m(const SystemConfig& cfg, const PowerModel& pm, double gamma,
                             long M_max, AntennaPolicy policy, const GainPolicy& gains = {});

}  // namespace dasee::opt
