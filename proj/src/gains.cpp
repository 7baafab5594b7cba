#include "dasee/gains.hpp"

namespace dasee {

LargeScaleGains::LargeScaleGains(int L, int M, int K)
    : L_(L), M_(M), K_(K), beta_(static_cast<std::size_t>(L) * M * L * K, 0.0) {}

std::vector<int> balanced_nearest_rrh(int K, int M) {
  std::vector<int> nearest(K);
  for (int k = 0; k < K; ++k) nearest[k] = k % M;
  return nearest;
}

LargeScaleGains analytic_gains(const SystemConfig& cfg, const std::vector<int>& nearest) {
  if (static_cast<int>(nearest.size()) != cfg.K)
    throw ConfigError("nearest-RRH assignment must have K entries");
  LargeScaleGains gains(cfg.L, cfg.M, cfg.K);
  const double near = near_gain_scale(cfg) * cfg.beta;
  for (int l = 0; l < cfg.L; ++l)
    for (int m = 0; m < cfg.M; ++m)
      for (int j = 0; j < cfg.L; ++j)
        for (int k = 0; k < cfg.K; ++k) {
          double b = cfg.alpha2 * cfg.beta;
          if (l == j) b = (m == nearest[k]) ? near : cfg.alpha1 * cfg.beta;
          gains.at(l, m, j, k) = b;
        }
  return gains;
}

LargeScaleGains analytic_gains(const SystemConfig& cfg) {
  return analytic_gains(cfg, balanced_nearest_rrh(cfg.K, cfg.M));
}

std::vector<int> pilot_groups(int L, int psi) {
  std::vector<int> groups(L);
  for (int l = 0; l < L; ++l) groups[l] = l % psi;
  return groups;
}

}  // namespace dasee
