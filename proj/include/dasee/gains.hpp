/**
 * @file gains.hpp
 * @brief Per-link large-scale fading table beta_{lmjk} (RRH m of cell l to
 * user k of cell j) and the pilot-sharing structure.
 */
#pragma once

#include <vector>

#include "dasee/config.hpp"

namespace dasee {

class LargeScaleGains {
 public:
  LargeScaleGains() = default;
  LargeScaleGains(int L, int M, int K);

  int L() const { return L_; }
  int M() const { return M_; }
  int K() const { return K_; }

  double& at(int l, int m, int j, int k) { return beta_[index(l, m, j, k)]; }
  double at(int l, int m, int j, int k) const { return beta_[index(l, m, j, k)]; }

 private:
  std::size_t index(int l, int m, int j, int k) const {
    return ((static_cast<std::size_t>(l) * M_ + m) * L_ + j) * K_ + k;
  }

  int L_ = 0, M_ = 0, K_ = 0;
  std::vector<double> beta_;
};

/// Nearest own-cell RRH of each user index: k mod M. Every RRH then serves as
/// nearest for floor(K/M) or ceil(K/M) users.
std::vector<int> balanced_nearest_rrh(int K, int M);

/// Gains of the simplified model: M^(iota/2) beta to the nearest own RRH,
/// alpha1 beta to other own RRHs, alpha2 beta to every RRH of other cells.
/// nearest[k] is the nearest RRH index of user k, shared by all cells.
LargeScaleGains analytic_gains(const SystemConfig& cfg, const std::vector<int>& nearest);
LargeScaleGains analytic_gains(const SystemConfig& cfg);

/// Pilot group of each cell (cells with equal value share pilot sequences).
std::vector<int> pilot_groups(int L, int psi);

}  // namespace dasee
