/**
 * @file general_de.hpp
 * @brief Deterministic-equivalent SINR for arbitrary per-link correlation
 * matrices R_{lmjk} with MMSE channel estimation and MRT precoding.
 *
 * This is the matrix route. For the simplified model it reduces to the
 * closed form in asymptotics.hpp, which the tests exploit.
 */
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dasee/gains.hpp"
#include "dasee/steering.hpp"

namespace dasee {

/// R_{lmjk}: covariance of the channel from RRH m of cell l to user k of cell j.
class CorrelationSet {
 public:
  CorrelationSet(int L, int M, int K, int n, std::vector<int> pilot_group);

  int L() const { return L_; }
  int M() const { return M_; }
  int K() const { return K_; }
  int n() const { return n_; }
  const std::vector<int>& pilot_group() const { return pilot_group_; }
  bool shares_pilot(int l, int j) const { return pilot_group_[l] == pilot_group_[j]; }

  Eigen::MatrixXcd& R(int l, int m, int j, int k) { return R_[index(l, m, j, k)]; }
  const Eigen::MatrixXcd& R(int l, int m, int j, int k) const { return R_[index(l, m, j, k)]; }

  /// Throws ConfigError on empty sets, wrong dimensions, or non-Hermitian
  /// matrices.
  void validate() const;

 private:
  std::size_t index(int l, int m, int j, int k) const {
    return ((static_cast<std::size_t>(l) * M_ + m) * L_ + j) * K_ + k;
  }

  int L_, M_, K_, n_;
  std::vector<int> pilot_group_;
  std::vector<Eigen::MatrixXcd> R_;
};

/// R_{lmjk} = beta_{lmjk} (n / P) A A^H.
CorrelationSet correlation_set_from_gains(const LargeScaleGains& gains, const SteeringMatrix& A,
                                          int psi);

struct PilotParams {
  double p_u = 0.0;
  int tau_u = 0;
  double sigma2 = 0.0;
};

/// Phi_{lmjk} = R_{lmlk} Q_{lmlk} R_{lmjk}, with
/// Q_{lmlk} = (sigma^2 / (p_u tau_u) I + sum_{j' sharing l's pilots} R_{lmj'k})^-1.
/// j == l gives the covariance of the MMSE estimate.
Eigen::MatrixXcd phi_matrix(const CorrelationSet& corr, int l, int m, int j, int k,
                            const PilotParams& pilot);

/// Per-user SINR, indexed j * K + k.
std::vector<double> general_deterministic_sinr(const CorrelationSet& corr, double p_d,
                                               const PilotParams& pilot);

}  // namespace dasee
