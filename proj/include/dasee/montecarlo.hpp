/**
 * @file montecarlo.hpp
 * @brief Finite-n link-level simulation of the multi-cell downlink: channel
 * draws, MMSE estimation from contaminated pilots, MRT with per-cell power
 * normalization, and empirical SINR / SE / EE.
 *
 * Channels follow g_{lmjk} = sqrt(beta_{lmjk} n / P) A h with h ~ CN(0, I_P).
 * Expectations in the SINR expression are replaced by batch means over the
 * realizations of one run; lambda_l is estimated from the same batch.
 */
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dasee/asymptotics.hpp"
#include "dasee/gains.hpp"
#include "dasee/steering.hpp"

namespace dasee::mc {

/// One channel draw.
struct ChannelRealization {
  int L = 0, M = 0, K = 0;
  std::uint64_t seed = 0;
  /// Per (l, m): n x (L K) true channels, column j * K + k is g_{lmjk}.
  std::vector<Eigen::MatrixXcd> g;
  /// Per (j, m): n x K pilot-phase noise z_{jmk}.
  std::vector<Eigen::MatrixXcd> z;
  /// Per (j, m): n x K MMSE estimates of g_{jmjk}.
  std::vector<Eigen::MatrixXcd> g_hat;

  const Eigen::MatrixXcd& channels(int l, int m) const { return g[l * M + m]; }
  const Eigen::MatrixXcd& estimates(int j, int m) const { return g_hat[j * M + m]; }
  const Eigen::MatrixXcd& pilot_noise(int j, int m) const { return z[j * M + m]; }
};

ChannelRealization generate_realization(const SystemConfig& cfg, const LargeScaleGains& gains,
                                        const SteeringMatrix& A, std::uint64_t seed);

/// MRT precoders w_{lmi} = conj(g_hat_{lmli}) for one realization, with the
/// cell normalizations supplied by the caller.
struct PrecoderSet {
  int L = 0, M = 0;
  std::vector<Eigen::MatrixXcd> w;  ///< per (l, m): n x K
  std::vector<double> lambda;       ///< per cell

  const Eigen::MatrixXcd& at(int l, int m) const { return w[l * M + m]; }
};

PrecoderSet mrt_precoders(const ChannelRealization& real, std::vector<double> lambda);

/// Batch estimate of lambda_l = K / E{sum_{m,i} ||w_{lmi}||^2}.
std::vector<double> estimate_normalization(const SystemConfig& cfg, const LargeScaleGains& gains,
                                           const SteeringMatrix& A, int realizations,
                                           std::uint64_t seed);

/// Batch average of (p_d / K) sum_m x^H x per cell with the given lambda.
/// Equals p_d in expectation when lambda comes from an independent batch.
std::vector<double> average_transmit_power(const SystemConfig& cfg, const LargeScaleGains& gains,
                                           const SteeringMatrix& A,
                                           const std::vector<double>& lambda, int realizations,
                                           std::uint64_t seed);

struct SinrEstimate {
  int L = 0, K = 0;
  std::vector<double> sinr;     ///< per user, j * K + k
  std::vector<double> cell_se;  ///< per cell, bit/s/Hz
  std::vector<double> lambda;   ///< per cell
  double mean_cell_se = 0.0;
};

/// Empirical SINR and SE from `realizations` draws. Deterministic in
/// (inputs, seed, realizations) regardless of thread count.
SinrEstimate empirical_sinr_rate(const SystemConfig& cfg, const LargeScaleGains& gains,
                                 const SteeringMatrix& A, int realizations, std::uint64_t seed,
                                 unsigned threads = 0);

/// Simplified-model gains and a DFT steering matrix built from cfg.
SinrEstimate empirical_sinr_rate(const SystemConfig& cfg, int realizations, std::uint64_t seed,
                                 unsigned threads = 0);

/// B * SE / P_total at the configured fixed p_d, SE averaged over cells.
EeEvaluation empirical_ee(const SystemConfig& cfg, const PowerModel& pm, int realizations,
                          std::uint64_t seed, unsigned threads = 0);

EeEvaluation empirical_ee(const SystemConfig& cfg, const PowerModel& pm,
                          const LargeScaleGains& gains, const SteeringMatrix& A, int realizations,
                          std::uint64_t seed, unsigned threads = 0);

}  // namespace dasee::mc
