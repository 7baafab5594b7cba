#include "dasee/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dasee/errors.hpp"
#include "dasee/rng.hpp"

namespace dasee::mc {

namespace {

// Realizations per reduction chunk. Partial sums are combined in chunk order,
// which fixes the floating-point summation order for any thread count.
constexpr int kChunk = 8;

// One draw in the P-dimensional angular domain: since A^H A = I, the channel
// g = A h and the estimate g_hat = A h_hat satisfy g^T conj(g_hat) = h^T conj(h_hat),
// so the SINR statistics never need the n-dimensional vectors.
struct AngularDraw {
  std::vector<Eigen::MatrixXcd> h;      // per (l, m): P x LK, scaled by sqrt(beta n / P)
  std::vector<Eigen::MatrixXcd> h_hat;  // per (j, m): P x K
  std::vector<Eigen::MatrixXcd> z;      // per (j, m): n x K
};

void check_inputs(const SystemConfig& cfg, const LargeScaleGains& gains, const SteeringMatrix& A) {
  validate_config(cfg);
  if (gains.L() != cfg.L || gains.M() != cfg.M || gains.K() != cfg.K)
    throw ConfigError("gain table does not match the configuration");
  if (A.n() < 1 || A.P() < 1 || A.P() > A.n()) throw ConfigError("invalid steering matrix");
}

AngularDraw draw_angular(const SystemConfig& cfg, const LargeScaleGains& gains,
                         const SteeringMatrix& A, std::uint64_t seed) {
  const int L = cfg.L, M = cfg.M, K = cfg.K;
  const int n = A.n(), P = A.P();
  const double n_over_p = static_cast<double>(n) / P;
  RandomStream rng(seed);

  AngularDraw d;
  d.h.resize(static_cast<std::size_t>(L) * M);
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < M; ++m) {
      Eigen::MatrixXcd& H = d.h[l * M + m];
      H.resize(P, L * K);
      for (int j = 0; j < L; ++j)
        for (int k = 0; k < K; ++k) {
          const double s = std::sqrt(gains.at(l, m, j, k) * n_over_p);
          for (int p = 0; p < P; ++p) H(p, j * K + k) = s * rng.complex_normal();
        }
    }

  const double noise_sd = std::sqrt(cfg.sigma2);
  d.z.resize(static_cast<std::size_t>(L) * M);
  for (int j = 0; j < L; ++j)
    for (int m = 0; m < M; ++m) {
      Eigen::MatrixXcd& Z = d.z[j * M + m];
      Z.resize(n, K);
      for (int k = 0; k < K; ++k)
        for (int r = 0; r < n; ++r) Z(r, k) = noise_sd * rng.complex_normal();
    }

  // MMSE: g_hat = R Q y with R Q = c A A^H for the shared projector A A^H.
  const std::vector<int> group = pilot_groups(L, cfg.psi);
  const double pilot_gain = cfg.p_u * cfg.tau_u();
  const double noise_load = cfg.sigma2 / pilot_gain;
  const double inv_sqrt_pilot = 1.0 / std::sqrt(pilot_gain);
  d.h_hat.resize(static_cast<std::size_t>(L) * M);
  for (int j = 0; j < L; ++j)
    for (int m = 0; m < M; ++m) {
      const Eigen::MatrixXcd& H = d.h[j * M + m];
      Eigen::MatrixXcd Y = inv_sqrt_pilot * (A.A.adjoint() * d.z[j * M + m]);
      for (int k = 0; k < K; ++k) {
        double load = noise_load;
        for (int l = 0; l < L; ++l) {
          if (group[l] != group[j]) continue;
          Y.col(k) += H.col(l * K + k);
          load += gains.at(j, m, l, k) * n_over_p;
        }
        Y.col(k) *= gains.at(j, m, j, k) * n_over_p / load;
      }
      d.h_hat[j * M + m] = std::move(Y);
    }
  return d;
}

struct Partial {
  std::vector<std::complex<double>> own_sum;  // j * K + k
  std::vector<double> power_sum;              // (l * LK + j * K + k) * K + i
  std::vector<double> w_energy;               // per cell
};

Partial make_partial(int L, int K) {
  Partial p;
  p.own_sum.assign(static_cast<std::size_t>(L) * K, 0.0);
  p.power_sum.assign(static_cast<std::size_t>(L) * L * K * K, 0.0);
  p.w_energy.assign(L, 0.0);
  return p;
}

void accumulate(const SystemConfig& cfg, const AngularDraw& d, Partial& acc) {
  const int L = cfg.L, M = cfg.M, K = cfg.K;
  const int LK = L * K;
  for (int l = 0; l < L; ++l) {
    // a(jk, i) = sum_m g_{lmjk}^T w_{lmi}
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(LK, K);
    for (int m = 0; m < M; ++m) {
      const Eigen::MatrixXcd& H = d.h[l * M + m];
      const Eigen::MatrixXcd& Hh = d.h_hat[l * M + m];
      a.noalias() += H.transpose() * Hh.conjugate();
      acc.w_energy[l] += Hh.squaredNorm();
    }
    for (int jk = 0; jk < LK; ++jk)
      for (int i = 0; i < K; ++i)
        acc.power_sum[(static_cast<std::size_t>(l) * LK + jk) * K + i] += std::norm(a(jk, i));
    for (int k = 0; k < K; ++k) acc.own_sum[l * K + k] += a(l * K + k, k);
  }
}

void add_into(Partial& dst, const Partial& src) {
  for (std::size_t i = 0; i < dst.own_sum.size(); ++i) dst.own_sum[i] += src.own_sum[i];
  for (std::size_t i = 0; i < dst.power_sum.size(); ++i) dst.power_sum[i] += src.power_sum[i];
  for (std::size_t i = 0; i < dst.w_energy.size(); ++i) dst.w_energy[i] += src.w_energy[i];
}

template <typename Fn>
void for_each_chunk(int chunks, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(chunks, 1)));
  if (threads <= 1) {
    for (int c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int c = next++; c < chunks; c = next++) fn(c);
    });
  for (auto& th : pool) th.join();
}

Partial run_batch(const SystemConfig& cfg, const LargeScaleGains& gains, const SteeringMatrix& A,
                  int realizations, std::uint64_t seed, unsigned threads) {
  if (realizations < 1) throw ConfigError("realizations must be >= 1");
  check_inputs(cfg, gains, A);
  const int chunks = (realizations + kChunk - 1) / kChunk;
  std::vector<Partial> partials(chunks);
  for_each_chunk(chunks, threads, [&](int c) {
    Partial p = make_partial(cfg.L, cfg.K);
    const int end = std::min(realizations, (c + 1) * kChunk);
    for (int r = c * kChunk; r < end; ++r)
      accumulate(cfg, draw_angular(cfg, gains, A, substream_seed(seed, r)), p);
    partials[c] = std::move(p);
  });
  Partial total = make_partial(cfg.L, cfg.K);
  for (const Partial& p : partials) add_into(total, p);
  return total;
}

}  // namespace

ChannelRealization generate_realization(const SystemConfig& cfg, const LargeScaleGains& gains,
                                        const SteeringMatrix& A, std::uint64_t seed) {
  check_inputs(cfg, gains, A);
  AngularDraw d = draw_angular(cfg, gains, A, seed);
  ChannelRealization real;
  real.L = cfg.L;
  real.M = cfg.M;
  real.K = cfg.K;
  real.seed = seed;
  real.g.reserve(d.h.size());
  for (const auto& H : d.h) real.g.push_back(A.A * H);
  real.g_hat.reserve(d.h_hat.size());
  for (const auto& Hh : d.h_hat) real.g_hat.push_back(A.A * Hh);
  real.z = std::move(d.z);
  return real;
}

PrecoderSet mrt_precoders(const ChannelRealization& real, std::vector<double> lambda) {
  if (static_cast<int>(lambda.size()) != real.L)
    throw ConfigError("need one normalization per cell");
  PrecoderSet ps;
  ps.L = real.L;
  ps.M = real.M;
  ps.lambda = std::move(lambda);
  ps.w.reserve(real.g_hat.size());
  for (const auto& Gh : real.g_hat) ps.w.push_back(Gh.conjugate());
  return ps;
}

std::vector<double> estimate_normalization(const SystemConfig& cfg, const LargeScaleGains& gains,
                                           const SteeringMatrix& A, int realizations,
                                           std::uint64_t seed) {
  if (realizations < 1) throw ConfigError("realizations must be >= 1");
  check_inputs(cfg, gains, A);
  std::vector<double> energy(cfg.L, 0.0);
  for (int r = 0; r < realizations; ++r) {
    const AngularDraw d = draw_angular(cfg, gains, A, substream_seed(seed, r));
    for (int l = 0; l < cfg.L; ++l)
      for (int m = 0; m < cfg.M; ++m) energy[l] += d.h_hat[l * cfg.M + m].squaredNorm();
  }
  std::vector<double> lambda(cfg.L);
  for (int l = 0; l < cfg.L; ++l) lambda[l] = cfg.K / (energy[l] / realizations);
  return lambda;
}

std::vector<double> average_transmit_power(const SystemConfig& cfg, const LargeScaleGains& gains,
                                           const SteeringMatrix& A,
                                           const std::vector<double>& lambda, int realizations,
                                           std::uint64_t seed) {
  if (realizations < 1) throw ConfigError("realizations must be >= 1");
  check_inputs(cfg, gains, A);
  std::vector<double> power(cfg.L, 0.0);
  for (int r = 0; r < realizations; ++r) {
    const std::uint64_t s = substream_seed(seed, r);
    const ChannelRealization real = generate_realization(cfg, gains, A, s);
    const PrecoderSet ps = mrt_precoders(real, lambda);
    // Unit-power symbols s_{lmi} drawn independently of the channel.
    RandomStream sym(substream_seed(~s, 0));
    for (int l = 0; l < cfg.L; ++l) {
      double acc = 0.0;
      for (int m = 0; m < cfg.M; ++m) {
        Eigen::VectorXcd symbols(cfg.K);
        for (int i = 0; i < cfg.K; ++i) symbols(i) = sym.complex_normal();
        const Eigen::VectorXcd x = std::sqrt(ps.lambda[l]) * (ps.at(l, m) * symbols);
        acc += x.squaredNorm();
      }
      power[l] += cfg.p_d / cfg.K * acc;
    }
  }
  for (double& p : power) p /= realizations;
  return power;
}

SinrEstimate empirical_sinr_rate(const SystemConfig& cfg, const LargeScaleGains& gains,
                                 const SteeringMatrix& A, int realizations, std::uint64_t seed,
                                 unsigned threads) {
  const Partial tot = run_batch(cfg, gains, A, realizations, seed, threads);
  const int L = cfg.L, K = cfg.K, LK = L * K;
  const double R = realizations;

  SinrEstimate est;
  est.L = L;
  est.K = K;
  est.lambda.resize(L);
  for (int l = 0; l < L; ++l) est.lambda[l] = K / (tot.w_energy[l] / R);

  auto mean_power = [&](int l, int jk, int i) {
    return tot.power_sum[(static_cast<std::size_t>(l) * LK + jk) * K + i] / R;
  };

  est.sinr.resize(LK);
  est.cell_se.assign(L, 0.0);
  for (int j = 0; j < L; ++j) {
    for (int k = 0; k < K; ++k) {
      const int jk = j * K + k;
      const std::complex<double> mean_gain = tot.own_sum[jk] / R;
      const double signal = est.lambda[j] * std::norm(mean_gain);
      const double var = mean_power(j, jk, k) - std::norm(mean_gain);
      double sci = 0.0;
      for (int i = 0; i < K; ++i)
        if (i != k) sci += mean_power(j, jk, i);
      sci *= est.lambda[j];
      double ici = 0.0;
      for (int l = 0; l < L; ++l) {
        if (l == j) continue;
        double acc = 0.0;
        for (int i = 0; i < K; ++i) acc += mean_power(l, jk, i);
        ici += est.lambda[l] * acc;
      }
      const double sinr = signal / (est.lambda[j] * var + sci + ici + cfg.sigma2 / cfg.p_d);
      est.sinr[jk] = sinr;
      est.cell_se[j] += std::log2(1.0 + sinr);
    }
    est.cell_se[j] *= cfg.data_fraction();
  }
  double acc = 0.0;
  for (double se : est.cell_se) acc += se;
  est.mean_cell_se = acc / L;
  return est;
}

SinrEstimate empirical_sinr_rate(const SystemConfig& cfg, int realizations, std::uint64_t seed,
                                 unsigned threads) {
  validate_config(cfg);
  const SteeringMatrix A = steering_matrix(cfg.n, cfg.n / cfg.d);
  return empirical_sinr_rate(cfg, analytic_gains(cfg), A, realizations, seed, threads);
}

EeEvaluation empirical_ee(const SystemConfig& cfg, const PowerModel& pm,
                          const LargeScaleGains& gains, const SteeringMatrix& A, int realizations,
                          std::uint64_t seed, unsigned threads) {
  const SinrEstimate est = empirical_sinr_rate(cfg, gains, A, realizations, seed, threads);
  EeEvaluation ev;
  ev.p_d = cfg.p_d;
  ev.cell_se = est.mean_cell_se;
  ev.P_total = total_power_for_se(cfg, pm, A.n(), cfg.p_d, ev.cell_se);
  ev.ee = cfg.B * ev.cell_se / ev.P_total;
  return ev;
}

EeEvaluation empirical_ee(const SystemConfig& cfg, const PowerModel& pm, int realizations,
                          std::uint64_t seed, unsigned threads) {
  validate_config(cfg, pm);
  const SteeringMatrix A = steering_matrix(cfg.n, cfg.n / cfg.d);
  return empirical_ee(cfg, pm, analytic_gains(cfg), A, realizations, seed, threads);
}

}  // namespace dasee::mc
