#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dasee/general_de.hpp"
#include "dasee/montecarlo.hpp"
#include "dasee/rng.hpp"

using namespace dasee;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

SystemConfig small_cfg() {
  SystemConfig cfg;
  cfg.M = 2;
  cfg.K = 2;
  cfg.n = 16;
  cfg.d = 2;
  return cfg;
}

}  // namespace

TEST_CASE("random stream moments") {
  RandomStream rng(5);
  const int N = 200000;
  double mean = 0, power = 0, re2 = 0;
  for (int i = 0; i < N; ++i) {
    const std::complex<double> z = rng.complex_normal();
    mean += z.real() + z.imag();
    power += std::norm(z);
    re2 += z.real() * z.real();
  }
  CHECK(std::abs(mean / N) < 0.01);
  CHECK(power / N == doctest::Approx(1.0).epsilon(0.01));
  CHECK(re2 / N == doctest::Approx(0.5).epsilon(0.01));
  RandomStream a(11), b(11);
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  CHECK(substream_seed(1, 0) != substream_seed(1, 1));
  CHECK(substream_seed(1, 0) != substream_seed(2, 0));
}

TEST_CASE("perfect CSI without contamination or pilot noise") {
  SystemConfig cfg;
  cfg.alpha2 = 0.0;
  cfg.psi = cfg.L;
  cfg.K = 4;
  cfg.n = 8;
  cfg.p_u = 1e14;
  const SteeringMatrix A = steering_matrix(cfg.n, cfg.n);
  const LargeScaleGains gains = analytic_gains(cfg);
  const mc::ChannelRealization real = mc::generate_realization(cfg, gains, A, 17);
  for (int j = 0; j < cfg.L; ++j)
    for (int m = 0; m < cfg.M; ++m) {
      const Eigen::MatrixXcd own = real.channels(j, m).middleCols(j * cfg.K, cfg.K);
      CHECK((real.estimates(j, m) - own).norm() / own.norm() < 1e-5);
    }
}

TEST_CASE("realizations are reproducible from the seed") {
  const SystemConfig cfg = small_cfg();
  const SteeringMatrix A = steering_matrix(cfg.n, cfg.n / cfg.d);
  const LargeScaleGains gains = analytic_gains(cfg);
  const auto r1 = mc::generate_realization(cfg, gains, A, 3);
  const auto r2 = mc::generate_realization(cfg, gains, A, 3);
  const auto r3 = mc::generate_realization(cfg, gains, A, 4);
  CHECK(r1.g[5] == r2.g[5]);
  CHECK(r1.g_hat[3] == r2.g_hat[3]);
  CHECK(r1.g[5] != r3.g[5]);
}

TEST_CASE("empirical covariances of channel and estimate match R and Phi") {
  const SystemConfig cfg = small_cfg();
  const SteeringMatrix A = steering_matrix(cfg.n, cfg.n / cfg.d);
  const LargeScaleGains gains = analytic_gains(cfg);
  const CorrelationSet corr = correlation_set_from_gains(gains, A, cfg.psi);
  const PilotParams pilot{cfg.p_u, cfg.tau_u(), cfg.sigma2};
  const int draws = 10000;
  const int j = 0, m = 1, k = 1, l_other = 3;
  Eigen::MatrixXcd cov_hat = Eigen::MatrixXcd::Zero(cfg.n, cfg.n);
  Eigen::MatrixXcd cov_g = Eigen::MatrixXcd::Zero(cfg.n, cfg.n);
  for (int r = 0; r < draws; ++r) {
    const auto real = mc::generate_realization(cfg, gains, A, substream_seed(2024, r));
    const Eigen::VectorXcd gh = real.estimates(j, m).col(k);
    const Eigen::VectorXcd g = real.channels(j, m).col(l_other * cfg.K + k);
    cov_hat += gh * gh.adjoint();
    cov_g += g * g.adjoint();
  }
  cov_hat /= draws;
  cov_g /= draws;
  const Eigen::MatrixXcd phi = phi_matrix(corr, j, m, j, k, pilot);
  const Eigen::MatrixXcd& R = corr.R(j, m, l_other, k);
  CHECK((cov_hat - phi).norm() / phi.norm() < 0.05);
  CHECK((cov_g - R).norm() / R.norm() < 0.05);
}

TEST_CASE("MRT precoders are conjugate estimates") {
  const SystemConfig cfg = small_cfg();
  const SteeringMatrix A = steering_matrix(cfg.n, cfg.n / cfg.d);
  const auto real = mc::generate_realization(cfg, analytic_gains(cfg), A, 8);
  const mc::PrecoderSet ps = mc::mrt_precoders(real, std::vector<double>(cfg.L, 1.0));
  CHECK(ps.at(2, 1) == real.estimates(2, 1).conjugate());
  CHECK_THROWS_AS(mc::mrt_precoders(real, {1.0}), ConfigError);
}

TEST_CASE("power normalization from an independent batch") {
  SystemConfig cfg;
  cfg.n = 8;
  cfg.p_d = 0.8;
  const SteeringMatrix A = steering_matrix(cfg.n, cfg.n);
  const LargeScaleGains gains = analytic_gains(cfg);
  const std::vector<double> lambda = mc::estimate_normalization(cfg, gains, A, 1000, 1);
  const std::vector<double> power = mc::average_transmit_power(cfg, gains, A, lambda, 1000, 2);
  for (double p : power) CHECK(rel(p, cfg.p_d) < 0.02);
}

TEST_CASE("results do not depend on the thread count") {
  SystemConfig cfg;
  cfg.n = 10;
  const auto one = mc::empirical_sinr_rate(cfg, 50, 77, 1);
  const auto three = mc::empirical_sinr_rate(cfg, 50, 77, 3);
  CHECK(one.sinr == three.sinr);
  CHECK(one.cell_se == three.cell_se);
  CHECK(one.mean_cell_se == three.mean_cell_se);
}

TEST_CASE("cell SE is the data fraction times the summed user rates") {
  SystemConfig cfg;
  cfg.n = 10;
  const auto est = mc::empirical_sinr_rate(cfg, 40, 5, 0);
  for (int j = 0; j < cfg.L; ++j) {
    double sum = 0;
    for (int k = 0; k < cfg.K; ++k) sum += std::log2(1 + est.sinr[j * cfg.K + k]);
    CHECK(est.cell_se[j] == doctest::Approx(cfg.data_fraction() * sum));
  }
}

TEST_CASE("single-user array gain grows linearly in n") {
  SystemConfig cfg;
  cfg.L = 1;
  cfg.M = 1;
  cfg.K = 1;
  cfg.psi = 1;
  cfg.alpha1 = 0.0;
  cfg.p_u = 1e6;
  cfg.p_d = 1e-6;
  cfg.n = 16;
  const double s16 = mc::empirical_sinr_rate(cfg, 400, 9, 0).sinr[0];
  cfg.n = 64;
  const double s64 = mc::empirical_sinr_rate(cfg, 400, 9, 0).sinr[0];
  CHECK(s64 / s16 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("empirical EE tracks the deterministic equivalent") {
  SystemConfig cfg;
  cfg.n = 20;
  const EeEvaluation mc = mc::empirical_ee(cfg, PowerModel{}, 300, 123, 0);
  const EeEvaluation de = evaluate_fixed_power(cfg, PowerModel{}, cfg.n);
  CHECK(rel(mc.ee, de.ee) < 0.05);
}

TEST_CASE("bandwidth enters EE only through the throughput and backhaul terms") {
  SystemConfig cfg;
  cfg.n = 10;
  const PowerModel pm;
  const EeEvaluation full = mc::empirical_ee(cfg, pm, 20, 4, 0);
  cfg.B /= 2;
  const EeEvaluation half = mc::empirical_ee(cfg, pm, 20, 4, 0);
  CHECK(half.cell_se == full.cell_se);
  CHECK(half.ee / full.ee == doctest::Approx(0.5 * full.P_total / half.P_total).epsilon(1e-12));
  CHECK(half.ee / full.ee > 0.5);
}
