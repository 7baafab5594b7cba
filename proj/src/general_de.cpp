#include "dasee/general_de.hpp"

#include <cmath>

#include "dasee/errors.hpp"

namespace dasee {

namespace {

// tr(X Y) without forming the product.
std::complex<double> trace_of_product(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y) {
  return X.transpose().cwiseProduct(Y).sum();
}

}  // namespace

CorrelationSet::CorrelationSet(int L, int M, int K, int n, std::vector<int> pilot_group)
    : L_(L), M_(M), K_(K), n_(n), pilot_group_(std::move(pilot_group)) {
  if (L < 1 || M < 1 || K < 1 || n < 1) throw ConfigError("empty correlation set");
  if (static_cast<int>(pilot_group_.size()) != L)
    throw ConfigError("pilot group map must have L entries");
  R_.assign(static_cast<std::size_t>(L) * M * L * K, Eigen::MatrixXcd::Zero(n, n));
}

void CorrelationSet::validate() const {
  if (R_.empty()) throw ConfigError("empty correlation set");
  for (const auto& R : R_) {
    if (R.rows() != n_ || R.cols() != n_) throw ConfigError("correlation matrix dimension mismatch");
    const double scale = std::max(R.norm(), 1e-300);
    if ((R - R.adjoint()).norm() > 1e-10 * scale) throw ConfigError("correlation matrix not Hermitian");
  }
}

CorrelationSet correlation_set_from_gains(const LargeScaleGains& gains, const SteeringMatrix& A,
                                          int psi) {
  const int n = A.n();
  const Eigen::MatrixXcd proj = A.A * A.A.adjoint();
  const double n_over_p = static_cast<double>(n) / A.P();
  CorrelationSet corr(gains.L(), gains.M(), gains.K(), n, pilot_groups(gains.L(), psi));
  for (int l = 0; l < gains.L(); ++l)
    for (int m = 0; m < gains.M(); ++m)
      for (int j = 0; j < gains.L(); ++j)
        for (int k = 0; k < gains.K(); ++k)
          corr.R(l, m, j, k) = (gains.at(l, m, j, k) * n_over_p) * proj;
  return corr;
}

namespace {

// R_{lmlk} Q_{lmlk}: the linear MMSE filter applied to the pilot observation.
Eigen::MatrixXcd estimation_filter(const CorrelationSet& corr, int l, int m, int k,
                                   const PilotParams& pilot) {
  const int n = corr.n();
  Eigen::MatrixXcd Qinv =
      (pilot.sigma2 / (pilot.p_u * pilot.tau_u)) * Eigen::MatrixXcd::Identity(n, n);
  for (int j = 0; j < corr.L(); ++j)
    if (corr.shares_pilot(l, j)) Qinv += corr.R(l, m, j, k);
  // R and Q are Hermitian, so R Q = (Q R)^H.
  Eigen::MatrixXcd QR = Qinv.ldlt().solve(corr.R(l, m, l, k));
  return QR.adjoint();
}

}  // namespace

Eigen::MatrixXcd phi_matrix(const CorrelationSet& corr, int l, int m, int j, int k,
                            const PilotParams& pilot) {
  const Eigen::MatrixXcd& Rj = corr.R(l, m, j, k);
  if (Rj.rows() != corr.n() || Rj.cols() != corr.n())
    throw ConfigError("correlation matrix dimension mismatch");
  return estimation_filter(corr, l, m, k, pilot) * Rj;
}

std::vector<double> general_deterministic_sinr(const CorrelationSet& corr, double p_d,
                                               const PilotParams& pilot) {
  corr.validate();
  const int L = corr.L(), M = corr.M(), K = corr.K();
  const double n = corr.n();

  // Filters and own-user estimate covariances, indexed (l * M + m) * K + k.
  std::vector<Eigen::MatrixXcd> filter(static_cast<std::size_t>(L) * M * K);
  std::vector<Eigen::MatrixXcd> phi_own(filter.size());
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < M; ++m)
      for (int k = 0; k < K; ++k) {
        const std::size_t idx = (static_cast<std::size_t>(l) * M + m) * K + k;
        filter[idx] = estimation_filter(corr, l, m, k, pilot);
        phi_own[idx] = filter[idx] * corr.R(l, m, l, k);
      }
  auto at = [&](int l, int m, int k) { return (static_cast<std::size_t>(l) * M + m) * K + k; };

  // (1/n) sum_m tr Phi_{lmli}, and lambda_bar_l.
  std::vector<double> own_trace(static_cast<std::size_t>(L) * K, 0.0);
  std::vector<double> lambda_bar(L, 0.0);
  for (int l = 0; l < L; ++l) {
    double acc = 0.0;
    for (int i = 0; i < K; ++i) {
      double t = 0.0;
      for (int m = 0; m < M; ++m) t += phi_own[at(l, m, i)].trace().real();
      own_trace[l * K + i] = t / n;
      acc += t / n;
    }
    lambda_bar[l] = 1.0 / (acc / K);
  }

  std::vector<double> sinr(static_cast<std::size_t>(L) * K);
  for (int j = 0; j < L; ++j) {
    for (int k = 0; k < K; ++k) {
      const double num = lambda_bar[j] * own_trace[j * K + k] * own_trace[j * K + k];

      double pc = 0.0;
      for (int l = 0; l < L; ++l) {
        if (l == j || !corr.shares_pilot(l, j)) continue;
        std::complex<double> t = 0.0;
        for (int m = 0; m < M; ++m) t += (filter[at(l, m, k)] * corr.R(l, m, j, k)).trace();
        pc += lambda_bar[l] * std::norm(t / n);
      }

      double mu = 0.0;
      for (int l = 0; l < L; ++l) {
        double acc = 0.0;
        for (int m = 0; m < M; ++m)
          for (int i = 0; i < K; ++i)
            acc += trace_of_product(corr.R(l, m, j, k), phi_own[at(l, m, i)]).real();
        mu += lambda_bar[l] * acc / n;
      }
      mu /= n;

      sinr[j * K + k] = num / (pc + mu + pilot.sigma2 / (p_d * n));
    }
  }
  return sinr;
}

}  // namespace dasee
