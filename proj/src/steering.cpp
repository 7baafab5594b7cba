#include "dasee/steering.hpp"

#include <cmath>
#include <numbers>

#include "dasee/errors.hpp"
#include "dasee/rng.hpp"

namespace dasee {

std::string to_string(SteeringKind kind) {
  return kind == SteeringKind::kDftColumns ? "dft_columns" : "random_unitary";
}

SteeringKind steering_kind_from_string(const std::string& s) {
  if (s == "dft_columns") return SteeringKind::kDftColumns;
  if (s == "random_unitary") return SteeringKind::kRandomUnitary;
  throw ConfigError("unknown steering kind '" + s + "'");
}

SteeringMatrix steering_matrix(int n, int P, SteeringKind kind, std::uint64_t seed) {
  if (n < 1 || P < 1) throw ConfigError("steering matrix needs n >= 1 and P >= 1");
  if (P > n) throw ConfigError("P exceeds n");

  SteeringMatrix sm;
  sm.kind = kind;
  sm.seed = seed;
  if (kind == SteeringKind::kDftColumns) {
    sm.A.resize(n, P);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int c = 0; c < P; ++c) {
      for (int r = 0; r < n; ++r) {
        // Reduce the exponent mod n before scaling to keep the phase exact-ish.
        const long k = (static_cast<long>(r) * c) % n;
        const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) / n;
        sm.A(r, c) = std::polar(scale, phase);
      }
    }
    return sm;
  }

  RandomStream rng(substream_seed(seed, 0));
  Eigen::MatrixXcd G(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) G(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, P);
  sm.A = std::move(Q);
  return sm;
}

}  // namespace dasee
