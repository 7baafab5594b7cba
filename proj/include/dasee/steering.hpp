/**
 * @file steering.hpp
 * @brief Array steering matrices A (n x P, orthonormal columns) for the
 * low-rank correlated channel g = sqrt(beta n / P) A h.
 */
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace dasee {

enum class SteeringKind { kDftColumns, kRandomUnitary };

std::string to_string(SteeringKind kind);
SteeringKind steering_kind_from_string(const std::string& s);

struct SteeringMatrix {
  Eigen::MatrixXcd A;
  SteeringKind kind = SteeringKind::kDftColumns;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(A.rows()); }
  int P() const { return static_cast<int>(A.cols()); }
};

/// First P columns of the unitary n-point DFT, or of a seeded Haar-like
/// unitary (QR of a complex Gaussian matrix). Throws ConfigError if P > n.
SteeringMatrix steering_matrix(int n, int P, SteeringKind kind = SteeringKind::kDftColumns,
                               std::uint64_t seed = 0);

}  // namespace dasee
