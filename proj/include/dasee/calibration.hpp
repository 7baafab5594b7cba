/**
 * @file calibration.hpp
 * @brief Cell/RRH geometry, uniform user drops, and the fit of the
 * simplified-model gains (beta, alpha1, alpha2) from distance path loss.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "dasee/gains.hpp"

namespace dasee::calib {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

struct Layout {
  double Rc = 0.0;
  std::vector<Point> cell_centers;
  std::vector<std::vector<Point>> rrh;  ///< [cell][rrh]

  int L() const { return static_cast<int>(cell_centers.size()); }
  int M() const { return rrh.empty() ? 0 : static_cast<int>(rrh.front().size()); }
};

/// Cell 0 at the origin; for L = 7, six neighbours at distance
/// spacing * Rc and angles 0, 60, ..., 300 degrees. In every cell RRH 0 sits at
/// the centre and RRHs 1..M-1 on a ring of radius 2/3 Rc.
Layout build_layout(int M, double Rc, int L, double spacing = 2.0);

/// K points uniform on the disk of radius Rc around the origin.
std::vector<Point> drop_users(int K, double Rc, std::uint64_t seed);

struct CalibrationResult {
  double beta = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double mean_beta0 = 0.0;  ///< nearest own RRH
  double mean_beta1 = 0.0;  ///< other own-cell RRHs
  double mean_beta2 = 0.0;  ///< RRHs of other cells
  long samples0 = 0, samples1 = 0, samples2 = 0;
};

/// Drops K users per drop in cell 0 and averages 1 / max(d, floor)^iota over
/// the three link classes.
CalibrationResult calibrate(const Layout& layout, double iota, int K, int drops,
                            std::uint64_t seed, double floor_distance = 1.0);

/// Position-based gains for every (l, m, j, k): users dropped uniformly in
/// each cell, beta = 1 / max(d, floor)^iota.
LargeScaleGains geometric_gains(const Layout& layout, double iota, int K, std::uint64_t seed,
                                double floor_distance = 1.0);

}  // namespace dasee::calib
