/**
 * @file figures.hpp
 * @brief Data behind the evaluation figures (numbers 2 to 10), as CSV tables.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dasee/scenario.hpp"

namespace dasee::app {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;  ///< nullopt = empty cell

  std::string to_csv() const;
};

/// Figures:
///  2  asymptotic vs Monte-Carlo EE over n at fixed p_d, K in {10, 20}, with/without PC
///  3  EE over n for d in {1, 2} and beta in {beta, 0.2 beta}
///  4  EE over n with/without PC for P_RRH in {1, 0.2} W
///  5  EE over n for alpha2 in {0.075, 0.15, 0.3} with/without PC (d = 2)
///  6  maximal EE and n* over gamma
///  7  EE over K at fixed n for d in {1, 2}, with/without PC
///  8  EE over the (M, n) grid
///  9  maximal EE over M for K in {10, 50, 100}
///  10 DAS (M = 7) vs CAS (M = 1) over total antennas for two backhaul power settings
/// Parameters not varied by a figure come from base. Throws ConfigError for
/// an unknown figure number.
Table run_figure(int number, const Scenario& base);

}  // namespace dasee::app
