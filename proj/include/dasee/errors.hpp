/**
 * @file errors.hpp
 * @brief Exception types shared by the dasee modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace dasee {

/// A configuration invariant was violated. what() names the invariant.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The target rate cannot be met at any antenna count (pilot-contamination
/// ceiling reached).
class RateUnachievableError : public std::domain_error {
 public:
  explicit RateUnachievableError(double ceiling_bps_hz)
      : std::domain_error("target rate exceeds the pilot-contamination ceiling of " +
                          std::to_string(ceiling_bps_hz) + " bit/s/Hz"),
        ceiling_(ceiling_bps_hz) {}
  double ceiling() const noexcept { return ceiling_; }

 private:
  double ceiling_;
};

/// The antenna count is too small to reach the target rate with finite power.
class InfeasibleAntennasError : public std::domain_error {
 public:
  InfeasibleAntennasError(double n, long min_feasible_n)
      : std::domain_error("n = " + std::to_string(n) +
                          " cannot reach the target rate; minimum feasible n is " +
                          std::to_string(min_feasible_n)),
        min_n_(min_feasible_n) {}
  long min_feasible_n() const noexcept { return min_n_; }

 private:
  long min_n_;
};

/// An optimization had nothing feasible to choose from, or its root bracket
/// was degenerate.
class InfeasibleProblemError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace dasee
