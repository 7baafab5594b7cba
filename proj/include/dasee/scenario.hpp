/**
 * @file scenario.hpp
 * @brief Experiment descriptions: key = value config files, parameter sweeps,
 * and CSV output.
 *
 * Config keys are the SystemConfig / PowerModel field names plus the
 * experiment keys listed by scenario_keys(). Power keys also accept a _dbm
 * suffix (p_u_dbm = 27 sets p_u = 0.5 W).
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dasee/asymptotics.hpp"

namespace dasee::app {

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RateMode {
  kTargetRate,  ///< every user gets gamma; p_d follows from the power inversion
  kFixedPower,  ///< p_d is given; the rate follows from the SINR
};

std::string to_string(RateMode mode);
RateMode rate_mode_from_string(const std::string& s);

struct SweepSpec {
  std::string variable = "n";
  double start = 1.0;
  double stop = 100.0;
  double step = 1.0;

  /// start, start + step, ... up to stop. Empty when start > stop.
  std::vector<double> values() const;

  bool operator==(const SweepSpec&) const = default;
};

struct Scenario {
  SystemConfig cfg;
  PowerModel pm;
  double gamma = 2.0;  ///< target rate, bit/s/Hz
  RateMode rate_mode = RateMode::kTargetRate;
  SweepSpec sweep;
  bool monte_carlo = false;
  std::uint64_t seed = 1;
  int realizations = 1000;
  unsigned threads = 0;  ///< 0 = hardware concurrency
  std::string output;    ///< empty = stdout

  bool operator==(const Scenario&) const = default;
};

/// Every accepted key (without the _dbm variants).
const std::vector<std::string>& scenario_keys();

/// Sets one key. Throws ConfigError for unknown keys or unparsable values.
void set_scenario_key(Scenario& sc, const std::string& key, const std::string& value);

/// Applies "key = value" lines on top of sc. '#' starts a comment.
void apply_scenario_text(Scenario& sc, std::istream& in);
void apply_scenario_file(Scenario& sc, const std::string& path);

/// All keys in key = value form, numbers at full precision.
std::string serialize_scenario(const Scenario& sc);

/// Throws ConfigError naming the first problem.
void validate_scenario(const Scenario& sc);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

struct SweepRow {
  double value = 0.0;
  bool feasible = false;
  double ee_de = 0.0;  ///< bits/J
  std::optional<double> ee_mc;
  double p_d = 0.0;
  double P_total = 0.0;
};

/// One row per sweep point, in sweep order. Throws ConfigError for an empty
/// sweep and InfeasibleProblemError when no point is feasible.
std::vector<SweepRow> run_sweep(const Scenario& sc);

void write_sweep_csv(std::ostream& out, const std::string& variable,
                     const std::vector<SweepRow>& rows);

/// Writes text to path, or to stdout when path is empty. Throws IoError.
void write_output(const std::string& path, const std::string& text);

}  // namespace dasee::app
