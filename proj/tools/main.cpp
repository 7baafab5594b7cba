// dasee: command-line front end.
#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "dasee/calibration.hpp"
#include "dasee/figures.hpp"
#include "dasee/optimizer.hpp"
#include "dasee/scenario.hpp"

namespace {

using namespace dasee;
using nlohmann::json;

enum ExitCode { kOk = 0, kConfigError = 2, kInfeasible = 3, kIoError = 4 };

const char* const kPowerKeys[] = {"p_u", "p_d", "sigma2", "P_FIX", "P_RRH", "P_0"};

json result_json(const opt::OptimizationResult& r, const char* continuous_name) {
  json j;
  if (r.n) j["n_star"] = *r.n;
  if (r.K) j["k_star"] = *r.K;
  if (r.M) j["m_star"] = *r.M;
  if (continuous_name) j[continuous_name] = r.continuous_optimum;
  j["ee_bits_per_joule"] = r.ee;
  j["ee_mbits_per_joule"] = r.ee / 1e6;
  j["p_d_w"] = r.p_d;
  j["p_d_dbm"] = watts_to_dbm(r.p_d);
  j["p_total_w"] = r.P_total;
  j["feasible_window"] = {{"lo", r.window_lo}, {"hi", r.window_hi ? json(*r.window_hi) : json(nullptr)}};
  return j;
}

json scan_json(const std::vector<opt::MScanEntry>& scan) {
  json arr = json::array();
  for (const opt::MScanEntry& e : scan) {
    json j = {{"M", e.M}, {"feasible", e.feasible}, {"beta", e.beta}, {"alpha1", e.alpha1}, {"alpha2", e.alpha2}};
    if (e.feasible) {
      j["n"] = e.n;
      j["ee_bits_per_joule"] = e.ee;
      j["p_d_w"] = e.p_d;
    }
    arr.push_back(j);
  }
  return arr;
}

opt::GainPolicy gain_policy(const std::string& name, int drops, const app::Scenario& sc) {
  opt::GainPolicy g;
  if (name == "recalibrated") g.recalibrate = true;
  else if (name != "analytic") throw ConfigError("unknown gain policy '" + name + "'");
  g.drops = drops;
  g.seed = sc.seed;
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy efficiency of multi-cell massive distributed antenna systems:\n"
               "deterministic-equivalent analysis, Monte-Carlo validation and EE-optimal\n"
               "antenna, user and RRH counts."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string config_path;
  app.add_option("--config", config_path, "key = value config file (flags override it)");

  // Every config key is also a flag; values are applied after the file.
  std::map<std::string, std::string> flag_values;
  std::vector<std::string> flag_keys = app::scenario_keys();
  for (const char* k : kPowerKeys) flag_keys.push_back(std::string(k) + "_dbm");
  for (const std::string& key : flag_keys)
    app.add_option("--" + key, flag_values[key], "config key " + key)->group("Config keys");

  auto* calibrate = app.add_subcommand("calibrate", "Fit beta, alpha1, alpha2 from the cell geometry; prints a config fragment");
  int drops = 1000;
  double spacing = 2.0;
  calibrate->add_option("--drops", drops, "user drops")->capture_default_str();
  calibrate->add_option("--spacing", spacing, "neighbour cell distance in cell radii")->capture_default_str();

  auto* de_curve = app.add_subcommand("de-curve", "Sweep one parameter and print the deterministic-equivalent EE as CSV");
  bool de_mc = false;
  de_curve->add_flag("--mc", de_mc, "add Monte-Carlo EE at every point");

  auto* mc_validate = app.add_subcommand("mc-validate", "Deterministic-equivalent vs Monte-Carlo EE over n at fixed p_d (CSV)");

  auto* opt_n = app.add_subcommand("opt-n", "EE-optimal antennas per RRH (JSON)");
  bool no_pc = false, exhaustive_n = false;
  long n_max = 5000;
  opt_n->add_flag("--no-pc", no_pc, "lower bound without pilot contamination (psi = L)");
  opt_n->add_flag("--exhaustive", exhaustive_n, "integer scan instead of the closed form");
  opt_n->add_option("--n-max", n_max, "upper end of the exhaustive scan")->capture_default_str();

  auto* opt_k = app.add_subcommand("opt-k", "EE-optimal users per cell at the configured n (JSON)");
  bool exhaustive_k = false;
  opt_k->add_flag("--exhaustive", exhaustive_k, "integer scan in the configured pilot noise mode");

  long M_max = 30;
  std::string policy = "optimal", gains = "analytic";
  auto* opt_m = app.add_subcommand("opt-m", "EE-optimal RRHs per cell (JSON)");
  opt_m->add_option("--M-max", M_max, "largest M considered")->capture_default_str();
  opt_m->add_option("--policy", policy, "antennas per M: fixed (configured n) or optimal")
      ->check(CLI::IsMember({"fixed", "optimal"}))->capture_default_str();
  opt_m->add_option("--gains", gains, "gain model per M: analytic or recalibrated")
      ->check(CLI::IsMember({"analytic", "recalibrated"}))->capture_default_str();
  opt_m->add_option("--drops", drops, "drops per M when recalibrating")->capture_default_str();

  auto* joint = app.add_subcommand("joint", "Joint (M, n) optimum with the per-M curve (JSON)");
  joint->add_option("--M-max", M_max, "largest M considered")->capture_default_str();
  joint->add_option("--gains", gains, "gain model per M: analytic or recalibrated")
      ->check(CLI::IsMember({"analytic", "recalibrated"}))->capture_default_str();
  joint->add_option("--drops", drops, "drops per M when recalibrating")->capture_default_str();

  auto* figure = app.add_subcommand("figure", "Data for evaluation figure 2..10 (CSV)");
  int figure_number = 0;
  figure->add_option("number", figure_number, "figure number")->required();

  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    app::Scenario sc;
    if (mc_validate->parsed()) {
      sc.rate_mode = app::RateMode::kFixedPower;
      sc.monte_carlo = true;
      sc.sweep = {"n", 10, 60, 10};
    }
    if (!config_path.empty()) app::apply_scenario_file(sc, config_path);
    for (const std::string& key : flag_keys)
      if (app.count("--" + key)) app::set_scenario_key(sc, key, flag_values[key]);
    if (de_mc) sc.monte_carlo = true;

    std::string text;
    if (calibrate->parsed()) {
      validate_config(sc.cfg, sc.pm);
      const calib::Layout layout = calib::build_layout(sc.cfg.M, sc.cfg.Rc, sc.cfg.L, spacing);
      const calib::CalibrationResult r = calib::calibrate(layout, sc.cfg.iota, sc.cfg.K, drops, sc.seed);
      std::ostringstream os;
      os << "# geometry fit: L = " << sc.cfg.L << ", M = " << sc.cfg.M << ", Rc = " << app::format_number(sc.cfg.Rc)
         << ", iota = " << app::format_number(sc.cfg.iota) << ", drops = " << drops << ", seed = " << sc.seed << "\n"
         << "# mean gains: nearest " << app::format_number(r.mean_beta0) << ", other own-cell "
         << app::format_number(r.mean_beta1) << ", other cells " << app::format_number(r.mean_beta2) << "\n"
         << "beta = " << app::format_number(r.beta) << "\n"
         << "alpha1 = " << app::format_number(r.alpha1) << "\n"
         << "alpha2 = " << app::format_number(r.alpha2) << "\n";
      text = os.str();
    } else if (de_curve->parsed() || mc_validate->parsed()) {
      const std::vector<app::SweepRow> rows = app::run_sweep(sc);
      std::ostringstream os;
      app::write_sweep_csv(os, sc.sweep.variable, rows);
      text = os.str();
    } else if (opt_n->parsed()) {
      const opt::OptimizationResult r = no_pc        ? opt::optimal_n_no_pc(sc.cfg, sc.pm, sc.gamma)
                                        : exhaustive_n ? opt::optimal_n_exhaustive(sc.cfg, sc.pm, sc.gamma, n_max)
                                                       : opt::optimal_n(sc.cfg, sc.pm, sc.gamma);
      text = result_json(r, exhaustive_n ? nullptr : "n_continuous").dump(2) + "\n";
    } else if (opt_k->parsed()) {
      const opt::OptimizationResult r = exhaustive_k
                                            ? opt::optimal_k_exhaustive(sc.cfg, sc.pm, sc.gamma, sc.cfg.n)
                                            : opt::optimal_k(sc.cfg, sc.pm, sc.gamma, sc.cfg.n);
      text = result_json(r, exhaustive_k ? nullptr : "k_continuous").dump(2) + "\n";
    } else if (opt_m->parsed()) {
      const auto pol = policy == "fixed" ? opt::AntennaPolicy::kFixed : opt::AntennaPolicy::kOptimalPerM;
      const opt::OptimizationResult r =
          opt::optimal_m(sc.cfg, sc.pm, sc.gamma, M_max, pol, gain_policy(gains, drops, sc));
      text = result_json(r, nullptr).dump(2) + "\n";
    } else if (joint->parsed()) {
      const opt::GainPolicy gp = gain_policy(gains, drops, sc);
      const auto scan = opt::m_scan(sc.cfg, sc.pm, sc.gamma, M_max, opt::AntennaPolicy::kOptimalPerM, gp);
      json j = result_json(
          opt::optimal_m(sc.cfg, sc.pm, sc.gamma, M_max, opt::AntennaPolicy::kOptimalPerM, gp), nullptr);
      j["scan"] = scan_json(scan);
      text = j.dump(2) + "\n";
    } else if (figure->parsed()) {
      text = app::run_figure(figure_number, sc).to_csv();
    }
    app::write_output(sc.output, text);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const app::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::domain_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
