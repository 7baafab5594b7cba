#include "dasee/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "dasee/montecarlo.hpp"

namespace dasee::app {

std::string to_string(RateMode mode) {
  return mode == RateMode::kTargetRate ? "target_rate" : "fixed_power";
}

RateMode rate_mode_from_string(const std::string& s) {
  if (s == "target_rate") return RateMode::kTargetRate;
  if (s == "fixed_power") return RateMode::kFixedPower;
  throw ConfigError("unknown rate_mode '" + s + "' (expected target_rate or fixed_power)");
}

std::vector<double> SweepSpec::values() const {
  if (!(step > 0)) throw ConfigError("sweep_step must be > 0");
  std::vector<double> out;
  const double slack = 1e-9 * step;
  for (long i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + slack) break;
    out.push_back(v);
  }
  return out;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError("bad number for " + key + ": '" + text + "'");
  return v;
}

long parse_integer(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 9e15) throw ConfigError(key + " must be an integer, got '" + text + "'");
  return static_cast<long>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw ConfigError("bad boolean for " + key + ": '" + text + "'");
}

struct Key {
  std::string name;
  bool sweepable;
  bool power;  // also accepted as <name>_dbm
  std::function<std::string(const Scenario&)> get;
  std::function<void(Scenario&, const std::string&)> set;
};

Key real_key(std::string name, double Scenario::*field, bool sweepable = true) {
  return {name, sweepable, false, [field](const Scenario& s) { return format_number(s.*field); },
          [field, name](Scenario& s, const std::string& v) { s.*field = parse_double(name, v); }};
}

template <typename Group, typename Field>
Key field_key(std::string name, Group Scenario::*group, Field Group::*field, bool power = false) {
  return {name, true, power,
          [group, field](const Scenario& s) { return format_number(static_cast<double>(s.*group.*field)); },
          [group, field, name](Scenario& s, const std::string& v) {
            if constexpr (std::is_integral_v<Field>)
              s.*group.*field = static_cast<Field>(parse_integer(name, v));
            else
              s.*group.*field = parse_double(name, v);
          }};
}

const std::vector<Key>& key_table() {
  static const std::vector<Key> table = [] {
    using S = Scenario;
    std::vector<Key> t;
    t.push_back(field_key("L", &S::cfg, &SystemConfig::L));
    t.push_back(field_key("M", &S::cfg, &SystemConfig::M));
    t.push_back(field_key("K", &S::cfg, &SystemConfig::K));
    t.push_back(field_key("n", &S::cfg, &SystemConfig::n));
    t.push_back(field_key("psi", &S::cfg, &SystemConfig::psi));
    t.push_back(field_key("T", &S::cfg, &SystemConfig::T));
    t.push_back(field_key("B", &S::cfg, &SystemConfig::B));
    t.push_back(field_key("d", &S::cfg, &SystemConfig::d));
    t.push_back(field_key("iota", &S::cfg, &SystemConfig::iota));
    t.push_back(field_key("Rc", &S::cfg, &SystemConfig::Rc));
    t.push_back(field_key("beta", &S::cfg, &SystemConfig::beta));
    t.push_back(field_key("alpha1", &S::cfg, &SystemConfig::alpha1));
    t.push_back(field_key("alpha2", &S::cfg, &SystemConfig::alpha2));
    t.push_back(field_key("p_u", &S::cfg, &SystemConfig::p_u, true));
    t.push_back(field_key("p_d", &S::cfg, &SystemConfig::p_d, true));
    t.push_back(field_key("sigma2", &S::cfg, &SystemConfig::sigma2, true));
    t.push_back({"pilot_noise_mode", false, false,
                 [](const S& s) { return to_string(s.cfg.pilot_noise_mode); },
                 [](S& s, const std::string& v) { s.cfg.pilot_noise_mode = pilot_noise_mode_from_string(trim(v)); }});
    t.push_back(field_key("P_FIX", &S::pm, &PowerModel::P_FIX, true));
    t.push_back(field_key("P_RRH", &S::pm, &PowerModel::P_RRH, true));
    t.push_back(field_key("P_0", &S::pm, &PowerModel::P_0, true));
    t.push_back(field_key("P_BT", &S::pm, &PowerModel::P_BT));
    t.push_back(field_key("zeta", &S::pm, &PowerModel::zeta));
    t.push_back(real_key("gamma", &S::gamma));
    t.push_back({"rate_mode", false, false, [](const S& s) { return to_string(s.rate_mode); },
                 [](S& s, const std::string& v) { s.rate_mode = rate_mode_from_string(trim(v)); }});
    t.push_back({"sweep_variable", false, false, [](const S& s) { return s.sweep.variable; },
                 [](S& s, const std::string& v) { s.sweep.variable = trim(v); }});
    t.push_back(field_key("sweep_start", &S::sweep, &SweepSpec::start));
    t.push_back(field_key("sweep_stop", &S::sweep, &SweepSpec::stop));
    t.push_back(field_key("sweep_step", &S::sweep, &SweepSpec::step));
    t.push_back({"monte_carlo", false, false, [](const S& s) { return std::string(s.monte_carlo ? "true" : "false"); },
                 [](S& s, const std::string& v) { s.monte_carlo = parse_bool("monte_carlo", v); }});
    t.push_back({"seed", false, false, [](const S& s) { return std::to_string(s.seed); },
                 [](S& s, const std::string& v) {
                   const std::string x = trim(v);
                   std::uint64_t seed = 0;
                   const auto res = std::from_chars(x.data(), x.data() + x.size(), seed);
                   if (x.empty() || res.ec != std::errc() || res.ptr != x.data() + x.size())
                     throw ConfigError("bad seed: '" + v + "'");
                   s.seed = seed;
                 }});
    t.push_back({"realizations", false, false, [](const S& s) { return std::to_string(s.realizations); },
                 [](S& s, const std::string& v) { s.realizations = static_cast<int>(parse_integer("realizations", v)); }});
    t.push_back({"threads", false, false, [](const S& s) { return std::to_string(s.threads); },
                 [](S& s, const std::string& v) {
                   const long x = parse_integer("threads", v);
                   if (x < 0) throw ConfigError("threads must be >= 0");
                   s.threads = static_cast<unsigned>(x);
                 }});
    t.push_back({"output", false, false, [](const S& s) { return s.output; },
                 [](S& s, const std::string& v) { s.output = trim(v); }});
    // Sweep bounds and step are not themselves sweepable.
    for (Key& k : t)
      if (k.name.rfind("sweep_", 0) == 0) k.sweepable = false;
    return t;
  }();
  return table;
}

const Key* find_key(const std::string& name) {
  for (const Key& k : key_table())
    if (k.name == name) return &k;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Key& k : key_table()) out.push_back(k.name);
    return out;
  }();
  return names;
}

void set_scenario_key(Scenario& sc, const std::string& key, const std::string& value) {
  if (const Key* k = find_key(key)) {
    k->set(sc, value);
    return;
  }
  const std::string suffix = "_dbm";
  if (key.size() > suffix.size() && key.ends_with(suffix)) {
    const Key* k = find_key(key.substr(0, key.size() - suffix.size()));
    if (k && k->power) {
      k->set(sc, format_number(dbm_to_watts(parse_double(key, value))));
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

void apply_scenario_text(Scenario& sc, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    set_scenario_key(sc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_scenario_file(Scenario& sc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  apply_scenario_text(sc, in);
}

std::string serialize_scenario(const Scenario& sc) {
  std::string out;
  for (const Key& k : key_table()) out += k.name + " = " + k.get(sc) + "\n";
  return out;
}

void validate_scenario(const Scenario& sc) {
  validate_config(sc.cfg, sc.pm);
  if (!(sc.gamma > 0)) throw ConfigError("gamma must be > 0");
  if (sc.realizations < 1) throw ConfigError("realizations must be >= 1");
  const Key* k = find_key(sc.sweep.variable);
  if (!k || !k->sweepable) throw ConfigError("cannot sweep '" + sc.sweep.variable + "'");
  if (!(sc.sweep.step > 0)) throw ConfigError("sweep_step must be > 0");
}

namespace {

SweepRow sweep_point(const Scenario& base, double value, unsigned mc_threads) {
  SweepRow row;
  row.value = value;
  Scenario sc = base;
  try {
    set_scenario_key(sc, sc.sweep.variable, format_number(value));
    validate_config(sc.cfg, sc.pm);
    if (!(sc.gamma > 0)) return row;
  } catch (const ConfigError&) {
    return row;
  }
  const SystemConfig& cfg = sc.cfg;
  try {
    const EeEvaluation de = sc.rate_mode == RateMode::kTargetRate
                                ? evaluate_target_rate(cfg, sc.pm, sc.gamma, cfg.n)
                                : evaluate_fixed_power(cfg, sc.pm, cfg.n);
    row.feasible = de.ee > 0;
    row.ee_de = de.ee;
    row.p_d = de.p_d;
    row.P_total = de.P_total;
  } catch (const std::domain_error&) {
    return row;
  }
  if (row.feasible && sc.monte_carlo) {
    SystemConfig mc_cfg = cfg;
    mc_cfg.p_d = row.p_d;
    row.ee_mc = mc::empirical_ee(mc_cfg, sc.pm, sc.realizations, sc.seed, mc_threads).ee;
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const Scenario& sc) {
  validate_scenario(sc);
  const std::vector<double> values = sc.sweep.values();
  if (values.empty()) throw ConfigError("empty sweep range");

  std::vector<SweepRow> rows(values.size());
  if (sc.monte_carlo) {
    // The simulation parallelizes internally.
    for (std::size_t i = 0; i < values.size(); ++i) rows[i] = sweep_point(sc, values[i], sc.threads);
  } else {
    unsigned threads = sc.threads ? sc.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(values.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < values.size(); i = next++) rows[i] = sweep_point(sc, values[i], 1);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }
  if (std::none_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.feasible; }))
    throw InfeasibleProblemError("no feasible point in the sweep of " + sc.sweep.variable);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::string& variable,
                     const std::vector<SweepRow>& rows) {
  out << variable
      << ",feasible,EE_de_bits_per_J,EE_de_Mbits_per_J,EE_mc_bits_per_J,EE_mc_Mbits_per_J,"
         "mc_rel_error,p_d_W,p_d_dBm,P_total_W,P_total_dBm\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.value) << ',' << (r.feasible ? 1 : 0);
    if (!r.feasible) {
      out << ",,,,,,,,,\n";
      continue;
    }
    out << ',' << format_number(r.ee_de) << ',' << format_number(r.ee_de / 1e6);
    if (r.ee_mc)
      out << ',' << format_number(*r.ee_mc) << ',' << format_number(*r.ee_mc / 1e6) << ','
          << format_number(*r.ee_mc / r.ee_de - 1.0);
    else
      out << ",,,";
    out << ',' << format_number(r.p_d) << ',' << format_number(watts_to_dbm(r.p_d)) << ','
        << format_number(r.P_total) << ',' << format_number(watts_to_dbm(r.P_total)) << '\n';
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace dasee::app
