#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "dasee/figures.hpp"
#include "dasee/optimizer.hpp"
#include "dasee/scenario.hpp"

using namespace dasee;
using namespace dasee::app;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(DASEE_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dasee_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("scenario keys") {
  Scenario sc;
  set_scenario_key(sc, "K", "20");
  set_scenario_key(sc, "alpha2", "0.15");
  set_scenario_key(sc, "pilot_noise_mode", "negligible");
  set_scenario_key(sc, "P_RRH", "1");
  CHECK(sc.cfg.K == 20);
  CHECK(sc.cfg.alpha2 == 0.15);
  CHECK(sc.cfg.pilot_noise_mode == PilotNoiseMode::kNegligible);
  CHECK(sc.pm.P_RRH == 1.0);
  CHECK_THROWS_AS(set_scenario_key(sc, "K", "2.5"), ConfigError);
  CHECK_THROWS_AS(set_scenario_key(sc, "beta", "abc"), ConfigError);
  CHECK_THROWS_AS(set_scenario_key(sc, "kappa", "1"), ConfigError);
  CHECK_THROWS_AS(set_scenario_key(sc, "rate_mode", "fast"), ConfigError);
  CHECK_THROWS_AS(set_scenario_key(sc, "beta_dbm", "-70"), ConfigError);
}

TEST_CASE("dBm keys") {
  Scenario sc;
  set_scenario_key(sc, "p_u_dbm", "27");
  set_scenario_key(sc, "sigma2_dbm", "-40");
  set_scenario_key(sc, "P_0_dbm", "30");
  CHECK(sc.cfg.p_u == doctest::Approx(0.5012).epsilon(1e-4));
  CHECK(sc.cfg.sigma2 == doctest::Approx(1e-7));
  CHECK(sc.pm.P_0 == doctest::Approx(1.0));
}

TEST_CASE("config text with comments") {
  Scenario sc;
  std::istringstream in("# a comment\n\nM = 5   # trailing\n n=17\r\ngamma = 2.5\n");
  apply_scenario_text(sc, in);
  CHECK(sc.cfg.M == 5);
  CHECK(sc.cfg.n == 17);
  CHECK(sc.gamma == 2.5);
  std::istringstream bad("M 5\n");
  CHECK_THROWS_AS(apply_scenario_text(sc, bad), ConfigError);
}

TEST_CASE("serialized scenarios read back identically") {
  Scenario sc;
  sc.cfg.beta = 1.0 / 3.0 * 1e-7;
  sc.cfg.pilot_noise_mode = PilotNoiseMode::kNegligible;
  sc.pm.P_BT = 0.1 + 0.2;
  sc.gamma = 2.0 / 3.0;
  sc.sweep = {"M", 1, 12, 1};
  sc.seed = 18446744073709551557ULL;
  sc.output = "out.csv";
  std::istringstream in(serialize_scenario(sc));
  Scenario back;
  apply_scenario_text(back, in);
  CHECK(back == sc);

  Scenario plain;
  plain.sweep = {"n", 5, 60, 5};
  std::istringstream in2(serialize_scenario(plain));
  Scenario plain_back;
  apply_scenario_text(plain_back, in2);
  std::ostringstream a, b;
  write_sweep_csv(a, "n", run_sweep(plain));
  write_sweep_csv(b, "n", run_sweep(plain_back));
  CHECK(a.str() == b.str());
}

TEST_CASE("sweep values") {
  CHECK(SweepSpec{"n", 1, 5, 1}.values().size() == 5);
  CHECK(SweepSpec{"gamma", 0.5, 6, 0.1}.values().size() == 56);
  CHECK(SweepSpec{"n", 5, 3, 1}.values().empty());
  CHECK_THROWS_AS(SweepSpec("n", 1, 5, 0).values(), ConfigError);
}

TEST_CASE("sweeps") {
  Scenario sc;
  sc.sweep = {"n", 1, 30, 1};
  const auto rows = run_sweep(sc);
  REQUIRE(rows.size() == 30);
  for (const SweepRow& r : rows) {
    const std::optional<double> ee = try_energy_efficiency(sc.cfg, sc.pm, sc.gamma, r.value);
    CHECK(r.feasible == ee.has_value());
    if (ee) CHECK(r.ee_de == *ee);
    CHECK(!r.ee_mc);
  }
  sc.sweep = {"n", 5, 3, 1};
  CHECK_THROWS_AS(run_sweep(sc), ConfigError);
  sc.sweep = {"output", 1, 3, 1};
  CHECK_THROWS_AS(run_sweep(sc), ConfigError);
  sc.sweep = {"n", 1, 5, 1};
  CHECK_THROWS_AS(run_sweep(sc), InfeasibleProblemError);

  // An invalid point (psi must divide L) is reported infeasible, not fatal.
  sc.sweep = {"psi", 1, 7, 1};
  const auto psi_rows = run_sweep(sc);
  CHECK(psi_rows[0].feasible);
  CHECK(!psi_rows[1].feasible);
  CHECK(psi_rows[6].feasible);
}

TEST_CASE("Monte-Carlo sweep column") {
  Scenario sc;
  sc.rate_mode = RateMode::kFixedPower;
  sc.monte_carlo = true;
  sc.realizations = 30;
  sc.sweep = {"n", 10, 20, 10};
  const auto rows = run_sweep(sc);
  for (const SweepRow& r : rows) {
    REQUIRE(r.ee_mc);
    CHECK(std::abs(*r.ee_mc / r.ee_de - 1) < 0.1);
    CHECK(r.p_d == sc.cfg.p_d);
  }
}

TEST_CASE("CSV layout") {
  Scenario sc;
  sc.sweep = {"n", 1, 20, 1};
  std::ostringstream os;
  const auto rows = run_sweep(sc);
  write_sweep_csv(os, "n", rows);
  const std::string text = os.str();
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  const auto header = split(line);
  CHECK(header.front() == "n");
  CHECK(header.size() == 11);
  std::size_t i = 0;
  while (std::getline(in, line)) {
    const auto cells = split(line);
    CHECK(cells.size() == header.size());
    if (rows[i].feasible) {
      CHECK(std::stod(cells[2]) == rows[i].ee_de);  // full precision
      CHECK(std::stod(cells[7]) == rows[i].p_d);
    } else {
      CHECK(cells[2].empty());
    }
    ++i;
  }
  CHECK(i == rows.size());
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 2.24e-8, 1e300, -7.5, 12345678.901234567})
    CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("figure 8 grid peaks at (5, 17)") {
  const Table t = run_figure(8, Scenario{});
  REQUIRE(t.columns == std::vector<std::string>{"M", "n", "EE"});
  double best = 0;
  double M = 0, n = 0;
  for (const auto& row : t.rows)
    if (row[2] && *row[2] > best) {
      best = *row[2];
      M = *row[0];
      n = *row[1];
    }
  CHECK(M == 5);
  CHECK(n == 17);
  CHECK(best / 1e6 == doctest::Approx(10.12).epsilon(0.01));
}

TEST_CASE("figure 2 layout") {
  Scenario sc;
  sc.realizations = 2;
  const Table t = run_figure(2, sc);
  CHECK(t.columns[2] == "n");
  CHECK(t.columns[3] == "EE_asymptotic");
  CHECK(t.columns[4] == "EE_montecarlo");
  CHECK(t.rows.size() == 24);
}

TEST_CASE("every figure runs") {
  for (int f = 3; f <= 10; ++f) {
    const Table t = run_figure(f, Scenario{});
    CHECK(!t.rows.empty());
    for (const auto& row : t.rows) CHECK(row.size() == t.columns.size());
  }
  CHECK_THROWS_AS(run_figure(11, Scenario{}), ConfigError);
}

TEST_CASE("command line: help and optimizers") {
  Run r = run_cli("--help");
  CHECK(r.code == 0);
  for (const char* sub : {"calibrate", "de-curve", "mc-validate", "opt-n", "opt-k", "opt-m", "joint", "figure"})
    CHECK(r.out.find(sub) != std::string::npos);

  r = run_cli("opt-n --gamma 2 --M 7 --K 10");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"n_star\": 11") != std::string::npos);

  r = run_cli("opt-k --n 20 --M 7 --psi 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"k_star\": 14") != std::string::npos);

  r = run_cli("opt-m --K 50");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"m_star\": 7") != std::string::npos);
  CHECK(r.out.find("\"n_star\": 40") != std::string::npos);

  r = run_cli("opt-n --no-pc");
  CHECK(r.code == 0);
  r = run_cli("joint --M-max 8");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"scan\"") != std::string::npos);
}

TEST_CASE("command line: exit codes") {
  CHECK(run_cli("opt-n --K 200").code == 2);
  CHECK(run_cli("opt-n --K abc").code == 2);
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("opt-n --gamma 12").code == 3);
  CHECK(run_cli("figure 42").code == 2);
  CHECK(run_cli("opt-n --config /nonexistent/file.cfg").code == 4);
  CHECK(run_cli("de-curve --output /nonexistent/dir/out.csv").code == 4);
}

TEST_CASE("command line: config precedence") {
  const fs::path cfg = scratch("prec.cfg");
  {
    std::ofstream out(cfg);
    out << "K = 50\nM = 3\n";
  }
  // File overrides defaults; flags override the file.
  Run from_file = run_cli("opt-n --config " + cfg.string());
  Scenario expect;
  expect.cfg.K = 50;
  expect.cfg.M = 3;
  const long n_file = *opt::optimal_n(expect.cfg, expect.pm, expect.gamma).n;
  CHECK(from_file.out.find("\"n_star\": " + std::to_string(n_file)) != std::string::npos);
  CHECK(from_file.out.find("\"m_star\": 3") != std::string::npos);

  Run flagged = run_cli("opt-n --config " + cfg.string() + " --M 7");
  CHECK(flagged.out.find("\"m_star\": 7") != std::string::npos);
  CHECK(flagged.out.find("\"k_star\": 50") != std::string::npos);
}

TEST_CASE("command line: CSV output files") {
  const fs::path empty = scratch("empty.csv");
  fs::remove(empty);
  CHECK(run_cli("de-curve --sweep_start 5 --sweep_stop 3 --output " + empty.string()).code == 2);
  CHECK(!fs::exists(empty));

  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  const std::string args = "mc-validate --realizations 3 --sweep_stop 20 --seed 9 --output ";
  REQUIRE(run_cli(args + a.string()).code == 0);
  REQUIRE(run_cli(args + b.string()).code == 0);
  const std::string ta = read_file(a);
  CHECK(ta == read_file(b));
  CHECK(ta.rfind("n,feasible,EE_de_bits_per_J", 0) == 0);
  CHECK(std::count(ta.begin(), ta.end(), '\n') == 3);

  const Run cal = run_cli("calibrate --drops 20");
  CHECK(cal.code == 0);
  Scenario sc;
  std::istringstream frag(cal.out);
  apply_scenario_text(sc, frag);
  CHECK(sc.cfg.beta != Scenario{}.cfg.beta);
}
