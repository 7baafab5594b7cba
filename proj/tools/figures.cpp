#include "dasee/figures.hpp"

#include <cmath>

#include "dasee/montecarlo.hpp"
#include "dasee/optimizer.hpp"

namespace dasee::app {

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (row[c]) out += format_number(*row[c]);
    }
    out += '\n';
  }
  return out;
}

namespace {

using Cell = std::optional<double>;

Cell flag(bool b) { return b ? 1.0 : 0.0; }

std::optional<long> optimum_n(const SystemConfig& cfg, const PowerModel& pm, double gamma) {
  try {
    return opt::optimal_n(cfg, pm, gamma).n;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

// EE over n in [1, n_max] with the rounded optimum flagged.
void antenna_curve(Table& t, std::vector<Cell> prefix, const SystemConfig& cfg,
                   const PowerModel& pm, double gamma, long n_max) {
  const std::optional<long> best = optimum_n(cfg, pm, gamma);
  for (long n = 1; n <= n_max; ++n) {
    std::vector<Cell> row = prefix;
    row.push_back(static_cast<double>(n));
    row.push_back(try_energy_efficiency(cfg, pm, gamma, static_cast<double>(n)));
    row.push_back(flag(best && *best == n));
    t.rows.push_back(std::move(row));
  }
}

Table figure2(const Scenario& base) {
  Table t{{"K", "psi", "n", "EE_asymptotic", "EE_montecarlo", "rel_error"}, {}};
  for (int K : {10, 20})
    for (int psi : {1, base.cfg.L})
      for (int n = 10; n <= 60; n += 10) {
        SystemConfig cfg = base.cfg;
        cfg.K = K;
        cfg.psi = psi;
        cfg.n = n;
        validate_config(cfg, base.pm);
        const double de = evaluate_fixed_power(cfg, base.pm, n).ee;
        const double mc = mc::empirical_ee(cfg, base.pm, base.realizations, base.seed, base.threads).ee;
        t.rows.push_back({double(K), double(psi), double(n), de, mc, mc / de - 1.0});
      }
  return t;
}

Table figure3(const Scenario& base) {
  Table t{{"d", "beta", "n", "EE", "is_optimum"}, {}};
  for (double scale : {1.0, 0.2})
    for (int d : {1, 2}) {
      SystemConfig cfg = base.cfg;
      cfg.d = d;
      if (cfg.n % d) cfg.n += d - cfg.n % d;
      cfg.beta *= scale;
      antenna_curve(t, {double(d), cfg.beta}, cfg, base.pm, base.gamma, 60);
    }
  return t;
}

Table figure4(const Scenario& base) {
  Table t{{"psi", "P_RRH", "n", "EE", "is_optimum"}, {}};
  for (double p_rrh : {1.0, 0.2})
    for (int psi : {1, base.cfg.L}) {
      SystemConfig cfg = base.cfg;
      cfg.psi = psi;
      PowerModel pm = base.pm;
      pm.P_RRH = p_rrh;
      antenna_curve(t, {double(psi), p_rrh}, cfg, pm, base.gamma, 60);
    }
  return t;
}

Table figure5(const Scenario& base) {
  Table t{{"alpha2", "psi", "n", "EE", "is_optimum"}, {}};
  for (double a2 : {0.075, 0.15, 0.3})
    for (int psi : {1, base.cfg.L}) {
      SystemConfig cfg = base.cfg;
      cfg.alpha2 = a2;
      cfg.psi = psi;
      cfg.d = 2;
      if (cfg.n % 2) cfg.n += 1;
      antenna_curve(t, {a2, double(psi)}, cfg, base.pm, base.gamma, 80);
    }
  return t;
}

Table figure6(const Scenario& base) {
  Table t{{"psi", "gamma", "max_EE", "n_star"}, {}};
  for (int psi : {1, base.cfg.L})
    for (int i = 0; i <= 22; ++i) {
      const double gamma = 0.5 + 0.25 * i;
      SystemConfig cfg = base.cfg;
      cfg.psi = psi;
      Cell ee, n;
      try {
        const opt::OptimizationResult r = opt::optimal_n(cfg, base.pm, gamma);
        ee = r.ee;
        n = static_cast<double>(*r.n);
      } catch (const std::domain_error&) {
      }
      t.rows.push_back({double(psi), gamma, ee, n});
    }
  return t;
}

Table figure7(const Scenario& base) {
  Table t{{"d", "psi", "K", "EE", "is_optimum"}, {}};
  const double n = base.cfg.n;
  for (int d : {1, 2})
    for (int psi : {1, base.cfg.L}) {
      SystemConfig cfg = base.cfg;
      cfg.d = d;
      cfg.psi = psi;
      cfg.K = 1;
      if (cfg.n % d) cfg.n += d - cfg.n % d;
      std::optional<long> best;
      try {
        best = opt::optimal_k(cfg, base.pm, base.gamma, n).K;
      } catch (const std::domain_error&) {
      }
      for (long K = 1; K * psi < cfg.T; ++K)
        t.rows.push_back({double(d), double(psi), double(K),
                          opt::ee_of_users(cfg, base.pm, base.gamma, n, double(K)),
                          flag(best && *best == K)});
    }
  return t;
}

Table figure8(const Scenario& base) {
  Table t{{"M", "n", "EE"}, {}};
  for (int M = 1; M <= 15; ++M) {
    SystemConfig cfg = base.cfg;
    cfg.M = M;
    for (int n = 1; n <= 60; ++n)
      t.rows.push_back({double(M), double(n), try_energy_efficiency(cfg, base.pm, base.gamma, n)});
  }
  return t;
}

Table figure9(const Scenario& base) {
  Table t{{"K", "M", "n_star", "max_EE"}, {}};
  for (int K : {10, 50, 100}) {
    SystemConfig cfg = base.cfg;
    cfg.K = K;
    for (const opt::MScanEntry& e :
         opt::m_scan(cfg, base.pm, base.gamma, 20, opt::AntennaPolicy::kOptimalPerM)) {
      Cell n, ee;
      if (e.feasible) {
        n = static_cast<double>(e.n);
        ee = e.ee;
      }
      t.rows.push_back({double(K), double(e.M), n, ee});
    }
  }
  return t;
}

Table figure10(const Scenario& base) {
  Table t{{"P_0", "P_BT", "M", "n", "N", "EE", "is_optimum"}, {}};
  constexpr long kMaxTotal = 420;
  for (auto [p0, pbt] : {std::pair{0.825, 0.25e-9}, std::pair{8.25, 2.5e-9}})
    for (int M : {7, 1}) {
      SystemConfig cfg = base.cfg;
      cfg.M = M;
      PowerModel pm = base.pm;
      pm.P_0 = p0;
      pm.P_BT = pbt;
      const std::optional<long> best = optimum_n(cfg, pm, base.gamma);
      for (long n = 1; n * M <= kMaxTotal; ++n)
        t.rows.push_back({p0, pbt, double(M), double(n), double(n * M),
                          try_energy_efficiency(cfg, pm, base.gamma, double(n)),
                          flag(best && *best == n)});
    }
  return t;
}

}  // namespace

Table run_figure(int number, const Scenario& base) {
  validate_scenario(base);
  switch (number) {
    case 2: return figure2(base);
    case 3: return figure3(base);
    case 4: return figure4(base);
    case 5: return figure5(base);
    case 6: return figure6(base);
    case 7: return figure7(base);
    case 8: return figure8(base);
    case 9: return figure9(base);
    case 10: return figure10(base);
    default: throw ConfigError("unknown figure " + std::to_string(number) + " (expected 2..10)");
  }
}

}  // namespace dasee::app
