#include "dasee/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dasee/errors.hpp"
#include "dasee/rng.hpp"

namespace dasee::calib {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

Layout build_layout(int M, double Rc, int L, double spacing) {
  if (M < 1) throw ConfigError("M must be >= 1");
  if (!(Rc > 0)) throw ConfigError("Rc must be > 0");
  if (L != 1 && L != 7) throw ConfigError("layout supports L = 1 or L = 7 only");
  if (!(spacing > 0)) throw ConfigError("cell spacing must be > 0");

  Layout layout;
  layout.Rc = Rc;
  layout.cell_centers.push_back({0.0, 0.0});
  for (int c = 1; c < L; ++c) {
    const double ang = (c - 1) * std::numbers::pi / 3.0;
    layout.cell_centers.push_back({spacing * Rc * std::cos(ang), spacing * Rc * std::sin(ang)});
  }
  const double ring = 2.0 / 3.0 * Rc;
  for (const Point& c : layout.cell_centers) {
    std::vector<Point> heads{c};
    for (int m = 1; m < M; ++m) {
      const double ang = 2.0 * std::numbers::pi * (m - 1) / (M - 1);
      heads.push_back({c.x + ring * std::cos(ang), c.y + ring * std::sin(ang)});
    }
    layout.rrh.push_back(std::move(heads));
  }
  return layout;
}

std::vector<Point> drop_users(int K, double Rc, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<Point> users(K);
  for (auto& u : users) {
    const double r = Rc * std::sqrt(rng.uniform());
    const double th = 2.0 * std::numbers::pi * rng.uniform();
    u = {r * std::cos(th), r * std::sin(th)};
  }
  return users;
}

namespace {

double path_gain(double dist, double iota, double floor_distance) {
  return std::pow(std::max(dist, floor_distance), -iota);
}

}  // namespace

CalibrationResult calibrate(const Layout& layout, double iota, int K, int drops,
                            std::uint64_t seed, double floor_distance) {
  if (drops < 1) throw ConfigError("drops must be >= 1");
  if (K < 1) throw ConfigError("K must be >= 1");
  const int L = layout.L(), M = layout.M();

  double sum0 = 0.0, sum1 = 0.0, sum2 = 0.0;
  CalibrationResult res;
  std::vector<double> own(M);
  for (int drop = 0; drop < drops; ++drop) {
    for (const Point& u : drop_users(K, layout.Rc, substream_seed(seed, drop))) {
      for (int m = 0; m < M; ++m) own[m] = path_gain(distance(u, layout.rrh[0][m]), iota, floor_distance);
      const auto nearest = std::max_element(own.begin(), own.end());
      sum0 += *nearest;
      ++res.samples0;
      for (auto it = own.begin(); it != own.end(); ++it) {
        if (it == nearest) continue;
        sum1 += *it;
        ++res.samples1;
      }
      for (int l = 1; l < L; ++l)
        for (int m = 0; m < M; ++m) {
          sum2 += path_gain(distance(u, layout.rrh[l][m]), iota, floor_distance);
          ++res.samples2;
        }
    }
  }

  res.mean_beta0 = sum0 / res.samples0;
  res.mean_beta1 = res.samples1 ? sum1 / res.samples1 : 0.0;
  res.mean_beta2 = res.samples2 ? sum2 / res.samples2 : 0.0;
  res.beta = res.mean_beta0 / std::pow(static_cast<double>(M), iota / 2.0);
  res.alpha1 = res.mean_beta1 / res.beta;
  res.alpha2 = res.mean_beta2 / res.beta;
  return res;
}

LargeScaleGains geometric_gains(const Layout& layout, double iota, int K, std::uint64_t seed,
                                double floor_distance) {
  const int L = layout.L(), M = layout.M();
  LargeScaleGains gains(L, M, K);
  for (int j = 0; j < L; ++j) {
    const Point c = layout.cell_centers[j];
    const std::vector<Point> users = drop_users(K, layout.Rc, substream_seed(seed, j));
    for (int k = 0; k < K; ++k) {
      const Point u{users[k].x + c.x, users[k].y + c.y};
      for (int l = 0; l < L; ++l)
        for (int m = 0; m < M; ++m)
          gains.at(l, m, j, k) = path_gain(distance(u, layout.rrh[l][m]), iota, floor_distance);
    }
  }
  return gains;
}

}  // namespace dasee::calib
