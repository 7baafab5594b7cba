#include "dasee/rng.hpp"

#include <cmath>
#include <numbers>

namespace dasee {

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller
  const double r = std::sqrt(-2.0 * std::log(uniform_open0()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::complex<double> RandomStream::complex_normal() {
  // Marsaglia polar method, one accepted pair per complex sample.
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double f = std::sqrt(-std::log(s) / s);
      return {u * f, v * f};
    }
  }
}

}  // namespace dasee
