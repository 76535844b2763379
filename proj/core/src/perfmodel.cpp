#include "tempest/perfmodel.hpp"

#include <stdexcept>
#include <string>

namespace tempest::perfmodel {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double intra_warp_speedup(double t_imb, double k, double eps, double i_opt) {
  require(t_imb >= 1 && t_imb <= 32, "t_imb must be in [1, 32]");
  require(k >= 0, "k must be non-negative");
  require(eps >= 0 && eps <= 1, "eps must be in [0, 1]");
  require(i_opt > 0, "i_opt must be positive");
  return 32.0 / (t_imb * (1.0 + k * eps / i_opt));
}

double tail_speedup(double o, double phi, double l_imb, double kc_over_t) {
  require(o > 0, "o must be positive");
  require(phi >= 1, "phi must be >= 1");
  require(l_imb >= 0 && l_imb <= 1, "l_imb must be in [0, 1]");
  require(kc_over_t >= 0, "kc_over_t must be non-negative");
  const double big_phi = (phi - 1.0) / phi;
  return o / ((1.0 - big_phi * l_imb) + kc_over_t);
}

double residual_tail_fraction(double l_imb, double theta) {
  require(l_imb >= 0 && l_imb <= 1, "l_imb must be in [0, 1]");
  require(theta >= 1, "theta must be >= 1");
  const double scaled = l_imb / theta;
  const double denom = 1.0 - l_imb + scaled;
  return denom == 0 ? 0.0 : scaled / denom;
}

double tail_fraction_from_work(double work_fraction, double phi) {
  require(work_fraction > 0 && work_fraction <= 1, "work_fraction must be in (0, 1]");
  require(phi >= 1, "phi must be >= 1");
  const double f = work_fraction;
  return 1.0 / (((1.0 - f) / f) / phi + 1.0);
}

}  // namespace tempest::perfmodel
