#pragma once

namespace tempest::perfmodel {

// Analytic load-balancing models. All functions throw std::invalid_argument
// outside their validity ranges.

/// 32 / (t_imb * (1 + k*eps / i_opt)); t_imb in [1, 32], eps in [0, 1], i_opt > 0.
double intra_warp_speedup(double t_imb, double k, double eps, double i_opt);

/// o / ((1 - (phi-1)/phi * l_imb) + kc_over_t); phi >= 1, l_imb in [0, 1].
/// Bounded above by o * phi.
double tail_speedup(double o, double phi, double l_imb, double kc_over_t = 0.0);

/// (l/theta) / (1 - l + l/theta); l in [0, 1], theta >= 1.
double residual_tail_fraction(double l_imb, double theta);

/// Fraction of wall time spent in the tail when a fraction f of the work runs
/// on one core group and the rest spreads over phi groups:
/// 1 / (((1-f)/f)/phi + 1); f in (0, 1].
double tail_fraction_from_work(double work_fraction, double phi);

}  // namespace tempest::perfmodel
