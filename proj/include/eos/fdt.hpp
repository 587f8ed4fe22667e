#pragma once
#include <vector>

#include "eos/scan.hpp"

namespace eos {

// (1/pi) PV int f(t') / (t - t') dt' on a uniform grid. Samples are cell
// midpoints; the singular cell is removed by subtracting f(t) and adding the
// exact log integral of the constant. With tail_fit, A/s + B/s^2 tails fitted
// to each end (s measured from the window center) are integrated to infinity.
// Throws ValidationError for fewer than 64 samples or step <= 0.
std::vector<double> hilbert_transform(const std::vector<double>& f, double step,
                                      bool tail_fit = false);

struct FdtReport {
  std::vector<double> delta_t, g_vac, two_g_r_dprime, prediction, residual;
  double l2_relative = 0.0;   // interior ||prediction - g_vac|| / ||g_vac||
  double max_relative = 0.0;  // interior max |prediction - g_vac| / max |g_vac|
  std::size_t interior_lo = 0, interior_hi = 0;  // [lo, hi) index range
  double window_lo = 0.0, window_hi = 0.0;
  double edge_ratio = 0.0;      // max edge |g_vac| / peak |g_vac|
  double tail_estimate = 0.0;   // max |tail correction| / peak |g_vac| on the interior
  bool tail_fit = true;
  bool identical_pulses = true;  // false only flags the report
};

// Compares g_vac with (2/pi) PV int g_R''(t') / (dt - t') dt' on the interior
// 60% of the window. use_prime swaps in g_R' (negative control).
FdtReport verify_fdt_signal(const std::vector<SignalRecord>& scan, bool tail_fit = true,
                            bool use_prime = false, bool identical_pulses = true);

}  // namespace eos
