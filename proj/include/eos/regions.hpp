#pragma once
#include <optional>
#include <string>
#include <vector>

#include "eos/medium.hpp"
#include "eos/pulses.hpp"

namespace eos {

enum class Region { I, II, III };
std::string region_name(Region r);

struct RegionLabel {
  Region label = Region::II;
  double margin = 0.0;  // the deciding extremum of s, um
  double s_min = 0.0, s_max = 0.0;
};

// Extremes of s = c_n |t - t'| - |r - r'| over the product of both supports.
// Gaussian supports are cut at the 1% envelope level.
RegionLabel classify_numeric(const PulseEnvelope& p1, const PulseEnvelope& p2, const Medium& m);

struct BoundaryParams {
  double n = 3.33, n_g = 3.556, length = 100.0, tau_p = 185.0, w = 10.0;
  double c_n() const;
};

// w + sqrt((c_n (dt + tau_p) + L n_g / n)^2 - L^2), valid for dr >> w
double boundary_I_II(double dt, const BoundaryParams& p);
// -w + sqrt((c_n (dt - tau_p) - L n_g / n)^2 - L^2), valid for c_n dt >> w
double boundary_II_III(double dt, const BoundaryParams& p);

// Root in dr of s_max = 0 (upper, the I/II curve) or s_min = 0 (II/III) at fixed dt, by
// bisection on [0, dr_hi]; empty when there is no sign change.
std::optional<double> numeric_boundary(const PulseEnvelope& p1, const PulseEnvelope& p2,
                                       const Medium& m, double dt, bool upper, double dr_hi);

struct RegionCell {
  double dr = 0.0, dt = 0.0;
  RegionLabel label;
  bool failed = false;
};

// Pulse 2 sits at the origin; pulse 1 is moved to (dr, dt) for every cell.
// Row-major in dt (outer) and dr (inner).
std::vector<RegionCell> region_map(const PulseEnvelope& p1, const PulseEnvelope& p2,
                                   const Medium& m, const std::vector<double>& drs,
                                   const std::vector<double>& dts);
std::vector<RegionCell> region_map_serial(const PulseEnvelope& p1, const PulseEnvelope& p2,
                                          const Medium& m, const std::vector<double>& drs,
                                          const std::vector<double>& dts);

}  // namespace eos
