#include "eos/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eos/errors.hpp"
#include "eos/units.hpp"

namespace eos {

std::string region_name(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    default: return "III";
  }
}

namespace {

struct Geometry {
  double cn, b, L, dr, dt;
};

// Breakpoints of the piecewise-concave/convex functions of dz below.
std::vector<double> dz_candidates(const Geometry& g, double v, double d) {
  std::vector<double> z = {-g.L, g.L, -g.dt / g.b, (-g.dt + v) / g.b, (-g.dt - v) / g.b};
  double kappa = g.cn * g.b;
  if (kappa < 1.0) {
    double s = kappa * d / std::sqrt(1.0 - kappa * kappa);
    z.push_back(s);
    z.push_back(-s);
  }
  std::vector<double> out;
  for (double x : z)
    if (x >= -g.L && x <= g.L) out.push_back(x);
  return out;
}

// max over dz of c_n (|m| + v) - sqrt(d^2 + dz^2): concave on each linear
// piece of |m|, so the maximum is at a piece end or a stationary point.
double smax_fixed(const Geometry& g, double v, double d) {
  double best = -std::numeric_limits<double>::infinity();
  for (double z : dz_candidates(g, v, d)) {
    double m = g.dt + g.b * z;
    best = std::max(best, g.cn * (std::abs(m) + v) - std::sqrt(d * d + z * z));
  }
  return best;
}

// min over dz of c_n max(|m| - v, 0) - sqrt(D^2 + dz^2): concave on each
// piece, so the minimum is at a piece end.
double smin_fixed(const Geometry& g, double v, double D) {
  double best = std::numeric_limits<double>::infinity();
  for (double z : dz_candidates(g, v, D)) {
    double m = g.dt + g.b * z;
    best = std::min(best, g.cn * std::max(std::abs(m) - v, 0.0) - std::sqrt(D * D + z * z));
  }
  return best;
}

// Golden-section maximization after a dense sweep.
template <class F>
double sweep_max(F f, double lo, double hi, int n = 256) {
  int best_i = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    double v = f(lo + (hi - lo) * i / n);
    if (v > best) best = v, best_i = i;
  }
  double a = lo + (hi - lo) * std::max(0, best_i - 1) / n;
  double b = lo + (hi - lo) * std::min(n, best_i + 1) / n;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && b - a > 1e-13 * (hi - lo); ++it) {
    if (fc > fd) {
      b = d, d = c, fd = fc;
      c = b - r * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + r * (b - a), fd = f(d);
    }
  }
  return std::max({best, fc, fd});
}

}  // namespace

RegionLabel classify_numeric(const PulseEnvelope& p1, const PulseEnvelope& p2, const Medium& m) {
  if (p1.length != p2.length) throw ValidationError("pulses must share the crystal length");
  if (p1.shape != p2.shape) throw ValidationError("pulse shapes must match");
  Geometry g;
  g.cn = c_light / cone_index(m);
  g.b = p1.n_g / c_light;
  g.L = p1.length;
  g.dr = std::abs(p1.x0 - p2.x0);
  g.dt = p1.t0 - p2.t0;
  RegionLabel r;
  if (p1.shape == Shape::Rect) {
    double W = 0.5 * (p1.waist + p2.waist);
    double T = 0.5 * (p1.duration + p2.duration);
    r.s_max = smax_fixed(g, T, std::max(g.dr - W, 0.0));
    r.s_min = smin_fixed(g, T, std::hypot(g.dr + W, W));
  } else {
    // 1% level of each (x, y, u) Gaussian is an ellipsoid; the difference set
    // is their Minkowski sum, traced in the (radial, v) plane by normal angle
    double k = std::sqrt(2.0 * std::log(100.0));
    double a1 = k * p1.waist / fwhm_per_sigma, a2 = k * p2.waist / fwhm_per_sigma;
    double t1 = k * p1.duration / fwhm_per_sigma, t2 = k * p2.duration / fwhm_per_sigma;
    auto point = [&](double phi) {
      double c = std::cos(phi), s = std::sin(phi);
      double q = 0.0, v = 0.0;
      for (auto [a, t] : {std::pair{a1, t1}, std::pair{a2, t2}}) {
        double nrm = std::sqrt(a * a * c * c + t * t * s * s);
        q += a * a * c / nrm;
        v += t * t * s / nrm;
      }
      return std::pair{q, v};
    };
    r.s_max = sweep_max(
        [&](double phi) {
          auto [q, v] = point(phi);
          return smax_fixed(g, v, std::max(g.dr - q, 0.0));
        },
        0.0, 0.5 * pi);
    r.s_min = -sweep_max(
        [&](double phi) {
          auto [q, v] = point(phi);
          return -smin_fixed(g, v, g.dr + q);
        },
        0.0, 0.5 * pi);
  }
  if (r.s_max < 0.0) {
    r.label = Region::I;
    r.margin = r.s_max;
  } else if (r.s_min > 0.0) {
    r.label = Region::III;
    r.margin = r.s_min;
  } else {
    r.label = Region::II;
    r.margin = (r.s_max < -r.s_min) ? r.s_max : r.s_min;
  }
  return r;
}

double BoundaryParams::c_n() const { return c_light / n; }

double boundary_I_II(double dt, const BoundaryParams& p) {
  double a = p.c_n() * (dt + p.tau_p) + p.length * p.n_g / p.n;
  double rad = a * a - p.length * p.length;
  if (a < 0.0 || rad < 0.0) throw DomainError("I/II boundary undefined at this delay");
  return p.w + std::sqrt(rad);
}

double boundary_II_III(double dt, const BoundaryParams& p) {
  double a = p.c_n() * (dt - p.tau_p) - p.length * p.n_g / p.n;
  double rad = a * a - p.length * p.length;
  if (a < 0.0 || rad < 0.0) throw DomainError("II/III boundary undefined at this delay");
  return -p.w + std::sqrt(rad);
}

std::optional<double> numeric_boundary(const PulseEnvelope& p1, const PulseEnvelope& p2,
                                       const Medium& m, double dt, bool upper, double dr_hi) {
  auto s = [&](double dr) {
    PulseEnvelope a = p1;
    a.x0 = p2.x0 + dr;
    a.t0 = p2.t0 + dt;
    auto r = classify_numeric(a, p2, m);
    return upper ? r.s_max : r.s_min;
  };
  double lo = 0.0, hi = dr_hi;
  double slo = s(lo), shi = s(hi);
  if (slo == 0.0) return lo;
  if ((slo > 0.0) == (shi > 0.0)) return std::nullopt;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * dr_hi; ++it) {
    double mid = 0.5 * (lo + hi);
    double sm = s(mid);
    if ((sm > 0.0) == (slo > 0.0)) lo = mid, slo = sm;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

RegionCell one_cell(const PulseEnvelope& p1, const PulseEnvelope& p2, const Medium& m, double dr,
                    double dt) {
  RegionCell c;
  c.dr = dr;
  c.dt = dt;
  PulseEnvelope a = p1;
  a.x0 = p2.x0 + dr;
  a.t0 = p2.t0 + dt;
  try {
    c.label = classify_numeric(a, p2, m);
  } catch (const std::exception&) {
    c.failed = true;
  }
  return c;
}

}  // namespace

std::vector<RegionCell> region_map(const PulseEnvelope& p1, const PulseEnvelope& p2,
                                   const Medium& m, const std::vector<double>& drs,
                                   const std::vector<double>& dts) {
  std::vector<RegionCell> out(drs.size() * dts.size());
  const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 0; k < n; ++k) {
    out[k] = one_cell(p1, p2, m, drs[k % drs.size()], dts[k / drs.size()]);
  }
  return out;
}

std::vector<RegionCell> region_map_serial(const PulseEnvelope& p1, const PulseEnvelope& p2,
                                          const Medium& m, const std::vector<double>& drs,
                                          const std::vector<double>& dts) {
  std::vector<RegionCell> out;
  out.reserve(drs.size() * dts.size());
  for (double dt : dts)
    for (double dr : drs) out.push_back(one_cell(p1, p2, m, dr, dt));
  return out;
}

}  // namespace eos
