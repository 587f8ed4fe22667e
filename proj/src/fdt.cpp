#include "eos/fdt.hpp"

#include <algorithm>
#include <cmath>
#include <Eigen/Dense>

#include "eos/errors.hpp"
#include "eos/units.hpp"

namespace eos {

namespace {

// int_{s0}^inf (A/s + B/s^2) / (x - s) ds for s0 > x
double tail_integral(double x, double s0, double a, double b) {
  double r = x / s0;
  double ia, ib;  // integrals of 1/(s (x - s)) and 1/(s^2 (x - s))
  if (std::abs(r) < 1e-3) {
    ia = -(1.0 + r / 2 + r * r / 3 + r * r * r / 4) / s0;
    ib = -(0.5 + r / 3 + r * r / 4 + r * r * r / 5) / (s0 * s0);
  } else {
    double l = std::log1p(-r);
    ia = l / x;
    ib = 1.0 / (x * s0) + l / (x * x);
  }
  return a * ia + b * ib;
}

// least squares A/s + B/s^2 on samples (s, f)
std::pair<double, double> fit_tail(const std::vector<double>& s, const std::vector<double>& f) {
  Eigen::MatrixXd m(s.size(), 2);
  Eigen::VectorXd y(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    m(i, 0) = 1.0 / s[i];
    m(i, 1) = 1.0 / (s[i] * s[i]);
    y(i) = f[i];
  }
  Eigen::Vector2d c = m.colPivHouseholderQr().solve(y);
  return {c(0), c(1)};
}

std::vector<double> transform(const std::vector<double>& f, double h, bool tail_fit,
                              std::vector<double>* tail_out) {
  const std::size_t n = f.size();
  if (n < 64) throw ValidationError("hilbert transform needs at least 64 samples, got " +
                                    std::to_string(n));
  if (!(h > 0.0)) throw ValidationError("hilbert transform needs a positive step");
  std::vector<double> df(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) df[i] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
    else if (i == n - 1) df[i] = (3 * f[n - 1] - 4 * f[n - 2] + f[n - 3]) / (2 * h);
    else df[i] = (f[i + 1] - f[i - 1]) / (2 * h);
  }
  // window [a, b] = cell edges; positions measured in steps
  const double a = -0.5, b = n - 0.5;
  double al = 0, bl = 0, ar = 0, br = 0;
  const double mid = 0.5 * (n - 1);
  if (tail_fit) {
    std::size_t m = std::max<std::size_t>(8, n / 8);
    std::vector<double> s, y;
    for (std::size_t i = n - m; i < n; ++i) s.push_back((i - mid) * h), y.push_back(f[i]);
    std::tie(ar, br) = fit_tail(s, y);
    s.clear(), y.clear();
    for (std::size_t i = 0; i < m; ++i) s.push_back((i - mid) * h), y.push_back(f[i]);
    std::tie(al, bl) = fit_tail(s, y);
  }
  std::vector<double> g(n);
  if (tail_out) tail_out->assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      acc += (f[j] - f[i]) / ((double(i) - double(j)));
    }
    // sum h (f_j - f_i) / (h (i - j)) plus the diagonal limit -h f'
    acc += -h * df[i];
    acc += f[i] * std::log((i - a) / (b - i));
    if (tail_fit) {
      double x = (i - mid) * h, s0 = (b - mid) * h;
      double t = tail_integral(x, s0, ar, br) - tail_integral(-x, s0, -al, bl);
      acc += t;
      if (tail_out) (*tail_out)[i] = t / pi;
    }
    g[i] = acc / pi;
  }
  return g;
}

}  // namespace

std::vector<double> hilbert_transform(const std::vector<double>& f, double step, bool tail_fit) {
  return transform(f, step, tail_fit, nullptr);
}

FdtReport verify_fdt_signal(const std::vector<SignalRecord>& scan, bool tail_fit, bool use_prime,
                            bool identical_pulses) {
  FdtReport r;
  r.tail_fit = tail_fit;
  r.identical_pulses = identical_pulses;
  const std::size_t n = scan.size();
  if (n < 64) throw ValidationError("fdt check needs at least 64 delays, got " + std::to_string(n));
  double h = scan[1].delta_t - scan[0].delta_t;
  for (std::size_t i = 0; i < n; ++i) {
    if (scan[i].status != "ok")
      throw NumericError("fdt check: scan point " + std::to_string(scan[i].delta_t) + " fs failed");
    if (i && std::abs(scan[i].delta_t - scan[i - 1].delta_t - h) > 1e-9 * std::abs(h))
      throw ValidationError("fdt check needs a uniform delay grid");
    r.delta_t.push_back(scan[i].delta_t);
    r.g_vac.push_back(scan[i].g_vac);
    r.two_g_r_dprime.push_back(2.0 * (use_prime ? scan[i].g_r_prime : scan[i].g_r_dprime));
  }
  double peak = 0.0;
  for (double v : r.g_vac) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw ValidationError("fdt check: g_vac vanishes on the whole window");
  r.edge_ratio = std::max(std::abs(r.g_vac.front()), std::abs(r.g_vac.back())) / peak;
  r.window_lo = r.delta_t.front();
  r.window_hi = r.delta_t.back();
  if (r.edge_ratio >= 0.05)
    throw ValidationError("fdt check: window too narrow, edge |g_vac| / peak = " +
                          std::to_string(r.edge_ratio));
  std::vector<double> tail;
  r.prediction = transform(r.two_g_r_dprime, h, tail_fit, &tail);
  r.interior_lo = static_cast<std::size_t>(std::ceil(0.2 * (n - 1)));
  r.interior_hi = n - r.interior_lo;
  double num = 0, den = 0, mx = 0, pk = 0;
  r.residual.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.residual[i] = r.prediction[i] - r.g_vac[i];
    if (i < r.interior_lo || i >= r.interior_hi) continue;
    num += r.residual[i] * r.residual[i];
    den += r.g_vac[i] * r.g_vac[i];
    mx = std::max(mx, std::abs(r.residual[i]));
    pk = std::max(pk, std::abs(r.g_vac[i]));
    r.tail_estimate = std::max(r.tail_estimate, std::abs(tail[i]));
  }
  r.l2_relative = den > 0 ? std::sqrt(num / den) : INFINITY;
  r.max_relative = pk > 0 ? mx / pk : INFINITY;
  r.tail_estimate /= peak;
  return r;
}

}  // namespace eos
