#include "eos/pulses.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "eos/errors.hpp"
#include "eos/special.hpp"
#include "eos/units.hpp"

namespace eos {

namespace {

double normal_pdf(double x, double sigma) {
  return std::exp(-0.5 * x * x / (sigma * sigma)) / (std::sqrt(2.0 * pi) * sigma);
}

double box(double x, double width) { return std::abs(x) <= 0.5 * width ? 1.0 / width : 0.0; }

double transverse(Shape s, double x, double w) {
  return s == Shape::Rect ? box(x, w) : normal_pdf(x, w / fwhm_per_sigma);
}

}  // namespace

double envelope_value(const PulseEnvelope& p, double x, double y, double z, double t) {
  if (std::abs(z) > 0.5 * p.length) return 0.0;
  double b = p.n_g / c_light;
  double u = t - p.t0 - (z + 0.5 * p.length) * b;
  return transverse(p.shape, x - p.x0, p.waist) * transverse(p.shape, y - p.y0, p.waist) *
         transverse(p.shape, u, p.duration) / p.length;
}

Profile1D Profile1D::piecewise_linear(std::vector<double> c, std::vector<double> d) {
  Profile1D f;
  f.c = std::move(c);
  f.d = std::move(d);
  return f;
}

Profile1D Profile1D::gauss(double mu, double sigma) {
  Profile1D f;
  f.gaussian = true;
  f.mu = mu;
  f.sigma = sigma;
  return f;
}

Profile1D Profile1D::box_correlation(double a, double b, double center) {
  double outer = 0.5 * (a + b), inner = 0.5 * std::abs(a - b);
  double k = 1.0 / (a * b);
  if (inner == 0.0) {
    return piecewise_linear({center - outer, center, center + outer}, {k, -2.0 * k, k});
  }
  return piecewise_linear({center - outer, center - inner, center + inner, center + outer},
                          {k, -k, -k, k});
}

double Profile1D::value(double x) const {
  if (gaussian) return normal_pdf(x - mu, sigma);
  if (x <= c.front() || x >= c.back()) return 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < c.size() && c[j] < x; ++j) s += d[j] * (x - c[j]);
  return std::max(0.0, s);
}

double Profile1D::d1(double x) const {
  if (gaussian) return -(x - mu) / (sigma * sigma) * value(x);
  if (x <= c.front() || x >= c.back()) return 0.0;
  double s = 0.0;
  for (std::size_t j = 0; j < c.size() && c[j] < x; ++j) s += d[j];
  return s;
}

double Profile1D::d2(double x) const {
  if (!gaussian) return 0.0;
  double u = (x - mu) / sigma;
  return (u * u - 1.0) / (sigma * sigma) * value(x);
}

namespace {

// sum_k mom_k / y^(k+1 + 2 * deriv) with mom_k built from kinks about m
double pl_far_series(const Profile1D& f, double x, bool second) {
  double m = 0.5 * (f.c.front() + f.c.back());
  double y = x - m;
  double s = 0.0;
  double ypow = second ? 1.0 / (y * y * y) : 1.0 / y;
  for (int k = 0; k < 80; ++k) {
    double mom = 0.0;
    for (std::size_t j = 0; j < f.c.size(); ++j) mom += f.d[j] * std::pow(f.c[j] - m, k + 2);
    double term = second ? mom * ypow : mom / ((k + 1.0) * (k + 2.0)) * ypow;
    s += term;
    ypow /= y;
    if (k > 2 && std::abs(term) < 1e-17 * std::abs(s)) break;
  }
  return s;
}

double pl_radius(const Profile1D& f) { return 0.5 * (f.c.back() - f.c.front()); }

}  // namespace

double Profile1D::pv_conv(double x) const {
  if (gaussian) {
    double s2 = std::sqrt(2.0) * sigma;
    return 2.0 / s2 * dawson((x - mu) / s2);
  }
  double r = pl_radius(*this);
  if (std::abs(x - 0.5 * (c.front() + c.back())) > 4.0 * r) return pl_far_series(*this, x, false);
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    double y = x - c[j];
    if (y != 0.0) s += d[j] * y * std::log(std::abs(y));
  }
  return s;
}

double Profile1D::pv_conv_d2(double x) const {
  if (gaussian) {
    double s2 = std::sqrt(2.0) * sigma;
    return dawson_d2((x - mu) / s2) / (s2 * sigma * sigma);
  }
  double r = pl_radius(*this);
  if (std::abs(x - 0.5 * (c.front() + c.back())) > 4.0 * r) return pl_far_series(*this, x, true);
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += d[j] / (x - c[j]);
  return s;
}

std::complex<double> Profile1D::fourier(double w) const {
  using cd = std::complex<double>;
  if (gaussian) return std::exp(cd(-0.5 * w * w * sigma * sigma, w * mu));
  double m = 0.5 * (c.front() + c.back());
  double r = pl_radius(*this);
  if (std::abs(w) * r < 0.5) {
    // moments about m: int (x-m)^k f = sum_j d_j (c_j-m)^(k+2) / ((k+1)(k+2))
    cd s = 0.0, fac = 1.0;
    for (int k = 0; k < 40; ++k) {
      double mom = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) mom += d[j] * std::pow(c[j] - m, k + 2);
      mom /= (k + 1.0) * (k + 2.0);
      s += fac * mom;
      fac *= cd(0.0, w) / double(k + 1);
      if (std::abs(fac) * std::pow(r, k + 1) < 1e-18) break;
    }
    return std::exp(cd(0.0, w * m)) * s;
  }
  cd s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += d[j] * std::exp(cd(0.0, w * c[j]));
  return -s / (w * w);
}

std::pair<double, double> Profile1D::support(double k_sigma) const {
  if (gaussian) return {mu - k_sigma * sigma, mu + k_sigma * sigma};
  return {c.front(), c.back()};
}

Profile1D Profile1D::shifted(double s) const {
  Profile1D f = *this;
  f.mu += s;
  for (double& v : f.c) v += s;
  return f;
}

Profile1D Profile1D::mirrored() const {
  Profile1D f = *this;
  f.mu = -mu;
  std::reverse(f.c.begin(), f.c.end());
  std::reverse(f.d.begin(), f.d.end());
  for (double& v : f.c) v = -v;
  return f;
}

PointMasses second_derivative_masses(const Profile1D& f) {
  if (f.gaussian) return {};
  return {f.c, f.d};
}

double OverlapKernel::value(double rx, double ry, double rz, double tau) const {
  return x.value(rx) * y.value(ry) * z.value(rz) * t.value(tau - dt - b * rz);
}

double OverlapKernel::d2_tau(double rx, double ry, double rz, double tau) const {
  return x.value(rx) * y.value(ry) * z.value(rz) * t.d2(tau - dt - b * rz);
}

double OverlapKernel::d2_x(double rx, double ry, double rz, double tau) const {
  return x.d2(rx) * y.value(ry) * z.value(rz) * t.value(tau - dt - b * rz);
}

OverlapKernel OverlapKernel::with_delay(double new_dt) const {
  OverlapKernel k = *this;
  k.dt = new_dt;
  return k;
}

OverlapKernel overlap_kernel(const PulseEnvelope& p1, const PulseEnvelope& p2) {
  if (p1.length != p2.length) throw ValidationError("pulses must share the crystal length");
  if (p1.n_g != p2.n_g) throw ValidationError("pulses must share the group index");
  if (p1.shape != p2.shape) throw ValidationError("pulse shapes must match");
  OverlapKernel k;
  k.shape = p1.shape;
  k.length = p1.length;
  k.b = p1.n_g / c_light;
  k.dr = p1.x0 - p2.x0;
  k.dy = p1.y0 - p2.y0;
  k.dt = p1.t0 - p2.t0;
  k.identical = p1.waist == p2.waist && p1.duration == p2.duration;
  if (p1.shape == Shape::Rect) {
    k.x = Profile1D::box_correlation(p1.waist, p2.waist, k.dr);
    k.y = Profile1D::box_correlation(p1.waist, p2.waist, k.dy);
    k.t = Profile1D::box_correlation(p1.duration, p2.duration, 0.0);
  } else {
    auto sg = [](double a, double b) { return std::hypot(a, b) / fwhm_per_sigma; };
    k.x = Profile1D::gauss(k.dr, sg(p1.waist, p2.waist));
    k.y = Profile1D::gauss(k.dy, sg(p1.waist, p2.waist));
    k.t = Profile1D::gauss(0.0, sg(p1.duration, p2.duration));
  }
  k.z = Profile1D::box_correlation(p1.length, p2.length, 0.0);
  return k;
}

namespace {
std::mutex fftw_plan_mutex;  // planner is not thread-safe
}

OverlapGrid::OverlapGrid(const PulseEnvelope& p1, const PulseEnvelope& p2, double dz,
                         double dtau) {
  auto k = overlap_kernel(p1, p2);
  x_ = k.x;
  y_ = k.y;
  double L = p1.length;
  int nzc = static_cast<int>(std::lround(L / dz));
  if (nzc < 8) throw ValidationError("overlap grid: rho_z step cannot resolve the crystal length");
  if (dtau > std::min(p1.duration, p2.duration) / 8.0)
    throw ValidationError("overlap grid: tau step cannot resolve the pulse duration");
  dz_ = L / nzc;
  dtau_ = dtau;
  double b = p1.n_g / c_light;
  double wing = 8.0 * std::max(p1.duration, p2.duration);
  double tmin = std::min(p1.t0, p2.t0) - wing;
  double tmax = std::max(p1.t0, p2.t0) + L * b + wing;
  int ntc = static_cast<int>(std::ceil((tmax - tmin) / dtau)) + 1;
  int pz = 2 * nzc, pt = 2 * ntc;

  auto sample = [&](const PulseEnvelope& p, std::vector<double>& f) {
    f.assign(std::size_t(pz) * pt, 0.0);
    for (int i = 0; i < nzc; ++i) {
      double zi = -0.5 * L + (i + 0.5) * dz_;
      for (int j = 0; j < ntc; ++j) {
        double u = tmin + j * dtau - p.t0 - (zi + 0.5 * L) * b;
        f[std::size_t(i) * pt + j] = transverse(p.shape, u, p.duration) / L;
      }
    }
  };
  std::vector<double> f1, f2;
  sample(p1, f1);
  sample(p2, f2);

  int ptc = pt / 2 + 1;
  std::vector<fftw_complex> F1(std::size_t(pz) * ptc), F2(std::size_t(pz) * ptc);
  std::vector<double> corr(std::size_t(pz) * pt), d2(std::size_t(pz) * pt);
  fftw_plan a, bp, inv;
  {
    std::lock_guard lock(fftw_plan_mutex);
    a = fftw_plan_dft_r2c_2d(pz, pt, f1.data(), F1.data(), FFTW_ESTIMATE);
    bp = fftw_plan_dft_r2c_2d(pz, pt, f2.data(), F2.data(), FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_2d(pz, pt, F1.data(), corr.data(), FFTW_ESTIMATE);
  }
  fftw_execute(a);
  fftw_execute(bp);
  // corr[k, m] = sum_ij f1[i+k, j+m] f2[i, j]  <=>  F1 * conj(F2)
  std::vector<fftw_complex> prod(F1.size()), prod2(F1.size());
  for (int i = 0; i < pz; ++i) {
    for (int j = 0; j < ptc; ++j) {
      std::size_t q = std::size_t(i) * ptc + j;
      double re = F1[q][0] * F2[q][0] + F1[q][1] * F2[q][1];
      double im = F1[q][1] * F2[q][0] - F1[q][0] * F2[q][1];
      double kt = 2.0 * pi * j / (pt * dtau);
      prod[q][0] = re;
      prod[q][1] = im;
      prod2[q][0] = -kt * kt * re;
      prod2[q][1] = -kt * kt * im;
    }
  }
  fftw_plan inv2;
  {
    std::lock_guard lock(fftw_plan_mutex);
    fftw_destroy_plan(inv);
    inv = fftw_plan_dft_c2r_2d(pz, pt, prod.data(), corr.data(), FFTW_ESTIMATE);
    inv2 = fftw_plan_dft_c2r_2d(pz, pt, prod2.data(), d2.data(), FFTW_ESTIMATE);
  }
  fftw_execute(inv);
  fftw_execute(inv2);
  {
    std::lock_guard lock(fftw_plan_mutex);
    fftw_destroy_plan(a);
    fftw_destroy_plan(bp);
    fftw_destroy_plan(inv);
    fftw_destroy_plan(inv2);
  }
  double norm = dz_ * dtau_ / (double(pz) * pt);
  nz_ = 2 * nzc - 1;
  nt_ = 2 * ntc - 1;
  tau0_ = -(ntc - 1) * dtau_;
  zt_.assign(std::size_t(nz_) * nt_, 0.0);
  zt_d2_.assign(std::size_t(nz_) * nt_, 0.0);
  for (int i = 0; i < nz_; ++i) {
    int kz = i - (nzc - 1);
    int iz = (kz + pz) % pz;
    for (int j = 0; j < nt_; ++j) {
      int kt = j - (ntc - 1);
      int it = (kt + pt) % pt;
      zt_[std::size_t(i) * nt_ + j] = corr[std::size_t(iz) * pt + it] * norm;
      zt_d2_[std::size_t(i) * nt_ + j] = d2[std::size_t(iz) * pt + it] * norm;
    }
  }
}

double OverlapGrid::bilinear(const std::vector<double>& a, double rz, double tau) const {
  double fi = rz / dz_ + (nz_ / 2);
  double fj = (tau - tau0_) / dtau_;
  if (fi < 0.0 || fj < 0.0 || fi > nz_ - 1 || fj > nt_ - 1) return 0.0;
  int i = std::min(int(fi), nz_ - 2), j = std::min(int(fj), nt_ - 2);
  double u = fi - i, v = fj - j;
  auto at = [&](int ii, int jj) { return a[std::size_t(ii) * nt_ + jj]; };
  return (1 - u) * ((1 - v) * at(i, j) + v * at(i, j + 1)) +
         u * ((1 - v) * at(i + 1, j) + v * at(i + 1, j + 1));
}

double OverlapGrid::value(double rx, double ry, double rz, double tau) const {
  return x_.value(rx) * y_.value(ry) * bilinear(zt_, rz, tau);
}

double OverlapGrid::d2_tau(double rx, double ry, double rz, double tau) const {
  return x_.value(rx) * y_.value(ry) * bilinear(zt_d2_, rz, tau);
}

double OverlapGrid::integral() const {
  double s = 0.0;
  for (double v : zt_) s += v;
  return s * dz_ * dtau_;
}

}  // namespace eos
