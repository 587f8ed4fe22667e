#pragma once
#include <complex>
#include <utility>
#include <vector>

namespace eos {

enum class Shape { Rect, Gauss };

struct PulseEnvelope {
  Shape shape = Shape::Rect;
  double waist = 10.0;      // full width (rect) or FWHM (gauss), um
  double duration = 185.0;  // full width (rect) or FWHM (gauss), fs
  double x0 = 0.0, y0 = 0.0;
  double t0 = 0.0;      // launch delay, fs
  double length = 100;  // crystal length L, um
  double n_g = 3.556;
};

// Normalized envelope L(r, t); zero outside |z| <= L/2.
double envelope_value(const PulseEnvelope& p, double x, double y, double z, double t);

// One-dimensional correlation profile. Piecewise linear profiles are stored
// through their second derivative, f'' = sum_j d_j delta(x - c_j); Gaussians
// through mean and standard deviation.
struct Profile1D {
  bool gaussian = false;
  std::vector<double> c, d;  // kinks
  double mu = 0.0, sigma = 1.0;

  static Profile1D piecewise_linear(std::vector<double> c, std::vector<double> d);
  static Profile1D gauss(double mu, double sigma);
  // correlation of two centered boxes of widths a, b, shifted to `center`
  static Profile1D box_correlation(double a, double b, double center);

  double value(double x) const;
  double d1(double x) const;
  // regular part of f''; piecewise linear profiles return 0 and keep their
  // point masses in (c, d)
  double d2(double x) const;
  // PV integral of f(u) / (x - u) du and its second derivative in x
  double pv_conv(double x) const;
  double pv_conv_d2(double x) const;
  // integral of f(x) exp(i w x) dx
  std::complex<double> fourier(double w) const;
  // hard support for piecewise linear, mu +- k sigma for Gaussians
  std::pair<double, double> support(double k_sigma = 9.0) const;
  Profile1D shifted(double s) const;
  Profile1D mirrored() const;  // f(-x)
};

// K12(rho, tau) = X(rho_x) Y(rho_y) Lz(rho_z) T(tau - dt - b rho_z), exact.
struct OverlapKernel {
  Profile1D x, y, z, t;
  double dr = 0.0;  // x1 - x2
  double dy = 0.0;  // y1 - y2
  double dt = 0.0;  // t1 - t2
  double b = 0.0;   // n_g / c
  double length = 0.0;
  Shape shape = Shape::Rect;
  bool identical = true;  // both pulses share waist and duration

  double value(double rx, double ry, double rz, double tau) const;
  double d2_tau(double rx, double ry, double rz, double tau) const;  // regular part
  double d2_x(double rx, double ry, double rz, double tau) const;    // regular part
  OverlapKernel with_delay(double new_dt) const;
};

OverlapKernel overlap_kernel(const PulseEnvelope& p1, const PulseEnvelope& p2);

// Point masses of a piecewise linear profile's second derivative.
struct PointMasses {
  std::vector<double> at, weight;
};
PointMasses second_derivative_masses(const Profile1D& f);

// (rho_z, tau) correlation sampled on a grid by FFT cross-correlation of the
// two sampled envelopes, times the exact transverse factors.
class OverlapGrid {
 public:
  OverlapGrid(const PulseEnvelope& p1, const PulseEnvelope& p2, double dz, double dtau);

  double value(double rx, double ry, double rz, double tau) const;
  // second tau-derivative by spectral differentiation along tau
  double d2_tau(double rx, double ry, double rz, double tau) const;
  // integral of the (rho_z, tau) grid times the transverse normalizations
  double integral() const;

  double dz() const { return dz_; }
  double dtau() const { return dtau_; }
  int nz() const { return nz_; }
  int ntau() const { return nt_; }
  double rz_at(int i) const { return (i - nz_ / 2) * dz_; }
  double tau_at(int j) const { return tau0_ + j * dtau_; }
  double zt(int i, int j) const { return zt_[i * nt_ + j]; }

 private:
  double bilinear(const std::vector<double>& a, double rz, double tau) const;
  Profile1D x_, y_;
  double dz_, dtau_, tau0_ = 0.0;
  int nz_ = 0, nt_ = 0;
  std::vector<double> zt_, zt_d2_;
};

}  // namespace eos
