#pragma once
#include <complex>
#include <functional>

#include "eos/medium.hpp"

namespace eos {

enum class KernelMode { DispersionlessAnalytic, DispersiveSpectral, Custom };

// Smooth stand-ins for C and R, used by oracle tests and null-kernel checks.
using SmoothKernel = std::function<double(double rx, double ry, double rz, double tau)>;

struct KernelSet {
  Medium medium = Dispersionless{};
  KernelMode mode = KernelMode::DispersionlessAnalytic;
  double omega_max = 0.0;     // rad/fs, band edge of the spectral path
  int n_omega = 2048;         // samples on [0, omega_max]
  double taper = 0.2;         // fraction of the band rolled off by the window
  SmoothKernel custom_c, custom_r;

  double n_cone() const { return cone_index(medium); }
  double c_n() const;
  // band window: 1 below (1 - taper) omega_max, C-infinity roll-off to 0
  double window(double omega) const;
};

KernelSet dispersionless_kernels(double n, double n_g);
KernelSet spectral_kernels(const Medium& m, double omega_max, int n_omega);

// R~(rho, omega), xx component of the homogeneous-medium Green function.
std::complex<double> response_spectral(const KernelSet& ks, double rx, double ry, double rz,
                                       double omega);
// C~ = hbar sign(omega) Im R~
double correlation_spectral(const KernelSet& ks, double rx, double ry, double rz, double omega);

// R(rho, tau) = w0 delta(tau - tc) + w1 delta'(tau - tc) + w2 delta''(tau - tc) + regular
struct DistValue {
  double tc = 0.0;
  double w0 = 0.0, w1 = 0.0, w2 = 0.0;
  double regular = 0.0;
};

// Delta weights on the light cone tc = rho / c_n (dispersionless closed form).
DistValue response_on_cone(const KernelSet& ks, double rx, double ry, double rz);
// Pointwise value. Dispersionless: the delta weights are returned only when
// tau sits on the cone, so every off-cone or tau < 0 query is exactly zero.
// Spectral: windowed numerical inverse transform in `regular`.
DistValue response_time(const KernelSet& ks, double rx, double ry, double rz, double tau);

// Pointwise C. Dispersionless closed form throws DomainError on the cone.
double correlation_time(const KernelSet& ks, double rx, double ry, double rz, double tau);

// Distributional pairing of the dispersionless closed-form C(rho, .) with a
// test function phi (and its first two derivatives), PV on the cone.
double correlation_pairing(const KernelSet& ks, double rx, double ry, double rz,
                           const std::function<double(double)>& phi,
                           const std::function<double(double)>& dphi,
                           const std::function<double(double)>& d2phi, double tau_lo,
                           double tau_hi, double tol = 1e-11);

struct SplitResponse {
  // each returns the distribution at (rho, tau): weights refer to tc = +-rho / c_n
  std::function<DistValue(double, double, double, double)> even, odd;
};
// R' = [R(tau) + R(-tau)] / 2, R'' = [R(tau) - R(-tau)] / 2
SplitResponse split_response(const KernelSet& ks);

}  // namespace eos
