#include "eos/kernels.hpp"

#include <cmath>

#include "eos/errors.hpp"
#include "eos/quadrature.hpp"
#include "eos/special.hpp"
#include "eos/units.hpp"

namespace eos {

using cd = std::complex<double>;

double KernelSet::c_n() const { return c_light / n_cone(); }

double KernelSet::window(double omega) const {
  double w = std::abs(omega);
  if (w >= omega_max) return 0.0;
  double w1 = (1.0 - taper) * omega_max;
  if (w <= w1) return 1.0;
  return 1.0 - smooth_step((w - w1) / (omega_max - w1));
}

KernelSet dispersionless_kernels(double n, double n_g) {
  KernelSet ks;
  ks.medium = Dispersionless{n, n_g};
  ks.mode = KernelMode::DispersionlessAnalytic;
  ks.omega_max = 2.0 * pi * 0.015;
  return ks;
}

KernelSet spectral_kernels(const Medium& m, double omega_max, int n_omega) {
  KernelSet ks;
  ks.medium = m;
  ks.mode = KernelMode::DispersiveSpectral;
  ks.omega_max = omega_max;
  ks.n_omega = n_omega;
  return ks;
}

namespace {

void require_nonzero(double rho) {
  if (!(rho > 0.0)) throw DomainError("kernel evaluated at coincidence rho = 0");
}

}  // namespace

std::complex<double> response_spectral(const KernelSet& ks, double rx, double ry, double rz,
                                       double omega) {
  double rho = std::sqrt(rx * rx + ry * ry + rz * rz);
  require_nonzero(rho);
  if (omega < 0.0) return std::conj(response_spectral(ks, rx, ry, rz, -omega));
  double c2 = rx * rx / (rho * rho);
  double s2 = 1.0 - c2;
  cd eps = permittivity(ks.medium, omega);
  if (omega == 0.0) return mu0 * c_light * c_light * (3.0 * c2 - 1.0) / (4.0 * pi * eps * rho * rho * rho);
  cd n = refractive_index(ks.medium, omega);
  cd krho = n * omega * rho / c_light;
  cd g = std::exp(cd(0.0, 1.0) * krho) / (4.0 * pi * rho);
  cd inv = 1.0 / krho;
  return mu0 * omega * omega * g * (s2 + (3.0 * c2 - 1.0) * (inv * inv - cd(0.0, 1.0) * inv));
}

double correlation_spectral(const KernelSet& ks, double rx, double ry, double rz, double omega) {
  if (omega == 0.0) return 0.0;
  double sg = omega > 0.0 ? 1.0 : -1.0;
  return hbar * sg * response_spectral(ks, rx, ry, rz, omega).imag();
}

DistValue response_on_cone(const KernelSet& ks, double rx, double ry, double rz) {
  double rho = std::sqrt(rx * rx + ry * ry + rz * rz);
  require_nonzero(rho);
  double cn = ks.c_n();
  double c2 = rx * rx / (rho * rho);
  double k = mu0 / (4.0 * pi);
  DistValue d;
  d.tc = rho / cn;
  d.w0 = k * cn * cn * (3.0 * c2 - 1.0) / (rho * rho * rho);
  d.w1 = k * cn * (3.0 * c2 - 1.0) / (rho * rho);
  d.w2 = -k * (1.0 - c2) / rho;
  return d;
}

namespace {

// (1/pi) int_0^wmax W(w) Re[F(w) e^{-i w tau}] dw on the uniform band grid
template <class F>
double band_inverse(const KernelSet& ks, double tau, F spectrum) {
  int n = ks.n_omega;
  double h = ks.omega_max / (n - 1);
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    double w = j * h;
    double wt = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    double win = ks.window(w);
    if (win == 0.0) continue;
    s += wt * win * (spectrum(w) * std::exp(cd(0.0, -w * tau))).real();
  }
  return s * h / pi;
}

}  // namespace

DistValue response_time(const KernelSet& ks, double rx, double ry, double rz, double tau) {
  if (ks.mode == KernelMode::Custom) {
    DistValue d;
    d.regular = ks.custom_r ? ks.custom_r(rx, ry, rz, tau) : 0.0;
    return d;
  }
  if (ks.mode == KernelMode::DispersionlessAnalytic) {
    DistValue d = response_on_cone(ks, rx, ry, rz);
    if (!(std::abs(tau - d.tc) <= 1e-12 * d.tc)) {
      d.w0 = d.w1 = d.w2 = 0.0;
    }
    return d;
  }
  DistValue d;
  d.regular = band_inverse(ks, tau, [&](double w) { return response_spectral(ks, rx, ry, rz, w); });
  return d;
}

double correlation_time(const KernelSet& ks, double rx, double ry, double rz, double tau) {
  if (ks.mode == KernelMode::Custom) return ks.custom_c ? ks.custom_c(rx, ry, rz, tau) : 0.0;
  double rho = std::sqrt(rx * rx + ry * ry + rz * rz);
  require_nonzero(rho);
  if (ks.mode == KernelMode::DispersiveSpectral) {
    return band_inverse(ks, tau,
                        [&](double w) { return cd(correlation_spectral(ks, rx, ry, rz, w)); });
  }
  double cn = ks.c_n();
  double a = 1.0 / cn;
  double p = a * rho - tau, m = a * rho + tau;
  if (p == 0.0 || m == 0.0) throw DomainError("correlation queried on the light cone");
  double c2 = rx * rx / (rho * rho);
  double q = 3.0 * c2 - 1.0;
  double s1 = 1.0 / p + 1.0 / m;
  double s2 = 1.0 / (p * p) + 1.0 / (m * m);
  double s3 = 1.0 / (p * p * p) + 1.0 / (m * m * m);
  double k = mu0 * hbar / (8.0 * pi * pi);
  return k * (cn * cn * q / (rho * rho * rho) * s1 + cn * q / (rho * rho) * s2 -
              2.0 * (1.0 - c2) / rho * s3);
}

double correlation_pairing(const KernelSet& ks, double rx, double ry, double rz,
                           const std::function<double(double)>& phi,
                           const std::function<double(double)>& dphi,
                           const std::function<double(double)>& d2phi, double tau_lo,
                           double tau_hi, double tol) {
  double rho = std::sqrt(rx * rx + ry * ry + rz * rz);
  require_nonzero(rho);
  double cn = ks.c_n();
  double tc = rho / cn;
  double c2 = rx * rx / (rho * rho);
  double q = 3.0 * c2 - 1.0;
  // <1/p, g> and <1/m, g> with p = tc - tau, m = tc + tau
  auto pv_p = [&](const std::function<double(double)>& g) {
    return pv_integrate([&](double t) { return g(t) / (tc - t); }, tau_lo, tau_hi, {tc}, tol);
  };
  auto pv_m = [&](const std::function<double(double)>& g) {
    return pv_integrate([&](double t) { return g(t) / (tc + t); }, tau_lo, tau_hi, {-tc}, tol);
  };
  double S1 = pv_p(phi) + pv_m(phi);
  // 1/p^2 = d/dtau (1/p), 1/m^2 = -d/dtau (1/m); 1/p^3, 1/m^3 = (1/2) d2/dtau2
  double S2 = -pv_p(dphi) + pv_m(dphi);
  double S3 = 0.5 * (pv_p(d2phi) + pv_m(d2phi));
  double k = mu0 * hbar / (8.0 * pi * pi);
  return k * (cn * cn * q / (rho * rho * rho) * S1 + cn * q / (rho * rho) * S2 -
              2.0 * (1.0 - c2) / rho * S3);
}

SplitResponse split_response(const KernelSet& ks) {
  SplitResponse s;
  auto make = [ks](double sign) {
    return [ks, sign](double rx, double ry, double rz, double tau) {
      if (ks.mode == KernelMode::DispersionlessAnalytic) {
        DistValue cone = response_on_cone(ks, rx, ry, rz);
        DistValue d;
        if (std::abs(tau - cone.tc) <= 1e-12 * cone.tc) {
          d = cone;
          d.w0 *= 0.5;
          d.w1 *= 0.5;
          d.w2 *= 0.5;
        } else if (std::abs(tau + cone.tc) <= 1e-12 * cone.tc) {
          // R(-tau) carries delta^(k)(-tau - tc) = (-1)^k delta^(k)(tau + tc)
          d.tc = -cone.tc;
          d.w0 = 0.5 * sign * cone.w0;
          d.w1 = -0.5 * sign * cone.w1;
          d.w2 = 0.5 * sign * cone.w2;
        }
        return d;
      }
      DistValue a = response_time(ks, rx, ry, rz, tau);
      DistValue b = response_time(ks, rx, ry, rz, -tau);
      a.regular = 0.5 * (a.regular + sign * b.regular);
      return a;
    };
  };
  s.even = make(1.0);
  s.odd = make(-1.0);
  return s;
}

}  // namespace eos
