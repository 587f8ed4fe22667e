#pragma once
#include <complex>
#include <utility>
#include <vector>

#include "eos/kernels.hpp"
#include "eos/pulses.hpp"
#include "eos/waveplate.hpp"

namespace eos {

struct IntegratorOptions {
  double tol = 1e-8;
  double rho_cutoff = 0.1;  // um, radius excluded around rho = 0
  int n_transverse = 64;    // Gauss-Hermite nodes per Gaussian transverse axis
  int gl_order = 8;         // nodes per Gauss-Legendre panel
  int z_panels = 40;        // panels over [-L, L]
  int rect_panels = 6;      // panels per linear piece of a rect profile
  int ball_radial = 24, ball_polar = 24, ball_azimuth = 32;
  bool parallel = true;
};

// Angle-independent integrals of one geometry.
struct Integrals {
  double i_c = 0.0;
  double i_r_prime = 0.0;
  double i_r_dprime = 0.0;
};

// I_C = int K12 C
double integrate_vacuum(const OverlapKernel& k12, const KernelSet& ks,
                        const IntegratorOptions& opt = {});
// I_R = int K12 R (retarded)
double integrate_response(const OverlapKernel& k12, const KernelSet& ks,
                          const IntegratorOptions& opt = {});
// (I_R', I_R'') from I_R at +dt and -dt
std::pair<double, double> integrate_source(const OverlapKernel& k12, const KernelSet& ks,
                                           const IntegratorOptions& opt = {});
Integrals integrate_all(const OverlapKernel& k12, const KernelSet& ks,
                        const IntegratorOptions& opt = {});

// p_vac i_c - (hbar/2)(p_s' i_r' + p_s'' i_r'')
double assemble_signal(const WavePlateCoeffs& c, double i_c, double i_r_prime, double i_r_dprime);

// Quadrature nodes over rho whose weights already hold X(rho_x) Y(rho_y) Lz(rho_z).
struct SpatialNodes {
  std::vector<double> x, y, z, w;
  std::size_t size() const { return w.size(); }
};
// fold_z keeps rho_z >= 0 with doubled weights (integrand even in rho_z).
SpatialNodes spatial_nodes(const OverlapKernel& k12, const IntegratorOptions& opt, bool fold_z);

// Delay-independent spectral moments M(w) = int X Y Lz cos(w b rho_z) R~(rho, w)
// on the band grid. Evaluating a delay is then a 1-D frequency sum.
class SpectralMoments {
 public:
  SpectralMoments(const OverlapKernel& k12, const KernelSet& ks, const IntegratorOptions& opt);
  Integrals at(double dt) const;
  const std::vector<double>& omega() const { return omega_; }
  const std::vector<std::complex<double>>& moments() const { return m_; }
  std::size_t node_count() const { return nodes_; }

 private:
  std::vector<double> omega_, weight_;  // weight = trapezoid * window * A^(w) / pi
  std::vector<std::complex<double>> m_;
  std::size_t nodes_ = 0;
};

// Moment sums with and without the OpenMP frequency loop; results are
// identical because every frequency is summed by exactly one thread.
std::vector<std::complex<double>> spectral_moments_parallel(const SpatialNodes& n,
                                                            const KernelSet& ks, double b,
                                                            const std::vector<double>& omega);
std::vector<std::complex<double>> spectral_moments_serial(const SpatialNodes& n,
                                                          const KernelSet& ks, double b,
                                                          const std::vector<double>& omega);

// Generic reduced integral int K12(rho, tau) F(rho, tau) for a smooth F.
double integrate_smooth(const OverlapKernel& k12, const SmoothKernel& f,
                        const IntegratorOptions& opt = {});

}  // namespace eos
