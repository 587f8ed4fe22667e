#pragma once
#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace eos {

struct Dispersionless {
  double n = 3.33;
  double n_g = 3.556;
};

// Single-phonon Lorentz oscillator, frequencies in rad/fs.
struct Lorentz {
  double eps_inf = 9.09;
  double omega_to = 0.0;
  double omega_lo = 0.0;
  double gamma = 0.0;
  double n_g = 3.556;
};

Lorentz gap_like_lorentz();  // GaP-like TO phonon, n(0) ~ 3.31

// Sampled permittivity with shape-preserving cubic (PCHIP) interpolation of
// Re and Im separately. Omega in rad/fs.
struct TablePermittivity {
  std::vector<double> omega, re, im;
  double n_g = 3.556;
  std::shared_ptr<const struct TableInterp> interp;  // built by make_table
};

TablePermittivity make_table(std::vector<double> omega, std::vector<double> re,
                             std::vector<double> im, double n_g);

using Medium = std::variant<Dispersionless, Lorentz, TablePermittivity>;

// eps(omega); negative omega returns conj(eps(|omega|)). Table media throw
// DomainError outside the sampled band.
std::complex<double> permittivity(const Medium& m, double omega);
// Principal root, Im n >= 0.
std::complex<double> refractive_index(const Medium& m, double omega);

double group_index(const Medium& m);
// Real index used for the light-cone speed: n for the dispersionless medium,
// Re n at the lowest valid frequency otherwise.
double cone_index(const Medium& m);
bool is_dispersionless(const Medium& m);
// [lo, hi] band where permittivity is defined (hi = +inf for analytic models)
std::pair<double, double> valid_band(const Medium& m);

// max_k |Re eps - eps_inf - (2/pi) PV int W Im eps(W) / (W^2 - w_k^2) dW| / |eps(w_k)|
// For tables eps_inf is the least-squares offset over the grid.
double kramers_kronig_residual(const Medium& m, const std::vector<double>& grid);

// CSV with header omega_THz,re_eps,im_eps
TablePermittivity load_permittivity_table(const std::string& path, double n_g);

}  // namespace eos
