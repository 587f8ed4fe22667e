#pragma once
#include <complex>

namespace eos {

struct WavePlateCoeffs {
  std::complex<double> p1, p2;
  double p_vac = 0.0;       // Im p1 * Im p2
  double p_s_prime = 0.0;   // Im(p1 p2)
  double p_s_dprime = 0.0;  // Im(p1 conj p2)
};

// Angle reduced to [0, 2pi). Throws DomainError unless cos(theta) <= 0.
double reduce_angle(double theta);
bool angle_in_domain(double theta);

// P(theta) = sqrt(-cos theta) + i sqrt(2) cos(theta / 2), theta taken mod 2pi.
std::complex<double> waveplate_factor(double theta);
WavePlateCoeffs coefficients(double theta1, double theta2);

}  // namespace eos
