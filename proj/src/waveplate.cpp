#include "eos/waveplate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eos/errors.hpp"
#include "eos/units.hpp"

namespace eos {

namespace {
// cos(pi/2) evaluates to +6e-17 in double; treat such values as zero
constexpr double kCosSlack = 1e-12;
}

double reduce_angle(double theta) {
  double r = std::fmod(theta, 2.0 * pi);
  if (r < 0.0) r += 2.0 * pi;
  return r;
}

bool angle_in_domain(double theta) {
  return std::isfinite(theta) && std::cos(reduce_angle(theta)) <= kCosSlack;
}

std::complex<double> waveplate_factor(double theta) {
  if (!angle_in_domain(theta)) {
    throw DomainError("waveplate angle " + std::to_string(theta) +
                      " rad has cos > 0; P(theta) needs theta in [pi/2, 3pi/2] mod 2pi");
  }
  double t = reduce_angle(theta);
  double re = std::sqrt(std::max(0.0, -std::cos(t)));
  double im = std::sqrt(2.0) * std::cos(0.5 * t);
  return {re, im};
}

WavePlateCoeffs coefficients(double theta1, double theta2) {
  WavePlateCoeffs c;
  c.p1 = waveplate_factor(theta1);
  c.p2 = waveplate_factor(theta2);
  c.p_vac = c.p1.imag() * c.p2.imag();
  c.p_s_prime = (c.p1 * c.p2).imag();
  c.p_s_dprime = (c.p1 * std::conj(c.p2)).imag();
  return c;
}

}  // namespace eos
