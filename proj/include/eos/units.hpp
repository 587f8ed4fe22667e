#pragma once
// Internal unit system: micrometres, femtoseconds, rad/fs, hbar = eps0 = 1.

#include <numbers>

namespace eos {

inline constexpr double pi = std::numbers::pi;
inline constexpr double c_light = 0.299792458;  // um/fs
inline constexpr double hbar = 1.0;
inline constexpr double eps0 = 1.0;
inline constexpr double mu0 = 1.0 / (eps0 * c_light * c_light);

// 1 THz expressed as angular frequency in rad/fs
inline constexpr double thz = 2.0 * pi * 1e-3;

inline constexpr double thz_to_rad_per_fs(double f) { return f * thz; }
inline constexpr double rad_per_fs_to_thz(double w) { return w / thz; }

// FWHM of a Gaussian in units of its standard deviation
inline constexpr double fwhm_per_sigma = 2.3548200450309493;  // 2 sqrt(2 ln 2)

}  // namespace eos
