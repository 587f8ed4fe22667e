#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eos/integrator.hpp"
#include "eos/kernels.hpp"
#include "eos/medium.hpp"
#include "eos/pulses.hpp"

namespace eos {

struct DelaySpec {
  bool scan = false;
  double value = 0.0;  // fs, when scalar
  double start = 0.0, stop = 0.0, step = 1.0;
  std::vector<double> values() const;
  bool operator==(const DelaySpec&) const = default;
};

struct MediumSpec {
  std::string model = "dispersionless";  // dispersionless | lorentz | table
  double n = 3.33;
  double n_g = 3.556;
  std::string table_path;
  double eps_inf = 9.09;
  double omega_to_thz = 10.98;
  double omega_lo_thz = 12.06;
  double gamma_thz = 0.02;
  bool operator==(const MediumSpec&) const = default;
};

struct PulseSpec {
  std::string shape = "rect";  // rect | gauss
  double waist_um = 10.0;
  double duration_fs = 185.0;
  double waist2_um = 10.0;  // second pulse, equal to the first unless given
  double duration2_fs = 185.0;
  bool operator==(const PulseSpec&) const = default;
};

struct NumericsSpec {
  double omega_max_thz = 15.0;
  int n_omega = 2048;
  double rho_cutoff_um = 0.1;
  double tau_pad_fs = 2000.0;
  double tolerance = 1e-8;
  int n_transverse = 48;
  int gl_order = 8;
  int z_panels = 80;
  std::string path = "auto";  // auto | analytic | spectral
  bool operator==(const NumericsSpec&) const = default;
};

struct ExperimentConfig {
  double delta_r_um = 200.0;
  DelaySpec delta_t;
  double length_um = 100.0;
  MediumSpec medium;
  PulseSpec pulses;
  std::optional<std::pair<double, double>> angles;  // theta1, theta2 in rad
  NumericsSpec numerics;
  std::string output_path = "out";
  std::string output_format = "csv";
  bool operator==(const ExperimentConfig&) const = default;
};

struct Diagnostic {
  std::string key;
  std::string value;
  std::string constraint;
};

// Parses the sectioned key = value format documented in the README, fills
// every default explicitly and validates. Throws ParseError / ValidationError.
// Overrides read "section.key=value" and replace the key and its unit aliases.
ExperimentConfig load_config(const std::string& text,
                             const std::vector<std::string>& overrides = {});
// Reads a file; relative table paths are resolved against its directory.
ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides = {});
std::vector<Diagnostic> validate_config(const ExperimentConfig& cfg);
std::string format_diagnostics(const std::vector<Diagnostic>& d);
// Canonical text form with every key present, internal units.
std::string serialize_config(const ExperimentConfig& cfg);
// FNV-1a over the canonical text without the output path, 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

// Decimal literal with its exponent shifted by `shift` (x 10^shift) before
// rounding to double, so "2e-4" m and "200" um give the same bits.
double parse_scaled(const std::string& literal, int shift);

// Downstream objects. Pulse 2 sits at the origin, pulse 1 at (delta_r, dt).
std::pair<PulseEnvelope, PulseEnvelope> make_pulses(const ExperimentConfig& cfg, double dt);
Medium make_medium(const ExperimentConfig& cfg);
KernelSet make_kernels(const ExperimentConfig& cfg);
IntegratorOptions make_options(const ExperimentConfig& cfg);

}  // namespace eos
