#pragma once
#include <optional>
#include <string>
#include <vector>

#include "eos/config.hpp"
#include "eos/integrator.hpp"
#include "eos/regions.hpp"

namespace eos {

struct SignalRecord {
  double delta_t = 0.0;  // fs
  Integrals in;
  double g_vac = 0.0;       // I_C
  double g_r_prime = 0.0;   // -(hbar/2) I_R'
  double g_r_dprime = 0.0;  // -(hbar/2) I_R''
  double g_s = 0.0;         // g_r_prime + g_r_dprime
  std::optional<double> g_assembled;
  Region region = Region::II;
  std::string status = "ok";
  std::string error;  // message of the failure, empty when ok
};

SignalRecord make_record(double dt, const Integrals& in, const std::optional<WavePlateCoeffs>& c);

// One record per delay of cfg.delta_t, in delay order. Points whose
// integration throws are kept with status "failed" and zero values.
std::vector<SignalRecord> scan_delta_t(const ExperimentConfig& cfg, bool parallel = true);
// Same, over an explicit list of delays.
std::vector<SignalRecord> scan_delays(const ExperimentConfig& cfg, const std::vector<double>& dts,
                                      bool parallel = true);

}  // namespace eos
