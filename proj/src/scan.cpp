#include "eos/scan.hpp"

#include <exception>

#include "eos/errors.hpp"
#include "eos/units.hpp"

namespace eos {

SignalRecord make_record(double dt, const Integrals& in, const std::optional<WavePlateCoeffs>& c) {
  SignalRecord r;
  r.delta_t = dt;
  r.in = in;
  r.g_vac = in.i_c;
  r.g_r_prime = -0.5 * hbar * in.i_r_prime;
  r.g_r_dprime = -0.5 * hbar * in.i_r_dprime;
  r.g_s = r.g_r_prime + r.g_r_dprime;
  if (c) r.g_assembled = assemble_signal(*c, in.i_c, in.i_r_prime, in.i_r_dprime);
  return r;
}

std::vector<SignalRecord> scan_delta_t(const ExperimentConfig& cfg, bool parallel) {
  return scan_delays(cfg, cfg.delta_t.values(), parallel);
}

std::vector<SignalRecord> scan_delays(const ExperimentConfig& cfg, const std::vector<double>& dts,
                                      bool parallel) {
  KernelSet ks = make_kernels(cfg);
  IntegratorOptions opt = make_options(cfg);
  opt.parallel = parallel;
  auto [p1, p2] = make_pulses(cfg, 0.0);
  OverlapKernel base = overlap_kernel(p1, p2);
  std::optional<WavePlateCoeffs> coeffs;
  if (cfg.angles) coeffs = coefficients(cfg.angles->first, cfg.angles->second);

  const long n = static_cast<long>(dts.size());
  std::vector<SignalRecord> out(n);
  std::optional<SpectralMoments> sm;
  if (ks.mode == KernelMode::DispersiveSpectral) sm.emplace(base, ks, opt);

  auto point = [&](long i) {
    double dt = dts[i];
    SignalRecord r;
    try {
      Integrals in = sm ? sm->at(dt) : integrate_all(base.with_delay(dt), ks, opt);
      r = make_record(dt, in, coeffs);
    } catch (const std::exception& e) {
      r = SignalRecord{};
      r.delta_t = dt;
      r.status = "failed";
      r.error = e.what();
    }
    try {
      auto [q1, q2] = make_pulses(cfg, dt);
      r.region = classify_numeric(q1, q2, ks.medium).label;
    } catch (const std::exception& e) {
      r.status = "failed";
      r.error = e.what();
    }
    out[i] = r;
  };
  // delays are independent and written to their own slot, so the result
  // does not depend on scheduling
#pragma omp parallel for schedule(dynamic) if (parallel && !sm)
  for (long i = 0; i < n; ++i) point(i);
  return out;
}

}  // namespace eos
