// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <vector>

#include "eos/config.hpp"
#include "eos/integrator.hpp"
#include "eos/regions.hpp"
#include "eos/scan.hpp"
#include "eos/units.hpp"

using namespace eos;

namespace {

// a coarse Gaussian geometry in the Lorentz crystal, small enough to repeat
struct MomentCase {
  SpatialNodes nodes;
  KernelSet ks;
  double b = 0.0;
  std::vector<double> omega;

  MomentCase() {
    PulseEnvelope p;
    p.shape = Shape::Gauss;
    PulseEnvelope q = p;
    p.x0 = 200.0;
    auto k = overlap_kernel(p, q);
    IntegratorOptions opt;
    opt.n_transverse = 16;
    opt.z_panels = 20;
    nodes = spatial_nodes(k, opt, true);
    ks = spectral_kernels(gap_like_lorentz(), thz_to_rad_per_fs(8.0), 256);
    b = k.b;
    for (int j = 0; j < ks.n_omega; ++j) omega.push_back(j * ks.omega_max / (ks.n_omega - 1));
  }
};

const MomentCase& moment_case() {
  static const MomentCase c;
  return c;
}

void BM_MomentsSerial(benchmark::State& st) {
  auto& c = moment_case();
  for (auto _ : st) benchmark::DoNotOptimize(spectral_moments_serial(c.nodes, c.ks, c.b, c.omega));
  st.counters["nodes"] = static_cast<double>(c.nodes.size());
}

void BM_MomentsParallel(benchmark::State& st) {
  auto& c = moment_case();
  for (auto _ : st)
    benchmark::DoNotOptimize(spectral_moments_parallel(c.nodes, c.ks, c.b, c.omega));
  st.counters["nodes"] = static_cast<double>(c.nodes.size());
}

struct MapCase {
  PulseEnvelope p1, p2;
  Medium m = Dispersionless{};
  std::vector<double> drs, dts;

  MapCase() {
    p1.t0 = 0.0;
    for (int i = 0; i < 100; ++i) {
      drs.push_back(4.0 * i);
      dts.push_back(50.0 * i);
    }
  }
};

void BM_RegionMapSerial(benchmark::State& st) {
  MapCase c;
  for (auto _ : st) benchmark::DoNotOptimize(region_map_serial(c.p1, c.p2, c.m, c.drs, c.dts));
}

void BM_RegionMapParallel(benchmark::State& st) {
  MapCase c;
  for (auto _ : st) benchmark::DoNotOptimize(region_map(c.p1, c.p2, c.m, c.drs, c.dts));
}

// delay scan over the dispersionless Gaussian path
void BM_Scan(benchmark::State& st, bool parallel) {
  ExperimentConfig cfg;
  cfg.pulses.shape = "gauss";
  cfg.delta_t.scan = true;
  cfg.delta_t.start = 0.0;
  cfg.delta_t.stop = 5000.0;
  cfg.delta_t.step = 500.0;
  cfg.numerics.n_transverse = 16;
  cfg.numerics.z_panels = 20;
  for (auto _ : st) benchmark::DoNotOptimize(scan_delta_t(cfg, parallel));
}

}  // namespace

BENCHMARK(BM_MomentsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegionMapSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegionMapParallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scan, serial, false)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(BM_Scan, parallel, true)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
