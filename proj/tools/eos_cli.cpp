// Command line front end: signal, regions, fdt, kernels, angles.
#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "eos/config.hpp"
#include "eos/errors.hpp"
#include "eos/fdt.hpp"
#include "eos/io.hpp"
#include "eos/regions.hpp"
#include "eos/scan.hpp"
#include "eos/units.hpp"
#include "eos/waveplate.hpp"

namespace fs = std::filesystem;
using namespace eos;

namespace {

constexpr int exit_ok = 0, exit_validation = 1, exit_numeric = 2, exit_usage = 64;

struct Globals {
  std::string config;
  std::string out;
  int threads = 0;
  bool verbose = false;
  std::vector<std::string> set;
};

struct Run {
  ExperimentConfig cfg;
  fs::path dir;
  RunManifest manifest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  bool verbose = false;

  std::string path(const std::string& name) {
    manifest.outputs.push_back(name);
    return (dir / name).string();
  }
  std::string comment() { return manifest_comment(manifest.subcommand + ".manifest.json", cfg); }
  void finish() {
    manifest.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest((dir / (manifest.subcommand + ".manifest.json")).string(), manifest);
  }
  void log(const std::string& s) const {
    if (verbose) std::cerr << s << "\n";
  }
};

Run open_run(const Globals& g, const std::string& sub, std::vector<std::string> overrides) {
  if (g.config.empty()) throw ValidationError(sub + ": --config is required");
  if (!fs::exists(g.config)) throw IoError("config file not found: " + g.config);
  overrides.insert(overrides.begin(), g.set.begin(), g.set.end());
  Run r;
  r.cfg = load_config_file(g.config, overrides);
  if (!g.out.empty()) r.cfg.output_path = g.out;
  r.dir = r.cfg.output_path;
  fs::create_directories(r.dir);
  r.manifest.subcommand = sub;
  r.manifest.config = r.cfg;
  r.manifest.options = make_options(r.cfg);
  r.manifest.kernels = make_kernels(r.cfg);
  r.verbose = g.verbose;
  return r;
}

std::string opt_num(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

int cmd_signal(const Globals& g, const std::vector<std::string>& ov) {
  Run run = open_run(g, "signal", ov);
  auto recs = scan_delta_t(run.cfg);
  std::vector<std::string> rows;
  int failed = 0;
  for (const auto& r : recs) {
    if (r.status != "ok") {
      ++failed;
      run.log("delta_t " + fmt(r.delta_t) + ": " + r.error);
    }
    rows.push_back(fmt(r.delta_t) + "," + fmt(r.g_vac) + "," + fmt(r.g_s) + "," +
                   fmt(r.g_r_prime) + "," + fmt(r.g_r_dprime) + "," + opt_num(r.g_assembled) +
                   "," + region_name(r.region) + "," + r.status);
  }
  write_csv(run.path("signal.csv"), run.comment(),
            "delta_t_fs,g_vac,g_s,g_r_prime,g_r_dprime,g_assembled,region,status", rows);
  run.finish();
  return failed ? exit_numeric : exit_ok;
}

std::vector<double> grid(double lo, double hi, double step) {
  if (!(step > 0) || hi < lo) throw ValidationError("grid needs step > 0 and hi >= lo");
  std::vector<double> v;
  long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (long i = 0; i < n; ++i) v.push_back(lo + i * step);
  return v;
}

struct RegionArgs {
  double dr_min = 0, dr_max = 400, dr_step = 4;
  double dt_min = 0, dt_max = 5000, dt_step = 50;
};

int cmd_regions(const Globals& g, const std::vector<std::string>& ov, const RegionArgs& a) {
  Run run = open_run(g, "regions", ov);
  auto [p1, p2] = make_pulses(run.cfg, 0.0);
  Medium med = make_medium(run.cfg);
  auto drs = grid(a.dr_min, a.dr_max, a.dr_step);
  auto dts = grid(a.dt_min, a.dt_max, a.dt_step);
  auto cells = region_map(p1, p2, med, drs, dts);
  std::vector<std::string> rows;
  int failed = 0;
  for (const auto& c : cells) {
    failed += c.failed;
    rows.push_back(fmt(c.dr) + "," + fmt(c.dt) + "," +
                   (c.failed ? std::string("failed") : region_name(c.label.label)) + "," +
                   fmt(c.label.margin));
  }
  std::string comment = run.comment();
  write_csv(run.path("regions.csv"), comment, "delta_r_um,delta_t_fs,label,margin_um", rows);

  BoundaryParams bp;
  bp.n = cone_index(med);
  bp.n_g = run.cfg.medium.n_g;
  bp.length = run.cfg.length_um;
  bp.tau_p = run.cfg.pulses.duration_fs;
  bp.w = run.cfg.pulses.waist_um;
  rows.clear();
  for (double dt : dts) {
    auto eval = [&](auto f) -> std::string {
      try {
        return fmt(f(dt, bp));
      } catch (const DomainError&) {
        return "";
      }
    };
    rows.push_back(fmt(dt) + "," + eval(boundary_I_II) + "," + eval(boundary_II_III));
  }
  write_csv(run.path("boundaries.csv"), comment, "delta_t_fs,delta_r_I_II_um,delta_r_II_III_um",
            rows);
  run.finish();
  return failed ? exit_numeric : exit_ok;
}

int cmd_fdt(const Globals& g, const std::vector<std::string>& ov, bool no_tail) {
  Run run = open_run(g, "fdt", ov);
  auto recs = scan_delta_t(run.cfg);
  const auto& p = run.cfg.pulses;
  bool identical = p.waist_um == p.waist2_um && p.duration_fs == p.duration2_fs;
  FdtReport rep = verify_fdt_signal(recs, !no_tail, false, identical);
  if (!identical) std::cerr << "fdt: pulses differ; the relation is only expected for identical pulses\n";
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < rep.delta_t.size(); ++i)
    rows.push_back(fmt(rep.delta_t[i]) + "," + fmt(rep.g_vac[i]) + "," +
                   fmt(rep.two_g_r_dprime[i]) + "," + fmt(rep.prediction[i]) + "," +
                   fmt(rep.residual[i]));
  write_csv(run.path("fdt.csv"), run.comment(),
            "delta_t_fs,g_vac,two_g_r_dprime,hilbert_prediction,pointwise_residual", rows);
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash(run.cfg);
  j["l2_relative_residual"] = rep.l2_relative;
  j["max_relative_residual"] = rep.max_relative;
  j["interior"] = {rep.delta_t[rep.interior_lo], rep.delta_t[rep.interior_hi - 1]};
  j["interior_fraction"] = 0.6;
  j["window_fs"] = {rep.window_lo, rep.window_hi};
  j["edge_ratio"] = rep.edge_ratio;
  j["tail_fit"] = rep.tail_fit;
  j["tail_correction_max_relative"] = rep.tail_estimate;
  j["identical_pulses"] = rep.identical_pulses;
  std::ofstream(run.path("fdt_summary.json")) << j.dump(2) << "\n";
  run.finish();
  std::cout << "l2_relative=" << fmt(rep.l2_relative) << " max_relative=" << fmt(rep.max_relative)
            << "\n";
  return exit_ok;
}

struct KernelArgs {
  std::vector<double> rho{200, 0, 0};
  double tau_start = 0, tau_stop = 5000, tau_step = 10;
  bool overlap = false;
  double dz = 1.0;
};

int cmd_kernels(const Globals& g, const std::vector<std::string>& ov, const KernelArgs& a) {
  Run run = open_run(g, "kernels", ov);
  if (a.rho.size() % 3 != 0) throw ValidationError("--rho takes x,y,z triples");
  auto taus = grid(a.tau_start, a.tau_stop, a.tau_step);
  std::vector<std::string> rows;
  if (a.overlap) {
    double dt = run.cfg.delta_t.scan ? run.cfg.delta_t.start : run.cfg.delta_t.value;
    auto [p1, p2] = make_pulses(run.cfg, dt);
    OverlapKernel k = overlap_kernel(p1, p2);
    auto zs = grid(-run.cfg.length_um, run.cfg.length_um, a.dz);
    for (std::size_t i = 0; i < a.rho.size(); i += 3)
      for (double z : zs)
        for (double t : taus)
          rows.push_back(fmt(a.rho[i]) + "," + fmt(a.rho[i + 1]) + "," + fmt(z) + "," + fmt(t) +
                         "," + fmt(k.value(a.rho[i], a.rho[i + 1], z, t)));
    write_csv(run.path("overlap.csv"), run.comment(), "rho_x,rho_y,rho_z,tau,K", rows);
    run.finish();
    return exit_ok;
  }
  const KernelSet& ks = run.manifest.kernels;
  SplitResponse split = split_response(ks);
  for (std::size_t i = 0; i < a.rho.size(); i += 3) {
    double x = a.rho[i], y = a.rho[i + 1], z = a.rho[i + 2];
    for (double t : taus) {
      std::string pre = fmt(x) + "," + fmt(y) + "," + fmt(z) + "," + fmt(t) + ",";
      std::string c;
      try {
        c = fmt(correlation_time(ks, x, y, z, t)) + ",ok";
      } catch (const DomainError&) {
        c = ",on_cone";
      }
      rows.push_back(pre + "C," + c);
      // off the cone the dispersionless R', R'' are exactly zero; on it the
      // value column carries the delta weight w0 and the status says so
      for (auto [name, f] : {std::pair{"R_prime", &split.even}, std::pair{"R_dprime", &split.odd}}) {
        DistValue d = (*f)(x, y, z, t);
        bool singular = d.w0 != 0 || d.w1 != 0 || d.w2 != 0;
        rows.push_back(pre + name + "," + fmt(singular ? d.w0 : d.regular) + "," +
                       (singular ? "delta_weight" : "ok"));
      }
    }
  }
  write_csv(run.path("kernels.csv"), run.comment(), "rho_x,rho_y,rho_z,tau,kernel,value,status",
            rows);
  run.finish();
  return exit_ok;
}

std::string four(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

int cmd_angles(double t1, double t2) {
  WavePlateCoeffs c;
  try {
    c = coefficients(t1, t2);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  }
  std::cout << "p_vac=" << four(c.p_vac) << " p_s_prime=" << four(c.p_s_prime)
            << " p_s_dprime=" << four(c.p_s_dprime) << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electro-optic sampling correlations: vacuum and source contributions"};
  Globals g;
  app.add_option("--config", g.config, "config file");
  app.add_option("--out", g.out, "output directory (overrides [output] path)");
  app.add_option("--threads", g.threads, "OpenMP threads");
  app.add_flag("--verbose", g.verbose, "log failed points and progress to stderr");
  app.add_option("--set", g.set, "config override section.key=value (repeatable)");
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::vector<std::string> ov;
  auto add_override = [&](CLI::App* s, const std::string& flag, const std::string& key,
                          const std::string& help) {
    s->add_option_function<std::string>(
        flag, [&ov, key](const std::string& v) { ov.push_back(key + "=" + v); }, help);
  };

  auto* sig = app.add_subcommand("signal", "scan the four contributions over delta_t");
  add_override(sig, "--delta-r", "experiment.delta_r_um", "delta_r in um");
  add_override(sig, "--path", "numerics.path", "auto | analytic | spectral");

  RegionArgs ra;
  auto* reg = app.add_subcommand("regions", "classify a (delta_r, delta_t) grid");
  reg->add_option("--dr-min", ra.dr_min, "um")->capture_default_str();
  reg->add_option("--dr-max", ra.dr_max, "um")->capture_default_str();
  reg->add_option("--dr-step", ra.dr_step, "um")->capture_default_str();
  reg->add_option("--dt-min", ra.dt_min, "fs")->capture_default_str();
  reg->add_option("--dt-max", ra.dt_max, "fs")->capture_default_str();
  reg->add_option("--dt-step", ra.dt_step, "fs")->capture_default_str();

  bool no_tail = false;
  auto* fdt = app.add_subcommand("fdt", "check g_vac against the transform of 2 g_R''");
  fdt->add_flag("--no-tail", no_tail, "skip the algebraic tail correction");
  add_override(fdt, "--delta-r", "experiment.delta_r_um", "delta_r in um");

  KernelArgs ka;
  auto* ker = app.add_subcommand("kernels", "dump C, R', R'' (or the overlap kernel) on a grid");
  ker->add_option("--rho", ka.rho, "x,y,z triples in um")->delimiter(',');
  ker->add_option("--tau-start", ka.tau_start, "fs")->capture_default_str();
  ker->add_option("--tau-stop", ka.tau_stop, "fs")->capture_default_str();
  ker->add_option("--tau-step", ka.tau_step, "fs")->capture_default_str();
  ker->add_flag("--overlap", ka.overlap, "dump K12 over rho_z and tau instead");
  ker->add_option("--dz", ka.dz, "rho_z step for --overlap");

  double t1 = 0, t2 = 0;
  auto* ang = app.add_subcommand("angles", "print the wave-plate coefficients");
  ang->add_option("--theta1", t1, "rad, cos(theta) <= 0")->required();
  ang->add_option("--theta2", t2, "rad, cos(theta) <= 0")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return exit_usage;
  }
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    if (*sig) return cmd_signal(g, ov);
    if (*reg) return cmd_regions(g, ov, ra);
    if (*fdt) return cmd_fdt(g, ov, no_tail);
    if (*ker) return cmd_kernels(g, ov, ka);
    if (*ang) return cmd_angles(t1, t2);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return exit_numeric;
  }
  return exit_usage;
}
