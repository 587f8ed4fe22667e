#include "eos/io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "eos/errors.hpp"

namespace eos {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

std::string manifest_comment(const std::string& manifest_file, const ExperimentConfig& cfg) {
  return "# manifest=" + manifest_file + " config_hash=" + config_hash(cfg) +
         " version=" + tool_version;
}

void write_csv(const std::string& path, const std::string& comment, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << comment << "\n" << header << "\n";
  for (const auto& r : rows) out << r << "\n";
  if (!out) throw IoError("write failed: " + path);
}

namespace {

const char* mode_name(KernelMode m) {
  switch (m) {
    case KernelMode::DispersionlessAnalytic: return "dispersionless_analytic";
    case KernelMode::DispersiveSpectral: return "spectral";
    default: return "custom";
  }
}

}  // namespace

void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = "eos";
  j["version"] = tool_version;
  j["subcommand"] = m.subcommand;
  j["config_hash"] = config_hash(m.config);
  j["config"] = serialize_config(m.config);
  const auto& o = m.options;
  j["numerics_used"] = {{"kernel_mode", mode_name(m.kernels.mode)},
                        {"omega_max_rad_per_fs", m.kernels.omega_max},
                        {"n_omega", m.kernels.n_omega},
                        {"window_taper", m.kernels.taper},
                        {"classification_index", m.kernels.n_cone()},
                        {"tolerance", o.tol},
                        {"rho_cutoff_um", o.rho_cutoff},
                        {"n_transverse", o.n_transverse},
                        {"gl_order", o.gl_order},
                        {"z_panels", o.z_panels},
                        {"rect_panels", o.rect_panels},
                        {"ball_nodes", {o.ball_radial, o.ball_polar, o.ball_azimuth}}};
  j["wall_clock_s"] = m.wall_clock_s;
  j["outputs"] = m.outputs;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace eos
