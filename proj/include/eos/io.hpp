#pragma once
#include <string>
#include <vector>

#include "eos/config.hpp"

namespace eos {

inline constexpr const char* tool_version = "0.1.0";

// %.17g, so values round-trip and reruns give identical bytes
std::string fmt(double v);

struct RunManifest {
  std::string subcommand;
  ExperimentConfig config;
  IntegratorOptions options;
  KernelSet kernels;
  double wall_clock_s = 0.0;
  std::vector<std::string> outputs;
};

// first line of every CSV: names the manifest file and the config hash
std::string manifest_comment(const std::string& manifest_file, const ExperimentConfig& cfg);

void write_csv(const std::string& path, const std::string& comment, const std::string& header,
               const std::vector<std::string>& rows);
void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace eos
