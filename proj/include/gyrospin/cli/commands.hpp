#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gyrospin/cli/config.hpp"
#include "gyrospin/model/scales.hpp"

namespace gyrospin::cli {

struct CommandOptions {
  std::string out_dir;  // overrides output.directory when set
  int jobs = 1;
  bool strict = false;
};

struct CommandResult {
  nlohmann::json manifest;
  std::string manifest_text;
  std::vector<std::string> warnings;
  std::vector<std::string> files;
};

const std::vector<std::string>& command_names();

// Runs one command and writes its CSV files and manifest.json.
CommandResult run_command(const std::string& name, const RunConfig& cfg, const CommandOptions& opt);

nlohmann::json scales_json(const DerivedScales& s);

}  // namespace gyrospin::cli
