#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gyrospin/protocol/trajectory.hpp"

namespace gyrospin::cli {

inline constexpr const char* artifact_version = "1.0.0";

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

// CSV text with LF line endings: `#` comment lines, one header row, rows.
std::string csv_text(const std::vector<std::string>& comments, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);
std::string csv_text(const std::vector<std::string>& comments, const SweepTable& table);
// Trajectory columns are prefixed by the time axis "t_s".
std::string csv_text(const std::vector<std::string>& comments, const Trajectory& traj);

std::string sha256_hex(const std::string& bytes);

// Collects output files and writes them together with manifest.json.
class OutputSet {
 public:
  explicit OutputSet(std::string directory);

  void add(const std::string& name, std::string content);
  // Writes every file and the manifest (with "outputs" filled in);
  // returns the manifest text.
  std::string write(nlohmann::json manifest) const;

  const std::string& directory() const { return dir_; }

 private:
  std::string dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

// JSON number, or null for non-finite values.
nlohmann::json json_number(double x);

}  // namespace gyrospin::cli
