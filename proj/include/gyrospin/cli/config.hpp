#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gyrospin/model/params.hpp"

namespace gyrospin::cli {

enum class ConfigErrorKind { MissingFile, Malformed, UnknownKey, OutOfRange };

// Exit codes: 0 ok, 2 out-of-range or invalid value, 3 numeric failure,
// 4 strict-mode regime violation, 5 missing config file, 6 malformed
// document, 7 unknown key.
int exit_code(ConfigErrorKind k);

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ConfigErrorKind kind() const { return kind_; }

 private:
  ConfigErrorKind kind_;
};

// Values in SI / angular units. Grids are expanded at parse time.
struct SimulationConfig {
  int fock_dim = 60;
  int rotor_L = 16383;
  double rescale = 1.0;
  int n_times = 201;
  double periods = 10.0;           // window, in periods of the command's natural frequency
  int steps_per_period = 200;
  double absorb_fraction = 0.2;
  int spin_init = 1;
  std::optional<double> packet_width;  // rad
  int m = 1;
  bool numeric = true;
  bool classical_occupation = false;
  std::string pair = "rot_vs_eff";
  std::string spin = "up";
  int d_gamma = 40;
  int d_xi = 10;
  double alpha = 0.1;
  double eps_nv = 0.01;
  double frame_sign = -1.0;
  double truncation = 1e-6;
  double gamma_center = 0.0;  // rad
  std::vector<double> B_grid;          // T
  std::vector<double> T_list;          // K
  std::vector<double> gamma_grid;      // rad
  std::vector<double> tau_grid;        // s; empty = derived from omega_gamma
  int tau_points = 32;
  double tau_max_periods = 1.0;        // tau up to this many pi/omega_gamma
  std::vector<double> g_over_dnv_grid;
  std::vector<double> omega_grid;      // rad/s
  std::vector<double> l3_grid;         // m
  std::vector<double> gamma_sep_grid;  // rad
};

struct RunConfig {
  ParticleGeometry particle;
  std::optional<TrapConfig> trap;
  FieldConfig fields;
  Environment environment;
  SimulationConfig simulation;
  std::string output_directory = "out";
  std::string output_format = "csv";

  std::vector<std::string> sections;  // sections present in the document
  nlohmann::json normalized;          // defaults applied, file units

  bool has_section(const std::string& name) const;
  bool operator==(const RunConfig& o) const { return normalized == o.normalized; }
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_json(const nlohmann::json& doc);
RunConfig parse_config(const std::string& path);

// Document in file units that parses back to an equal RunConfig.
nlohmann::json config_echo(const RunConfig& cfg);

}  // namespace gyrospin::cli
