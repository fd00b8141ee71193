#include "gyrospin/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "gyrospin/constants.hpp"
#include "gyrospin/errors.hpp"

namespace gyrospin::cli {

using nlohmann::json;

int exit_code(ConfigErrorKind k) {
  switch (k) {
    case ConfigErrorKind::OutOfRange: return 2;
    case ConfigErrorKind::MissingFile: return 5;
    case ConfigErrorKind::Malformed: return 6;
    case ConfigErrorKind::UnknownKey: return 7;
  }
  return 2;
}

bool RunConfig::has_section(const std::string& name) const {
  return std::find(sections.begin(), sections.end(), name) != sections.end();
}

namespace {

[[noreturn]] void range_error(const std::string& where, const std::string& what) {
  throw ConfigError(ConfigErrorKind::OutOfRange, where + ": " + what);
}

// Reads keys of one section, records the normalized value of each and
// rejects keys that were never asked for.
class Section {
 public:
  Section(const json& doc, const std::string& name, json& out) : name_(name), out_(out[name]) {
    if (doc.contains(name)) {
      in_ = doc.at(name);
      if (!in_.is_object()) throw ConfigError(ConfigErrorKind::Malformed, "section '" + name + "' must be an object");
    } else {
      in_ = json::object();
    }
    out_ = json::object();
  }

  double number(const std::string& key, std::optional<double> def) {
    seen_.insert(key);
    if (!in_.contains(key)) {
      if (!def) range_error(where(key), "required value missing");
      out_[key] = *def;
      return *def;
    }
    const json& v = in_.at(key);
    if (!v.is_number()) throw ConfigError(ConfigErrorKind::Malformed, where(key) + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) range_error(where(key), "must be finite");
    out_[key] = v;
    return x;
  }

  std::optional<double> nullable(const std::string& key) {
    seen_.insert(key);
    if (!in_.contains(key) || in_.at(key).is_null()) {
      out_[key] = nullptr;
      return std::nullopt;
    }
    return number(key, std::nullopt);
  }

  int integer(const std::string& key, int def) {
    seen_.insert(key);
    if (!in_.contains(key)) {
      out_[key] = def;
      return def;
    }
    const json& v = in_.at(key);
    if (!v.is_number_integer()) throw ConfigError(ConfigErrorKind::Malformed, where(key) + ": expected an integer");
    out_[key] = v;
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool def) {
    seen_.insert(key);
    if (!in_.contains(key)) {
      out_[key] = def;
      return def;
    }
    const json& v = in_.at(key);
    if (!v.is_boolean()) throw ConfigError(ConfigErrorKind::Malformed, where(key) + ": expected a boolean");
    out_[key] = v;
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& def) {
    seen_.insert(key);
    if (!in_.contains(key)) {
      out_[key] = def;
      return def;
    }
    const json& v = in_.at(key);
    if (!v.is_string()) throw ConfigError(ConfigErrorKind::Malformed, where(key) + ": expected a string");
    out_[key] = v;
    return v.get<std::string>();
  }

  // Either an explicit list or {"start", "stop", "num", "spacing": "linear"|"log"}.
  std::vector<double> grid(const std::string& key, double scale) {
    seen_.insert(key);
    if (!in_.contains(key)) {
      out_[key] = json::array();
      return {};
    }
    const json& v = in_.at(key);
    out_[key] = v;
    std::vector<double> out;
    if (v.is_array()) {
      for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(ConfigErrorKind::Malformed, where(key) + ": grid entries must be numbers");
        out.push_back(x.get<double>() * scale);
      }
      return out;
    }
    if (!v.is_object()) throw ConfigError(ConfigErrorKind::Malformed, where(key) + ": expected a list or a range object");
    for (auto it = v.begin(); it != v.end(); ++it) {
      const std::string& k = it.key();
      if (k != "start" && k != "stop" && k != "num" && k != "spacing")
        throw ConfigError(ConfigErrorKind::UnknownKey, where(key) + ": unknown range key '" + k + "'");
    }
    if (!v.contains("start") || !v.contains("stop") || !v.contains("num"))
      throw ConfigError(ConfigErrorKind::Malformed, where(key) + ": range needs start, stop and num");
    if (!v["start"].is_number() || !v["stop"].is_number() || !v["num"].is_number_integer())
      throw ConfigError(ConfigErrorKind::Malformed, where(key) + ": range fields have the wrong type");
    const double a = v["start"].get<double>(), b = v["stop"].get<double>();
    const int n = v["num"].get<int>();
    const std::string spacing = v.value("spacing", std::string("linear"));
    if (n < 1) range_error(where(key), "num must be >= 1");
    if (spacing == "linear") {
      for (int k = 0; k < n; ++k) out.push_back((n == 1 ? a : a + (b - a) * k / (n - 1)) * scale);
      if (n > 1) out.back() = b * scale;
    } else if (spacing == "log") {
      if (!(a > 0.0) || !(b > 0.0)) range_error(where(key), "log spacing needs positive bounds");
      for (int k = 0; k < n; ++k)
        out.push_back((n == 1 ? a : a * std::pow(b / a, double(k) / (n - 1))) * scale);
      if (n > 1) out.back() = b * scale;
    } else {
      range_error(where(key), "spacing must be 'linear' or 'log'");
    }
    return out;
  }

  void finish() const {
    for (auto it = in_.begin(); it != in_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError(ConfigErrorKind::UnknownKey, "unknown key '" + name_ + "." + it.key() + "'");
  }

 private:
  std::string where(const std::string& key) const { return name_ + "." + key; }
  std::string name_;
  json in_;
  json& out_;
  std::set<std::string> seen_;
};

template <class F>
void validated(const std::string& section, F&& f) {
  try {
    f();
  } catch (const gyrospin::Error& e) {
    range_error(section, e.what());
  }
}

void positive(double x, const std::string& where) {
  if (!(x > 0.0)) range_error(where, "must be positive");
}

}  // namespace

RunConfig parse_config_json(const json& doc) {
  using constants::two_pi;
  if (!doc.is_object()) throw ConfigError(ConfigErrorKind::Malformed, "config must be a JSON object");
  static const std::set<std::string> known = {"particle", "trap", "fields", "environment", "simulation", "output"};
  RunConfig cfg;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError(ConfigErrorKind::UnknownKey, "unknown section '" + it.key() + "'");
    cfg.sections.push_back(it.key());
  }
  json& norm = cfg.normalized;
  norm = json::object();

  {
    Section p(doc, "particle", norm);
    const double l3 = p.number("l3_nm", 200.0);
    const double l1 = p.number("l1_nm", 60.0);
    const double l2 = p.number("l2_nm", l1);
    cfg.particle.l1 = l1 * 1e-9;
    cfg.particle.l2 = l2 * 1e-9;
    cfg.particle.l3 = l3 * 1e-9;
    cfg.particle.density = p.number("density_kg_m3", constants::diamond_density);
    cfg.particle.sigma = p.number("sigma_uC_m2", 3.5) * 1e-6;
    p.finish();
    validated("particle", [&] { cfg.particle.validate(); });
    if (cfg.particle.l3 < std::max(cfg.particle.l1, cfg.particle.l2))
      range_error("particle", "l3 must be the largest semiaxis");
  }
  if (doc.contains("trap")) {
    Section t(doc, "trap", norm);
    TrapConfig trap;
    trap.U_ac = t.number("U_ac_V", std::nullopt);
    trap.omega_ac = t.number("omega_ac_Hz", std::nullopt) * two_pi;
    trap.d0 = t.number("d0_um", std::nullopt) * 1e-6;
    trap.epsilon = t.number("epsilon", 0.0);
    t.finish();
    validated("trap", [&] { trap.validate(); });
    cfg.trap = trap;
  }
  {
    Section f(doc, "fields", norm);
    cfg.fields.B = f.number("B_mT", 0.0) * 1e-3;
    cfg.fields.omega = f.number("rotation_Hz", 1e6) * two_pi;
    cfg.fields.gamma0 = f.number("gamma0_GHz_per_T", 28.024) * two_pi * 1e9;
    cfg.fields.D_nv = f.number("Dnv_GHz", 2.87) * two_pi * 1e9;
    f.finish();
    validated("fields", [&] { cfg.fields.validate(); });
  }
  {
    Section e(doc, "environment", norm);
    Environment& env = cfg.environment;
    env.T = e.number("T_K", 0.0);
    env.P_gas = e.number("pressure_mbar", 0.0) * 100.0;
    env.m_gas = e.number("gas_mass_amu", 28.0) * constants::amu;
    const auto t2 = e.nullable("T2_us");
    env.T2 = t2 ? *t2 * 1e-6 : std::numeric_limits<double>::infinity();
    env.A_fl = e.number("A_fl_nT_sqrtHz", 0.0) * 1e-9;
    env.alpha_im = e.number("alpha_im", 0.0);
    e.finish();
    validated("environment", [&] { env.validate(); });
    if (t2) positive(env.T2, "environment.T2_us");
  }
  {
    Section s(doc, "simulation", norm);
    SimulationConfig& sim = cfg.simulation;
    sim.fock_dim = s.integer("fock_dim", sim.fock_dim);
    sim.rotor_L = s.integer("rotor_L", sim.rotor_L);
    sim.rescale = s.number("rescale", sim.rescale);
    sim.n_times = s.integer("n_times", sim.n_times);
    sim.periods = s.number("periods", sim.periods);
    sim.steps_per_period = s.integer("steps_per_period", sim.steps_per_period);
    sim.absorb_fraction = s.number("absorb_fraction", sim.absorb_fraction);
    sim.spin_init = s.integer("spin_init", sim.spin_init);
    sim.packet_width = s.nullable("packet_width_rad");
    sim.m = s.integer("m", sim.m);
    sim.numeric = s.boolean("numeric", sim.numeric);
    sim.classical_occupation = s.boolean("classical_occupation", sim.classical_occupation);
    sim.pair = s.string("pair", sim.pair);
    sim.spin = s.string("spin", sim.spin);
    sim.d_gamma = s.integer("d_gamma", sim.d_gamma);
    sim.d_xi = s.integer("d_xi", sim.d_xi);
    sim.alpha = s.number("alpha", sim.alpha);
    sim.eps_nv = s.number("eps_nv", sim.eps_nv);
    sim.frame_sign = s.number("frame_sign", sim.frame_sign);
    sim.truncation = s.number("truncation", sim.truncation);
    sim.gamma_center = s.number("gamma_center_rad", sim.gamma_center);
    sim.B_grid = s.grid("B_grid_mT", 1e-3);
    sim.T_list = s.grid("T_list_K", 1.0);
    sim.gamma_grid = s.grid("gamma_grid_rad", 1.0);
    sim.tau_grid = s.grid("tau_grid_us", 1e-6);
    sim.tau_points = s.integer("tau_points", sim.tau_points);
    sim.tau_max_periods = s.number("tau_max_periods", sim.tau_max_periods);
    sim.g_over_dnv_grid = s.grid("g_over_Dnv_grid", 1.0);
    sim.omega_grid = s.grid("omega_grid_Hz", two_pi);
    sim.l3_grid = s.grid("l3_grid_nm", 1e-9);
    sim.gamma_sep_grid = s.grid("gamma_sep_grid_rad", 1.0);
    s.finish();

    if (sim.fock_dim < 2) range_error("simulation.fock_dim", "must be >= 2");
    if (sim.rotor_L < 1) range_error("simulation.rotor_L", "must be >= 1");
    positive(sim.rescale, "simulation.rescale");
    if (sim.n_times < 2) range_error("simulation.n_times", "must be >= 2");
    positive(sim.periods, "simulation.periods");
    if (sim.steps_per_period < 1) range_error("simulation.steps_per_period", "must be >= 1");
    if (sim.absorb_fraction < 0.0 || sim.absorb_fraction >= 1.0)
      range_error("simulation.absorb_fraction", "must lie in [0, 1)");
    if (sim.spin_init != 1 && sim.spin_init != -1) range_error("simulation.spin_init", "must be +1 or -1");
    if (sim.packet_width) positive(*sim.packet_width, "simulation.packet_width_rad");
    if (sim.m < -1 || sim.m > 1) range_error("simulation.m", "must be -1, 0 or +1");
    if (sim.d_gamma < 2 || sim.d_xi < 2) range_error("simulation", "d_gamma and d_xi must be >= 2");
    if (sim.alpha < 0.0) range_error("simulation.alpha", "must be non-negative");
    positive(sim.truncation, "simulation.truncation");
    if (sim.tau_points < 2) range_error("simulation.tau_points", "must be >= 2");
    positive(sim.tau_max_periods, "simulation.tau_max_periods");
    for (double T : sim.T_list) positive(T, "simulation.T_list_K");
    for (double t : sim.tau_grid)
      if (t < 0.0) range_error("simulation.tau_grid_us", "must be non-negative");
    for (double w : sim.omega_grid) positive(w, "simulation.omega_grid_Hz");
    for (double l : sim.l3_grid) positive(l, "simulation.l3_grid_nm");
    static const std::set<std::string> pairs = {"rot_vs_eff", "eff_vs_disp", "zeeman_on_off", "eff_vs_misaligned"};
    if (!pairs.count(sim.pair)) range_error("simulation.pair", "unknown pair '" + sim.pair + "'");
    if (sim.spin != "up" && sim.spin != "down" && sim.spin != "superposition")
      range_error("simulation.spin", "must be up, down or superposition");
  }
  {
    Section o(doc, "output", norm);
    cfg.output_directory = o.string("directory", cfg.output_directory);
    cfg.output_format = o.string("format", cfg.output_format);
    o.finish();
    if (cfg.output_format != "csv") range_error("output.format", "only 'csv' is supported");
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigErrorKind::Malformed, std::string("malformed JSON: ") + e.what());
  }
  try {
    return parse_config_json(doc);
  } catch (const json::exception& e) {
    throw ConfigError(ConfigErrorKind::Malformed, std::string("config type error: ") + e.what());
  }
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(ConfigErrorKind::MissingFile, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json config_echo(const RunConfig& cfg) {
  json echo = cfg.normalized;
  if (!cfg.trap) echo.erase("trap");
  return echo;
}

}  // namespace gyrospin::cli
