#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gyrospin/cli/commands.hpp"
#include "gyrospin/cli/config.hpp"
#include "gyrospin/errors.hpp"

namespace {

constexpr int exit_numeric = 3;
constexpr int exit_strict = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace gyrospin;
  CLI::App app{"gyrospin: spin-rotor simulations of a levitated nanodiamond with an NV spin"};
  app.require_subcommand(1);

  std::string config_path;
  cli::CommandOptions opt;
  const std::map<std::string, std::string> help = {
      {"derive", "derived scales and regime flags"},
      {"alignment", "hard-magnet alignment mean and variance over B and T"},
      {"surfaces", "potential surfaces Omega_+- over gamma"},
      {"stabilize", "spin-dependent trapping on the rotor grid"},
      {"interfere", "spin-echo interferometer, numeric and closed form"},
      {"validity", "adiabatic validity map over omega and l3"},
      {"decoherence", "collision, blackbody and field-noise rates"},
      {"crosscheck", "trajectory comparison between two model Hamiltonians"}};
  for (const auto& name : cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name, help.count(name) ? help.at(name) : "");
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", opt.out_dir, "output directory (overrides output.directory)");
    sub->add_option("--jobs", opt.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_flag("--strict", opt.strict, "exit with code 4 on regime warnings");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const cli::RunConfig cfg = cli::parse_config(config_path);
    const cli::CommandResult res = cli::run_command(command, cfg, opt);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& f : res.files) std::cout << f << "\n";
    if (opt.strict && !res.warnings.empty()) return exit_strict;
    return 0;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::exit_code(e.kind());
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return exit_numeric;
  } catch (const UnsupportedShape& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::exit_code(cli::ConfigErrorKind::OutOfRange);
  } catch (const InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::exit_code(cli::ConfigErrorKind::OutOfRange);
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return cli::exit_code(cli::ConfigErrorKind::OutOfRange);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
