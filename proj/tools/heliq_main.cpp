// heliq: radial eigenproblem solver for screw-dislocated, twisted quantum
// wires in magnetic and Aharonov-Bohm fields. Subcommands produce CSV tables
// and optional plot scripts; see README.md.
#include <CLI11.hpp>
#include <iostream>

#include "heliq/commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heliq: twisted-screw quantum wire spectra, currents and sweeps"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int states_override = -1;
  bool quiet = false;
  app.add_option("--config", config_path, "configuration file (key = value lines)");
  app.add_option("--out", out_dir, "output directory (default: current)");
  app.add_option("--states", states_override, "override n_states from the config");
  app.add_flag("--quiet", quiet, "suppress progress notes");

  auto* solve = app.add_subcommand("solve", "eigenvalues and eigenstates");
  auto* currents = app.add_subcommand("currents", "current profiles and ring currents");
  int state_index = -1;
  double r0_opt = -1.0, delta_opt = -1.0;
  bool plot = false;
  currents->add_option("--state", state_index, "state index (default: config state_index)");
  currents->add_option("--r0", r0_opt, "annulus center (nm, default: config ring_r0_nm)");
  currents->add_option("--delta", delta_opt,
                       "annulus half-width (nm, default: config ring_delta_nm)");
  currents->add_flag("--plot", plot, "emit a gnuplot script for the profiles");

  auto* sweep = app.add_subcommand("sweep", "one-axis parameter sweep");
  auto* envelope = app.add_subcommand("envelope", "AB envelope over flux");
  auto* fan = app.add_subcommand("fan", "Landau fan over B and omega2");
  std::string omega2_list = "0,0.5,1.0";
  fan->add_option("--omega2-values", omega2_list, "comma list of omega2 values");
  auto* check = app.add_subcommand("check", "mesh/box convergence protocol");
  auto* oracle = app.add_subcommand("oracle", "solver vs independent oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    heliq::RunConfig cfg;
    if (!config_path.empty()) cfg = heliq::load_config_file(config_path);
    if (states_override > 0) {
      cfg.n_states = states_override;
      if (4 * cfg.n_states > cfg.n_points)
        throw heliq::ConfigError("--states must not exceed n_points/4");
      if (cfg.state_index >= cfg.n_states) cfg.state_index = 0;
    }
    heliq::CommandOptions opt;
    opt.out_dir = out_dir;
    opt.quiet = quiet;

    if (solve->parsed()) {
      heliq::cmd_solve(cfg, opt);
    } else if (currents->parsed()) {
      const int n = state_index >= 0 ? state_index : cfg.state_index;
      const double r0 = r0_opt > 0 ? r0_opt : cfg.ring_r0_nm;
      const double delta = delta_opt > 0 ? delta_opt : cfg.ring_delta_nm;
      heliq::cmd_currents(cfg, opt, n, r0, delta, plot);
    } else if (sweep->parsed()) {
      heliq::cmd_sweep(cfg, opt);
    } else if (envelope->parsed()) {
      heliq::cmd_envelope(cfg, opt);
    } else if (fan->parsed()) {
      heliq::cmd_fan(cfg, opt, heliq::parse_value_list(omega2_list));
    } else if (check->parsed()) {
      if (!heliq::cmd_check(cfg, opt)) return kExitNumericalError;
    } else if (oracle->parsed()) {
      heliq::cmd_oracle(cfg, opt);
    }
  } catch (const heliq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalError;
  }
  return kExitOk;
}
