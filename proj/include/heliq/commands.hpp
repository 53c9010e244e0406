// File-producing subcommand backends shared by the CLI tool and the test
// suites. Every output embeds the resolved configuration as a comment header
// and is written atomically (temp file, then rename). Numbers carry 12
// significant digits with a '.' decimal separator, independent of locale.
#ifndef HELIQ_COMMANDS_HPP
#define HELIQ_COMMANDS_HPP

#include <filesystem>
#include <string>

#include "heliq/config.hpp"

namespace heliq {

struct CommandOptions {
  std::filesystem::path out_dir = ".";
  bool quiet = false;
};

// spectrum.csv plus state_<n>.csv for every solved state.
void cmd_solve(const RunConfig& cfg, const CommandOptions& opt);

// currents_<n>.csv and ring_currents.csv, plus a gnuplot script clipped to
// the r in [0, 40] nm window when emit_plot is set.
void cmd_currents(const RunConfig& cfg, const CommandOptions& opt, int state_index,
                  double r0, double delta, bool emit_plot = false);

// sweep.csv over the configured axis/values.
void cmd_sweep(const RunConfig& cfg, const CommandOptions& opt);

// envelope.csv over the configured flux points and azimuthal window.
void cmd_envelope(const RunConfig& cfg, const CommandOptions& opt);

// fan.csv over B values (sweep_values) times the given omega2 list.
void cmd_fan(const RunConfig& cfg, const CommandOptions& opt,
             const std::vector<double>& omega2_values);

// convergence.txt; returns the pass verdict (mesh doubling and box extension
// both below 1e-3 relative change).
bool cmd_check(const RunConfig& cfg, const CommandOptions& opt);

// oracle.csv comparing the matrix solver against the Numerov shot and any
// closed form the configuration sits in.
void cmd_oracle(const RunConfig& cfg, const CommandOptions& opt);

std::string format_sig12(double v);

}  // namespace heliq

#endif  // HELIQ_COMMANDS_HPP
