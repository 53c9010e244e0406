// Plain-text key = value run configuration with validation and the section-V
// benchmark defaults.
#ifndef HELIQ_CONFIG_HPP
#define HELIQ_CONFIG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heliq/solver.hpp"

namespace heliq {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double mstar_ratio = 0.067;
  int charge_sign = -1;
  int ell = 1;
  double kz_per_nm = 0.01;
  double omega1_nm = 50.0;
  double omega2 = 0.0;
  double B_tesla = 1.0;
  double phi = 0.0;
  double rmin_nm = 1e-3;
  double rmax_nm = 500.0;
  int n_points = 2000;
  int n_states = 2;

  std::string sweep_axis;             // one of omega1, omega2, B, phi, kz
  std::vector<double> sweep_values;   // comma list or start:stop:step
  std::optional<int> ell_window_min;  // envelope window; auto when unset
  std::optional<int> ell_window_max;
  double ring_r0_nm = 20.0;
  double ring_delta_nm = 2.0;
  int state_index = 0;

  RadialProblem to_problem() const;

  // Fully resolved key/value pairs, for provenance stamps in output files.
  std::vector<std::pair<std::string, std::string>> resolved_entries() const;
};

// Parses line-oriented `key = value` text with '#' comments. Unknown keys,
// unparsable values and domain violations raise ConfigError.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

// "a,b,c" lists or "start:stop:step" ranges (inclusive endpoint).
std::vector<double> parse_value_list(const std::string& text);

}  // namespace heliq

#endif  // HELIQ_CONFIG_HPP
