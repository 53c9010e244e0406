#include "heliq/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "heliq/sweeps.hpp"

namespace heliq {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("config: cannot parse '" + text + "' as a number for key " + key);
  if (!std::isfinite(value))
    throw ConfigError("config: non-finite value for key " + key);
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  int value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("config: cannot parse '" + text + "' as an integer for key " + key);
  return value;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_list(const std::vector<double>& vs) {
  std::string out;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += format_number(vs[i]);
  }
  return out;
}

}  // namespace

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) throw ConfigError("config: empty entry in value list '" + text + "'");
    const auto c1 = token.find(':');
    if (c1 == std::string::npos) {
      values.push_back(parse_double("sweep_values", token));
      continue;
    }
    const auto c2 = token.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw ConfigError("config: range must be start:stop:step, got '" + token + "'");
    const double start = parse_double("sweep_values", trim(token.substr(0, c1)));
    const double stop = parse_double("sweep_values", trim(token.substr(c1 + 1, c2 - c1 - 1)));
    const double step = parse_double("sweep_values", trim(token.substr(c2 + 1)));
    if (!(step > 0.0) || stop < start)
      throw ConfigError("config: range '" + token + "' needs stop >= start and step > 0");
    const long count = std::lround(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) values.push_back(start + i * step);
  }
  return values;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ConfigError("config: empty value for key " + key);

    if (key == "mstar_ratio") cfg.mstar_ratio = parse_double(key, value);
    else if (key == "charge_sign") cfg.charge_sign = parse_int(key, value);
    else if (key == "ell") cfg.ell = parse_int(key, value);
    else if (key == "kz_per_nm") cfg.kz_per_nm = parse_double(key, value);
    else if (key == "omega1_nm") cfg.omega1_nm = parse_double(key, value);
    else if (key == "omega2") cfg.omega2 = parse_double(key, value);
    else if (key == "B_tesla") cfg.B_tesla = parse_double(key, value);
    else if (key == "phi") cfg.phi = parse_double(key, value);
    else if (key == "rmin_nm") cfg.rmin_nm = parse_double(key, value);
    else if (key == "rmax_nm") cfg.rmax_nm = parse_double(key, value);
    else if (key == "n_points") cfg.n_points = parse_int(key, value);
    else if (key == "n_states") cfg.n_states = parse_int(key, value);
    else if (key == "sweep_axis") cfg.sweep_axis = value;
    else if (key == "sweep_values") cfg.sweep_values = parse_value_list(value);
    else if (key == "ell_window_min") cfg.ell_window_min = parse_int(key, value);
    else if (key == "ell_window_max") cfg.ell_window_max = parse_int(key, value);
    else if (key == "ring_r0_nm") cfg.ring_r0_nm = parse_double(key, value);
    else if (key == "ring_delta_nm") cfg.ring_delta_nm = parse_double(key, value);
    else if (key == "state_index") cfg.state_index = parse_int(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
  }

  // Domain validation, before any solve touches the values.
  if (!(cfg.mstar_ratio > 0.0)) throw ConfigError("config: mstar_ratio must be > 0");
  if (cfg.charge_sign != -1 && cfg.charge_sign != 1)
    throw ConfigError("config: charge_sign must be -1 or +1");
  if (!(cfg.rmin_nm > 0.0)) throw ConfigError("config: rmin_nm must be > 0");
  if (!(cfg.rmax_nm > cfg.rmin_nm)) throw ConfigError("config: rmax_nm must exceed rmin_nm");
  if (cfg.n_points < 16) throw ConfigError("config: n_points must be at least 16");
  if (cfg.n_states < 1) throw ConfigError("config: n_states must be >= 1");
  if (4 * cfg.n_states > cfg.n_points)
    throw ConfigError("config: n_states must not exceed n_points/4");
  if (cfg.state_index < 0) throw ConfigError("config: state_index must be >= 0");
  if (cfg.state_index >= cfg.n_states)
    throw ConfigError("config: state_index must be below n_states");
  if (!(cfg.ring_delta_nm > 0.0)) throw ConfigError("config: ring_delta_nm must be > 0");
  if (!cfg.sweep_axis.empty()) {
    try {
      sweep_axis_from_string(cfg.sweep_axis);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (cfg.ell_window_min && cfg.ell_window_max &&
      *cfg.ell_window_max < *cfg.ell_window_min)
    throw ConfigError("config: ell window is empty");
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

RadialProblem RunConfig::to_problem() const {
  RadialProblem p{Geometry{omega1_nm, omega2},
                  Fields{B_tesla, phi},
                  Mode{ell, kz_per_nm},
                  Grid(rmin_nm, rmax_nm, n_points),
                  Material(mstar_ratio, charge_sign)};
  return p;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved_entries() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("mstar_ratio", format_number(mstar_ratio));
  e.emplace_back("charge_sign", std::to_string(charge_sign));
  e.emplace_back("ell", std::to_string(ell));
  e.emplace_back("kz_per_nm", format_number(kz_per_nm));
  e.emplace_back("omega1_nm", format_number(omega1_nm));
  e.emplace_back("omega2", format_number(omega2));
  e.emplace_back("B_tesla", format_number(B_tesla));
  e.emplace_back("phi", format_number(phi));
  e.emplace_back("rmin_nm", format_number(rmin_nm));
  e.emplace_back("rmax_nm", format_number(rmax_nm));
  e.emplace_back("n_points", std::to_string(n_points));
  e.emplace_back("n_states", std::to_string(n_states));
  if (!sweep_axis.empty()) e.emplace_back("sweep_axis", sweep_axis);
  if (!sweep_values.empty()) e.emplace_back("sweep_values", format_list(sweep_values));
  if (ell_window_min) e.emplace_back("ell_window_min", std::to_string(*ell_window_min));
  if (ell_window_max) e.emplace_back("ell_window_max", std::to_string(*ell_window_max));
  e.emplace_back("ring_r0_nm", format_number(ring_r0_nm));
  e.emplace_back("ring_delta_nm", format_number(ring_delta_nm));
  e.emplace_back("state_index", std::to_string(state_index));
  return e;
}

}  // namespace heliq
