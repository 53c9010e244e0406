#include "heliq/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "heliq/observables.hpp"
#include "heliq/oracles.hpp"
#include "heliq/sweeps.hpp"

namespace heliq {

namespace fs = std::filesystem;

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string provenance_header(const RunConfig& cfg, const std::string& command) {
  std::ostringstream out;
  out << "# heliq " << command << "\n";
  for (const auto& [key, value] : cfg.resolved_entries())
    out << "# " << key << " = " << value << "\n";
  return out.str();
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void note(const CommandOptions& opt, const std::string& message) {
  if (!opt.quiet) std::cout << message << "\n";
}

}  // namespace

void cmd_solve(const RunConfig& cfg, const CommandOptions& opt) {
  const RadialProblem problem = cfg.to_problem();
  const Spectrum spec = solve_lowest(problem, cfg.n_states);

  std::ostringstream table;
  table << provenance_header(cfg, "solve");
  table << "n,eps_per_nm2,E_meV\n";
  for (int n = 0; n < cfg.n_states; ++n)
    table << n << "," << format_sig12(spec.eps[n]) << ","
          << format_sig12(spec.energies_meV[n]) << "\n";
  write_atomic(opt.out_dir / "spectrum.csv", table.str());

  const ArrayXd r = problem.grid.interior_nodes();
  for (int n = 0; n < cfg.n_states; ++n) {
    const ArrayXd rho = density(spec, n, problem.grid);
    std::ostringstream state;
    state << provenance_header(cfg, "solve");
    state << "r_nm,u,density_per_nm\n";
    for (Eigen::Index i = 0; i < r.size(); ++i)
      state << format_sig12(r[i]) << "," << format_sig12(spec.u(i, n)) << ","
            << format_sig12(rho[i]) << "\n";
    write_atomic(opt.out_dir / ("state_" + std::to_string(n) + ".csv"), state.str());
  }
  note(opt, "wrote spectrum.csv and " + std::to_string(cfg.n_states) + " state files");
}

void cmd_currents(const RunConfig& cfg, const CommandOptions& opt, int state_index,
                  double r0, double delta, bool emit_plot) {
  const RadialProblem problem = cfg.to_problem();
  const Spectrum spec = solve_lowest(problem, cfg.n_states);
  const CurrentProfile profile = current_profile(spec, state_index, problem);

  std::ostringstream table;
  table << provenance_header(cfg, "currents");
  table << "r_nm,density_per_nm,j_phi_reduced,j_z_reduced\n";
  for (Eigen::Index i = 0; i < profile.r.size(); ++i)
    table << format_sig12(profile.r[i]) << "," << format_sig12(profile.density[i]) << ","
          << format_sig12(profile.j_phi_reduced[i]) << ","
          << format_sig12(profile.j_z_reduced[i]) << "\n";
  const std::string currents_name = "currents_" + std::to_string(state_index) + ".csv";
  write_atomic(opt.out_dir / currents_name, table.str());

  const RingCurrents ring = annular_currents(spec, state_index, problem, r0, delta);
  std::ostringstream ring_table;
  ring_table << provenance_header(cfg, "currents");
  ring_table << "r0_nm,delta_nm,I_phi,I_z\n";
  ring_table << format_sig12(ring.r0) << "," << format_sig12(ring.delta) << ","
             << format_sig12(ring.I_phi) << "," << format_sig12(ring.I_z) << "\n";
  write_atomic(opt.out_dir / "ring_currents.csv", ring_table.str());

  if (emit_plot) {
    std::ostringstream plot;
    plot << "# gnuplot script for the current profiles\n";
    plot << "set datafile separator ','\n";
    plot << "set xrange [0:40]\n";
    plot << "set xlabel 'r (nm)'\n";
    plot << "set terminal pngcairo size 900,420\n";
    plot << "set output 'currents_" << state_index << ".png'\n";
    plot << "plot '" << currents_name << "' using 1:3 with lines title 'j_phi (reduced)', \\\n";
    plot << "     '" << currents_name << "' using 1:4 with lines title 'j_z (reduced)'\n";
    write_atomic(opt.out_dir / "plot_currents.gp", plot.str());
  }
  note(opt, "wrote " + currents_name + " and ring_currents.csv");
}

void cmd_sweep(const RunConfig& cfg, const CommandOptions& opt) {
  if (cfg.sweep_axis.empty() || cfg.sweep_values.empty())
    throw ConfigError("sweep: config must set sweep_axis and sweep_values");
  SweepSpec spec{sweep_axis_from_string(cfg.sweep_axis), cfg.sweep_values,
                 cfg.to_problem(), cfg.n_states};
  const auto rows = run_sweep(spec);

  std::ostringstream table;
  table << provenance_header(cfg, "sweep");
  table << "axis_value";
  for (int n = 0; n < cfg.n_states; ++n) table << ",E_" << n;
  for (int n = 0; n < cfg.n_states; ++n) table << ",eps_" << n;
  table << "\n";
  for (const auto& row : rows) {
    table << format_sig12(row.axis_value);
    for (int n = 0; n < cfg.n_states; ++n) table << "," << format_sig12(row.energies_meV[n]);
    for (int n = 0; n < cfg.n_states; ++n) table << "," << format_sig12(row.eps[n]);
    table << "\n";
  }
  write_atomic(opt.out_dir / "sweep.csv", table.str());
  note(opt, "wrote sweep.csv (" + std::to_string(rows.size()) + " rows)");
}

void cmd_envelope(const RunConfig& cfg, const CommandOptions& opt) {
  std::vector<double> phi_values = cfg.sweep_values;
  if (phi_values.empty()) phi_values = parse_value_list("0:2:0.02");

  const RadialProblem base = cfg.to_problem();
  auto [auto_min, auto_max] = default_ell_window(base, phi_values);
  const int ell_min = cfg.ell_window_min.value_or(auto_min);
  const int ell_max = cfg.ell_window_max.value_or(auto_max);

  const EnvelopeResult env = ab_envelope(base, phi_values, ell_min, ell_max, cfg.n_states);

  std::ostringstream table;
  table << provenance_header(cfg, "envelope");
  table << "# ell_window = [" << env.ell_min << ", " << env.ell_max << "]"
        << (env.widened ? " (auto-widened)" : "") << "\n";
  if (env.edge_attained)
    table << "# warning: minimizer touches the window edge; widen ell_window\n";
  table << "phi";
  for (int n = 0; n < cfg.n_states; ++n) table << ",E" << n << "_env,ell" << n;
  table << "\n";
  for (size_t i = 0; i < env.phi_values.size(); ++i) {
    table << format_sig12(env.phi_values[i]);
    for (int n = 0; n < cfg.n_states; ++n)
      table << "," << format_sig12(env.env_energies[n][i]) << ","
            << env.minimizer_ell[n][i];
    table << "\n";
  }
  write_atomic(opt.out_dir / "envelope.csv", table.str());
  note(opt, "wrote envelope.csv (" + std::to_string(phi_values.size()) + " flux points)");
}

void cmd_fan(const RunConfig& cfg, const CommandOptions& opt,
             const std::vector<double>& omega2_values) {
  if (cfg.sweep_values.empty())
    throw ConfigError("fan: config must set sweep_values with the B grid");
  if (omega2_values.empty()) throw ConfigError("fan: omega2 value list is empty");

  const auto rows = landau_fan(cfg.to_problem(), cfg.sweep_values, omega2_values,
                               cfg.n_states);
  std::ostringstream table;
  table << provenance_header(cfg, "fan");
  table << "B_tesla,omega2";
  for (int n = 0; n < cfg.n_states; ++n) table << ",E_" << n;
  table << "\n";
  for (const auto& row : rows) {
    table << format_sig12(row.B) << "," << format_sig12(row.omega2);
    for (int n = 0; n < cfg.n_states; ++n) table << "," << format_sig12(row.energies_meV[n]);
    table << "\n";
  }
  write_atomic(opt.out_dir / "fan.csv", table.str());
  note(opt, "wrote fan.csv (" + std::to_string(rows.size()) + " rows)");
}

bool cmd_check(const RunConfig& cfg, const CommandOptions& opt) {
  const RadialProblem problem = cfg.to_problem();
  const ConvergenceReport report = convergence_check(problem, cfg.n_states);

  std::ostringstream out;
  out << provenance_header(cfg, "check");
  out << (report.pass ? "PASS" : "FAIL") << "\n";
  out << "max_rel_change = " << format_sig12(report.max_rel_change) << "\n";
  for (int n = 0; n < cfg.n_states; ++n) {
    out << "state " << n << ": eps_base = " << format_sig12(report.eps_base[n])
        << ", eps_mesh_doubled = " << format_sig12(report.eps_refined_mesh[n])
        << ", eps_box_extended = " << format_sig12(report.eps_extended_box[n]) << "\n";
  }

  // Core-cutoff sensitivity diagnostic; levels with nu < 1/2 genuinely
  // depend on r_min and this is where that shows up.
  const RminSensitivity sens = rmin_sensitivity(problem, cfg.n_states);
  out << "r_min sensitivity (eps_0 by r_min):";
  for (size_t i = 0; i < sens.r_min_values.size(); ++i)
    out << " " << format_sig12(sens.r_min_values[i]) << " -> "
        << format_sig12(sens.eps[i][0]) << ";";
  out << "\n";

  write_atomic(opt.out_dir / "convergence.txt", out.str());
  note(opt, std::string(report.pass ? "PASS" : "FAIL") +
                " (max relative change " + format_sig12(report.max_rel_change) + ")");
  return report.pass;
}

void cmd_oracle(const RunConfig& cfg, const CommandOptions& opt) {
  const RadialProblem problem = cfg.to_problem();
  const Spectrum spec = solve_lowest(problem, cfg.n_states);
  const Material& mat = problem.material;

  std::ostringstream table;
  table << provenance_header(cfg, "oracle");
  table << "method,n,eps_per_nm2,E_meV,residual\n";
  auto emit = [&](const std::string& method, int n, double eps, double residual) {
    table << method << "," << n << "," << format_sig12(eps) << ","
          << format_sig12(energy_from_eps(eps, problem.mode.kz, mat)) << ","
          << format_sig12(residual) << "\n";
  };

  for (int n = 0; n < cfg.n_states; ++n) emit("solver", n, spec.eps[n], 0.0);
  for (int n = 0; n < cfg.n_states && n <= 8; ++n) {
    const OracleResult numerov = numerov_eigenvalue(problem, n);
    emit("numerov", n, numerov.eps, numerov.residual);
  }

  const double nu = effective_index(problem.mode, problem.fields, problem.geometry);
  const bool field_free = problem.fields.B == 0.0;
  const bool no_twist = problem.geometry.omega2 == 0.0;
  if (field_free && no_twist) {
    for (int n = 1; n <= cfg.n_states; ++n) {
      if (std::fabs(nu - 0.5) < 1e-12)
        emit("box", n - 1, box_eigenvalue(n, problem.grid.r_max - problem.grid.r_min), 0.0);
      emit("bessel", n - 1, bessel_dirichlet_eigenvalue(nu, n, problem.grid.r_max), 0.0);
    }
  }
  if (!field_free && no_twist && problem.geometry.omega1 == 0.0 &&
      problem.mode.kz == 0.0) {
    const double m_eff = problem.mode.ell - problem.fields.phi;
    for (int n = 0; n < cfg.n_states; ++n) {
      const double E = landau_level(n, m_eff, problem.fields.B, mat);
      emit("landau", n, E / kinetic_coefficient(mat), 0.0);
    }
  }

  write_atomic(opt.out_dir / "oracle.csv", table.str());
  note(opt, "wrote oracle.csv");
}

}  // namespace heliq
