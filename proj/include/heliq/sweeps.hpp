// Parameter scans over (omega1, omega2, B, phi, kz), AB envelopes over
// azimuthal windows, the reindexing-symmetry check, and Landau-fan tables.
#ifndef HELIQ_SWEEPS_HPP
#define HELIQ_SWEEPS_HPP

#include <string>
#include <vector>

#include "heliq/observables.hpp"
#include "heliq/solver.hpp"

namespace heliq {

enum class SweepAxis { omega1, omega2, B, phi, kz };

SweepAxis sweep_axis_from_string(const std::string& name);
std::string to_string(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis;
  std::vector<double> values;  // strictly increasing
  RadialProblem base_problem;
  int n_states;
};

struct SweepRow {
  double axis_value;
  VectorXd energies_meV;
  VectorXd eps;
};

// Returns the problem with the swept axis set to `value`.
RadialProblem with_axis_value(const RadialProblem& base, SweepAxis axis, double value);

// One solve per value, rows in input order. Solver failures are rethrown
// annotated with the offending axis value.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct EnvelopeResult {
  std::vector<double> phi_values;
  // env_energies[n][i] = min over ell of E_{n,ell}(phi_i), meV.
  std::vector<std::vector<double>> env_energies;
  std::vector<std::vector<int>> minimizer_ell;  // same shape
  int ell_min;
  int ell_max;
  bool widened;        // the window was widened once after an edge minimizer
  bool edge_attained;  // a minimizer still sits on the window edge
};

// Per-state envelopes E_n^env(phi) = min over ell in [ell_min, ell_max] of
// the branch energies. Ties at cusps resolve to the smaller ell. An
// edge-attained minimizer widens the window once by 3 on the offending side.
EnvelopeResult ab_envelope(const RadialProblem& base, const std::vector<double>& phi_values,
                           int ell_min, int ell_max, int n_states);

// Default azimuthal window [floor(kz w1 + phi_min) - 3, ceil(kz w1 + phi_max) + 3].
std::pair<int, int> default_ell_window(const RadialProblem& base,
                                       const std::vector<double>& phi_values);

// Solves (omega1 + 1/kz, ell) against (omega1, ell - 1) and returns the
// largest relative eigenvalue deviation over the lowest n_states.
double reindex_check(const RadialProblem& base, int n_states);

struct FanRow {
  double B;
  double omega2;
  VectorXd energies_meV;
};

// E_n(B; omega2) on the product grid, one solve per cell, row-major in
// (omega2, B) input order.
std::vector<FanRow> landau_fan(const RadialProblem& base, const std::vector<double>& B_values,
                               const std::vector<double>& omega2_values, int n_states);

// Ground-state azimuthal label used when tracing observables across flux:
// the integer nearest kz*omega1 + phi (the index minimizing the effective
// index nu), which shifts by exactly +1 under phi -> phi + 1.
int relabeled_ell(const RadialProblem& base, double phi);

struct FluxTracePoint {
  double phi;
  int ell;
  double E0_meV;
  RingCurrents ring;
};

// Annular currents of the AB-relabeled ground state across a flux sweep.
std::vector<FluxTracePoint> flux_current_trace(const RadialProblem& base,
                                               const std::vector<double>& phi_values,
                                               double r0, double delta);

}  // namespace heliq

#endif  // HELIQ_SWEEPS_HPP
