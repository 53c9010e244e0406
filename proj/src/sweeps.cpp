#include "heliq/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heliq {

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "omega1") return SweepAxis::omega1;
  if (name == "omega2") return SweepAxis::omega2;
  if (name == "B") return SweepAxis::B;
  if (name == "phi") return SweepAxis::phi;
  if (name == "kz") return SweepAxis::kz;
  throw std::invalid_argument("unknown sweep axis '" + name +
                              "' (expected omega1, omega2, B, phi or kz)");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::omega1: return "omega1";
    case SweepAxis::omega2: return "omega2";
    case SweepAxis::B: return "B";
    case SweepAxis::phi: return "phi";
    case SweepAxis::kz: return "kz";
  }
  return "?";
}

RadialProblem with_axis_value(const RadialProblem& base, SweepAxis axis, double value) {
  RadialProblem p = base;
  switch (axis) {
    case SweepAxis::omega1: p.geometry.omega1 = value; break;
    case SweepAxis::omega2: p.geometry.omega2 = value; break;
    case SweepAxis::B: p.fields.B = value; break;
    case SweepAxis::phi: p.fields.phi = value; break;
    case SweepAxis::kz: p.mode.kz = value; break;
  }
  return p;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("run_sweep: empty value list");
  for (size_t i = 1; i < spec.values.size(); ++i)
    if (!(spec.values[i] > spec.values[i - 1]))
      throw std::invalid_argument("run_sweep: values must be strictly increasing");

  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (double v : spec.values) {
    try {
      const Spectrum s =
          solve_lowest(with_axis_value(spec.base_problem, spec.axis, v), spec.n_states);
      rows.push_back(SweepRow{v, s.energies_meV, s.eps});
    } catch (const SolverError& e) {
      throw SolverError("sweep failed at " + to_string(spec.axis) + " = " +
                            std::to_string(v) + ": " + e.what(),
                        e.residual());
    }
  }
  return rows;
}

std::pair<int, int> default_ell_window(const RadialProblem& base,
                                       const std::vector<double>& phi_values) {
  if (phi_values.empty()) throw std::invalid_argument("default_ell_window: empty phi list");
  const double shift = base.mode.kz * base.geometry.omega1;
  const double lo = shift + *std::min_element(phi_values.begin(), phi_values.end());
  const double hi = shift + *std::max_element(phi_values.begin(), phi_values.end());
  return {static_cast<int>(std::floor(lo)) - 3, static_cast<int>(std::ceil(hi)) + 3};
}

namespace {

EnvelopeResult envelope_pass(const RadialProblem& base,
                             const std::vector<double>& phi_values, int ell_min,
                             int ell_max, int n_states) {
  EnvelopeResult out;
  out.phi_values = phi_values;
  out.ell_min = ell_min;
  out.ell_max = ell_max;
  out.widened = false;
  out.edge_attained = false;
  out.env_energies.assign(n_states,
                          std::vector<double>(phi_values.size(),
                                              std::numeric_limits<double>::infinity()));
  out.minimizer_ell.assign(n_states, std::vector<int>(phi_values.size(), ell_min));

  for (int ell = ell_min; ell <= ell_max; ++ell) {
    RadialProblem p = base;
    p.mode.ell = ell;
    for (size_t i = 0; i < phi_values.size(); ++i) {
      p.fields.phi = phi_values[i];
      const Spectrum s = solve_lowest(p, n_states);
      for (int n = 0; n < n_states; ++n) {
        // Strict less-than keeps the smaller ell at exact ties.
        if (s.energies_meV[n] < out.env_energies[n][i]) {
          out.env_energies[n][i] = s.energies_meV[n];
          out.minimizer_ell[n][i] = ell;
        }
      }
    }
  }
  for (int n = 0; n < n_states; ++n)
    for (size_t i = 0; i < phi_values.size(); ++i) {
      const int l = out.minimizer_ell[n][i];
      if (l == ell_min || l == ell_max) out.edge_attained = true;
    }
  return out;
}

}  // namespace

EnvelopeResult ab_envelope(const RadialProblem& base,
                           const std::vector<double>& phi_values, int ell_min,
                           int ell_max, int n_states) {
  if (phi_values.empty()) throw std::invalid_argument("ab_envelope: empty phi list");
  if (ell_max < ell_min) throw std::invalid_argument("ab_envelope: empty ell window");

  EnvelopeResult result = envelope_pass(base, phi_values, ell_min, ell_max, n_states);
  if (result.edge_attained && ell_max > ell_min) {
    result = envelope_pass(base, phi_values, ell_min - 3, ell_max + 3, n_states);
    result.widened = true;
  }
  return result;
}

double reindex_check(const RadialProblem& base, int n_states) {
  if (base.mode.kz == 0.0) throw std::invalid_argument("reindex_check: kz must be nonzero");

  RadialProblem shifted = base;
  shifted.geometry.omega1 = base.geometry.omega1 + 1.0 / base.mode.kz;

  RadialProblem relabeled = base;
  relabeled.mode.ell = base.mode.ell - 1;

  const Spectrum a = solve_lowest(shifted, n_states);
  const Spectrum b = solve_lowest(relabeled, n_states);
  double worst = 0.0;
  for (int n = 0; n < n_states; ++n) {
    const double scale = std::max(std::fabs(b.eps[n]), 1e-300);
    worst = std::max(worst, std::fabs(a.eps[n] - b.eps[n]) / scale);
  }
  return worst;
}

std::vector<FanRow> landau_fan(const RadialProblem& base,
                               const std::vector<double>& B_values,
                               const std::vector<double>& omega2_values, int n_states) {
  if (B_values.empty() || omega2_values.empty())
    throw std::invalid_argument("landau_fan: empty value list");
  std::vector<FanRow> rows;
  rows.reserve(B_values.size() * omega2_values.size());
  for (double w2 : omega2_values) {
    RadialProblem p = base;
    p.geometry.omega2 = w2;
    for (double B : B_values) {
      p.fields.B = B;
      const Spectrum s = solve_lowest(p, n_states);
      rows.push_back(FanRow{B, w2, s.energies_meV});
    }
  }
  return rows;
}

int relabeled_ell(const RadialProblem& base, double phi) {
  return static_cast<int>(std::lround(base.mode.kz * base.geometry.omega1 + phi));
}

std::vector<FluxTracePoint> flux_current_trace(const RadialProblem& base,
                                               const std::vector<double>& phi_values,
                                               double r0, double delta) {
  std::vector<FluxTracePoint> points;
  points.reserve(phi_values.size());
  for (double phi : phi_values) {
    RadialProblem p = base;
    p.fields.phi = phi;
    p.mode.ell = relabeled_ell(base, phi);
    const Spectrum s = solve_lowest(p, 1);
    FluxTracePoint pt;
    pt.phi = phi;
    pt.ell = p.mode.ell;
    pt.E0_meV = s.energies_meV[0];
    pt.ring = annular_currents(s, 0, p, r0, delta);
    points.push_back(pt);
  }
  return points;
}

}  // namespace heliq
