#include "heliq/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace heliq {

namespace {

void check_state(const Spectrum& spectrum, int n) {
  if (n < 0 || n >= spectrum.u.cols())
    throw std::out_of_range("state index outside the solved spectrum");
}

}  // namespace

ArrayXd density(const Spectrum& spectrum, int n, const Grid& grid) {
  check_state(spectrum, n);
  const ArrayXd r = grid.interior_nodes();
  return spectrum.u.col(n).array().square() / r;
}

ArrayXd azimuthal_current(const Spectrum& spectrum, int n,
                          const RadialProblem& problem) {
  check_state(spectrum, n);
  const ArrayXd r = problem.grid.interior_nodes();
  const Coupling c = problem.coupling();
  const ArrayXd bracket = c.offset - c.kz_omega2 * r - c.betaB * r.square();
  return bracket / r.square() * density(spectrum, n, problem.grid);
}

ArrayXd axial_current(const Spectrum& spectrum, int n, const RadialProblem& problem) {
  check_state(spectrum, n);
  const ArrayXd r = problem.grid.interior_nodes();
  const double kz = problem.mode.kz;
  const double betaB = beta_B(problem.fields.B, problem.material);
  const double m_shift = problem.mode.ell - problem.fields.phi;
  const ArrayXd f = problem.geometry.omega1 + problem.geometry.omega2 * r;
  const ArrayXd factor =
      (1.0 + f.square() / r.square()) * kz -
      f / r.square() * (m_shift - betaB * r.square());
  return factor * density(spectrum, n, problem.grid);
}

CurrentProfile current_profile(const Spectrum& spectrum, int n,
                               const RadialProblem& problem) {
  CurrentProfile p;
  p.r = problem.grid.interior_nodes();
  p.density = density(spectrum, n, problem.grid);
  p.j_phi_reduced = azimuthal_current(spectrum, n, problem);
  p.j_z_reduced = axial_current(spectrum, n, problem);
  p.state_index = n;
  return p;
}

int axis_sign_prediction(const RadialProblem& problem) {
  const double value = problem.geometry.omega1 * problem.mode.kz -
                       (problem.mode.ell - problem.fields.phi);
  if (value > 0.0) return 1;
  if (value < 0.0) return -1;
  return 0;
}

std::optional<double> axial_zero_radius(const RadialProblem& problem) {
  if (problem.geometry.omega2 != 0.0 || problem.fields.B != 0.0)
    throw std::invalid_argument("axial_zero_radius: requires omega2 = 0 and B = 0");
  if (problem.mode.kz == 0.0)
    throw std::invalid_argument("axial_zero_radius: requires kz != 0");
  const double w1 = problem.geometry.omega1;
  const double radicand =
      w1 * (problem.mode.ell - problem.fields.phi) / problem.mode.kz - w1 * w1;
  if (radicand <= 0.0) return std::nullopt;
  return std::sqrt(radicand);
}

RingCurrents annular_currents(const Spectrum& spectrum, int n,
                              const RadialProblem& problem, double r0, double delta) {
  check_state(spectrum, n);
  if (!(delta > 0.0)) throw std::invalid_argument("annular_currents: delta must be > 0");
  const Grid& g = problem.grid;
  const double h = g.spacing();
  if (r0 - delta < g.r_min || r0 + delta > g.r_max)
    throw std::invalid_argument("annular_currents: annulus outside the grid");

  // Snap annulus endpoints to the nearest interior nodes.
  const int m = g.interior_count();
  auto snap = [&](double r) {
    int idx = static_cast<int>(std::lround((r - g.r_min) / h)) - 1;
    return std::clamp(idx, 0, m - 1);
  };
  const int i_lo = snap(r0 - delta);
  const int i_hi = snap(r0 + delta);
  if (i_hi <= i_lo)
    throw std::invalid_argument("annular_currents: annulus narrower than one grid cell");

  const ArrayXd r = g.interior_nodes();
  const ArrayXd jphi = azimuthal_current(spectrum, n, problem);
  const ArrayXd jz = axial_current(spectrum, n, problem);

  auto trapezoid = [&](const ArrayXd& integrand) {
    double sum = 0.5 * (integrand[i_lo] + integrand[i_hi]);
    for (int i = i_lo + 1; i < i_hi; ++i) sum += integrand[i];
    return h * sum;
  };

  RingCurrents out;
  out.r0 = r0;
  out.delta = delta;
  out.I_phi = trapezoid(r * jphi);
  out.I_z = trapezoid(r * jz);
  return out;
}

}  // namespace heliq
