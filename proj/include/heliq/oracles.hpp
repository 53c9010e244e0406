// Independent verification paths: closed-form spectra in the exactly
// solvable limits and a Numerov two-sided shooting integrator that solves
// the same radial problem by a disjoint algorithm.
#ifndef HELIQ_ORACLES_HPP
#define HELIQ_ORACLES_HPP

#include "heliq/solver.hpp"
#include "heliq/units.hpp"

namespace heliq {

enum class OracleMethod { box, bessel, landau, numerov };

struct OracleResult {
  double eps;           // nm^-2
  OracleMethod method;
  double residual;      // method-specific accuracy estimate
};

// Dirichlet box on an interval of length L: eps_n = (n pi / L)^2, n >= 1.
double box_eigenvalue(int n, double L);

// Bessel function of the first kind for real order nu >= 0, by ascending
// power series with a backward-recurrence fallback at large argument. Only
// the sign and approximate magnitude matter for zero bracketing; the
// backward-recurrence branch returns an unnormalized positive multiple.
double bessel_j(double nu, double x);

// n-th positive zero of J_nu, bracketed by scanning and bisected to 1e-12
// relative.
double bessel_zero(double nu, int n);

// eps = (j_{nu,n} / r_max)^2 for the regular Dirichlet problem with
// centrifugal index nu (omega2 = 0, B = 0 limit).
double bessel_dirichlet_eigenvalue(double nu, int n, double r_max);

// Closed-form two-dimensional Landau level with angular momentum m_eff on
// the infinite plane, in meV:
//   eps = 2 |beta_B| (2 n + 1 + |m_eff|) - 2 beta_B m_eff.
// Only meaningful in the k_z = 0, omega1 = omega2 = 0 limit; note the
// Dirichlet-core numerical protocol reproduces it only for |m_eff| >= 1/2
// (see the rmin sensitivity diagnostic for the log-sensitive nu < 1/2 core).
double landau_level(int n, double m_eff, double B_tesla, const Material& mat);

// Numerov shooting for the n-th (0-based, n <= 8) eigenvalue of the problem's
// own grid: integrates from both ends, matches at the potential minimum via
// the discrete Casoratian, and bisects until the bracket is below
// 1e-10 |eps|. Node count certifies which state was found.
OracleResult numerov_eigenvalue(const RadialProblem& problem, int n);

}  // namespace heliq

#endif  // HELIQ_ORACLES_HPP
