#include "heliq/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace heliq {

SymmetricTridiagonal<double> assemble_tridiagonal(const RadialProblem& problem) {
  const Grid& g = problem.grid;
  if (g.n_points < 16) throw std::invalid_argument("assemble_tridiagonal: N < 16");
  if (!(g.r_min > 0.0)) throw std::invalid_argument("assemble_tridiagonal: r_min <= 0");

  const double h = g.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const int m = g.interior_count();

  SymmetricTridiagonal<double> T;
  T.diag = (2.0 * inv_h2 + effective_potential(problem.coupling(), g.interior_nodes()))
               .matrix();
  T.off = VectorXd::Constant(m - 1, -inv_h2);
  return T;
}

Spectrum solve_lowest(const RadialProblem& problem, int k) {
  const int n = problem.grid.n_points;
  if (k < 1 || 4 * k > n)
    throw std::invalid_argument("solve_lowest: require 1 <= k <= n_points/4");

  const auto T = assemble_tridiagonal(problem);
  Spectrum spec;
  spec.eps = smallest_eigenvalues(T, k);
  for (int j = 1; j < k; ++j)
    if (!(spec.eps[j] > spec.eps[j - 1]))
      throw SolverError("solve_lowest: eigenvalues not strictly increasing",
                        spec.eps[j] - spec.eps[j - 1]);

  spec.u = eigenvectors_for(T, spec.eps);

  // Bisection resolves eigenvalues only to ~eps * ||T||; polish each one
  // through its eigenvector so the low-lying spectrum keeps full relative
  // precision even when 2/h^2 dwarfs it.
  for (int j = 0; j < k; ++j)
    spec.eps[j] = rayleigh_refine(T, spec.eps[j], spec.u.col(j));
  for (int j = 1; j < k; ++j)
    if (!(spec.eps[j] > spec.eps[j - 1]))
      throw SolverError("solve_lowest: refined eigenvalues lost strict ordering",
                        spec.eps[j] - spec.eps[j - 1]);

  // Trapezoid normalization with zero boundary values: h * sum u_i^2 = 1.
  const double h = problem.grid.spacing();
  for (int j = 0; j < k; ++j) {
    const double norm2 = h * spec.u.col(j).squaredNorm();
    spec.u.col(j) /= std::sqrt(norm2);
  }

  spec.energies_meV.resize(k);
  for (int j = 0; j < k; ++j)
    spec.energies_meV[j] =
        energy_from_eps(spec.eps[j], problem.mode.kz, problem.material);
  return spec;
}

int count_nodes(const VectorXd& u, double noise_rel) {
  const double floor = noise_rel * u.cwiseAbs().maxCoeff();
  int changes = 0;
  double prev = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::fabs(u[i]) <= floor) continue;
    if (prev != 0.0 && u[i] * prev < 0.0) ++changes;
    prev = u[i];
  }
  return changes;
}

ConvergenceReport convergence_check(const RadialProblem& problem, int k) {
  ConvergenceReport report;
  report.eps_base = solve_lowest(problem, k).eps;

  RadialProblem refined = problem;
  refined.grid = Grid(problem.grid.r_min, problem.grid.r_max, 2 * problem.grid.n_points);
  report.eps_refined_mesh = solve_lowest(refined, k).eps;

  const double h = problem.grid.spacing();
  const double r_max_ext = 1.3 * problem.grid.r_max;
  const int n_ext =
      static_cast<int>(std::lround((r_max_ext - problem.grid.r_min) / h)) + 1;
  RadialProblem extended = problem;
  extended.grid = Grid(problem.grid.r_min, r_max_ext, n_ext);
  report.eps_extended_box = solve_lowest(extended, k).eps;

  double worst = 0.0;
  for (int j = 0; j < k; ++j) {
    const double scale = std::fabs(report.eps_base[j]);
    if (scale == 0.0) continue;
    worst = std::max(worst,
                     std::fabs(report.eps_refined_mesh[j] - report.eps_base[j]) / scale);
    worst = std::max(worst,
                     std::fabs(report.eps_extended_box[j] - report.eps_base[j]) / scale);
  }
  report.max_rel_change = worst;
  report.pass = worst < 1e-3;
  return report;
}

RminSensitivity rmin_sensitivity(const RadialProblem& problem, int k,
                                 const std::vector<double>& r_min_values) {
  RminSensitivity out;
  out.r_min_values = r_min_values;
  for (double rmin : r_min_values) {
    RadialProblem p = problem;
    p.grid = Grid(rmin, problem.grid.r_max, problem.grid.n_points);
    out.eps.push_back(solve_lowest(p, k).eps);
  }
  return out;
}

}  // namespace heliq
