// Finite-difference discretization of the reduced radial problem
// -u'' + U(r) u = eps u with Dirichlet boundaries, and extraction of the
// lowest eigenpairs with trapezoid-normalized eigenvectors.
#ifndef HELIQ_SOLVER_HPP
#define HELIQ_SOLVER_HPP

#include <Eigen/Core>
#include <vector>

#include "heliq/model.hpp"
#include "heliq/tridiagonal.hpp"
#include "heliq/units.hpp"

namespace heliq {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Uniform grid of n_points nodes including both endpoints; Dirichlet
// elimination leaves n_points - 2 interior unknowns.
struct Grid {
  double r_min;
  double r_max;
  int n_points;

  Grid(double rmin, double rmax, int n) : r_min(rmin), r_max(rmax), n_points(n) {
    if (!(r_min > 0.0)) throw std::invalid_argument("Grid: r_min must be > 0");
    if (!(r_max > r_min)) throw std::invalid_argument("Grid: r_max must exceed r_min");
    if (n_points < 16) throw std::invalid_argument("Grid: need at least 16 points");
  }

  double spacing() const { return (r_max - r_min) / (n_points - 1); }
  double node(int i) const { return r_min + i * spacing(); }
  int interior_count() const { return n_points - 2; }

  ArrayXd interior_nodes() const {
    const double h = spacing();
    ArrayXd r(interior_count());
    for (int i = 0; i < interior_count(); ++i) r[i] = r_min + (i + 1) * h;
    return r;
  }
};

// Complete immutable description of one eigenproblem.
struct RadialProblem {
  Geometry geometry;
  Fields fields;
  Mode mode;
  Grid grid;
  Material material;

  Coupling coupling() const {
    return make_coupling(geometry, fields, mode, material);
  }
};

// Lowest-k eigenpairs. u columns are sampled at interior nodes and normalized
// by the trapezoid rule with zero boundary values, so integral |u|^2 dr = 1.
struct Spectrum {
  VectorXd eps;          // nm^-2, strictly increasing
  MatrixXd u;            // interior_count x k
  VectorXd energies_meV; // kinetic_coefficient * (eps + kz^2)
};

SymmetricTridiagonal<double> assemble_tridiagonal(const RadialProblem& problem);

Spectrum solve_lowest(const RadialProblem& problem, int k);

// Number of interior sign changes of a sampled eigenvector, ignoring
// components below a noise floor relative to the peak.
int count_nodes(const VectorXd& u, double noise_rel = 1e-9);

struct ConvergenceReport {
  VectorXd eps_base;
  VectorXd eps_refined_mesh;  // n_points doubled
  VectorXd eps_extended_box;  // r_max * 1.3, spacing preserved
  double max_rel_change;
  bool pass;  // max_rel_change < 1e-3
};

// Re-solves with a doubled mesh and with a 30% larger box (same spacing) and
// reports the worst relative eigenvalue change over the k lowest states.
ConvergenceReport convergence_check(const RadialProblem& problem, int k);

struct RminSensitivity {
  std::vector<double> r_min_values;
  std::vector<VectorXd> eps;  // one entry per r_min
};

// Diagnostic sweep of the core cutoff, default {1e-4, 1e-3, 1e-2} nm. Levels
// with effective index nu >= 1/2 are insensitive; for nu < 1/2 the attractive
// -1/(4 r^2) tail makes the dependence physical, and this reports it rather
// than hiding it.
RminSensitivity rmin_sensitivity(const RadialProblem& problem, int k,
                                 const std::vector<double>& r_min_values = {1e-4, 1e-3,
                                                                            1e-2});

}  // namespace heliq

#endif  // HELIQ_SOLVER_HPP
