// Densities, reduced probability currents, the near-axis sign law with its
// zero-crossing radius, and annularly integrated ring currents, all evaluated
// on the solver grid from a solved Spectrum.
#ifndef HELIQ_OBSERVABLES_HPP
#define HELIQ_OBSERVABLES_HPP

#include <optional>

#include "heliq/solver.hpp"

namespace heliq {

// Reduced currents carry the bracketed factors of the closed-form current
// components times |u|^2/r, with the hbar/m* prefactor divided out; multiply
// by hbar/m* to recover physical currents.
struct CurrentProfile {
  ArrayXd r;             // interior nodes (nm)
  ArrayXd density;       // |u|^2 / r, nm^-1
  ArrayXd j_phi_reduced;
  ArrayXd j_z_reduced;
  int state_index;
};

struct RingCurrents {
  double r0;     // nm
  double delta;  // nm
  double I_phi;
  double I_z;
};

// |u_n(r_i)|^2 / r_i at interior nodes.
ArrayXd density(const Spectrum& spectrum, int n, const Grid& grid);

// j~phi = [ell - phi - beta_B r^2 - kz f(r)] / r^2 * |u|^2/r.
ArrayXd azimuthal_current(const Spectrum& spectrum, int n, const RadialProblem& problem);

// j~z = [(1 + f^2/r^2) kz - (f/r^2)(ell - phi - beta_B r^2)] * |u|^2/r.
ArrayXd axial_current(const Spectrum& spectrum, int n, const RadialProblem& problem);

CurrentProfile current_profile(const Spectrum& spectrum, int n,
                               const RadialProblem& problem);

// Sign of j^z just off the axis: sgn(omega1 kz - (ell - phi)). The derivation
// assumes omega1 > 0; for omega1 < 0 the law is not established by the model.
int axis_sign_prediction(const RadialProblem& problem);

// Zero of j~z at r* = sqrt(omega1 (ell - phi)/kz - omega1^2), valid only for
// omega2 = 0 and B = 0; empty when the radicand is not positive.
std::optional<double> axial_zero_radius(const RadialProblem& problem);

// Trapezoid integrals of r * j~ over [r0 - delta, r0 + delta] with the
// annulus endpoints snapped to the nearest grid nodes.
RingCurrents annular_currents(const Spectrum& spectrum, int n,
                              const RadialProblem& problem, double r0, double delta);

}  // namespace heliq

#endif  // HELIQ_OBSERVABLES_HPP
