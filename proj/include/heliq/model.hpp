// Geometry/field/mode parameters of the twisted-screw radial problem and the
// closed-form pieces built from them: the mixing profile f(r), the effective
// angular index nu, the reduced Sturm-Liouville potential U(r), its term
// decomposition, and the per-turn geometric phase.
#ifndef HELIQ_MODEL_HPP
#define HELIQ_MODEL_HPP

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

#include "heliq/units.hpp"

namespace heliq {

using Eigen::ArrayXd;

// Screw/twist geometry. omega1 (nm) is the global screw parameter, omega2
// (dimensionless) the local distributed twist. Either sign is allowed.
struct Geometry {
  double omega1 = 0.0;
  double omega2 = 0.0;
};

// External fields: uniform axial B (Tesla) and reduced AB flux phi = Phi/Phi0.
// phi is not wrapped; periodicity in phi is a property of the physics, not of
// the data type.
struct Fields {
  double B = 0.0;
  double phi = 0.0;
};

// Quantum numbers of a separated mode: integer azimuthal index ell and axial
// wavenumber kz (nm^-1).
struct Mode {
  int ell = 0;
  double kz = 0.0;
};

// f(r) = omega1 + omega2 r, the azimuthal-axial mixing profile.
inline double screw_profile(const Geometry& g, double r) {
  return g.omega1 + g.omega2 * r;
}

// ell - phi - kz omega1: the signed combination every coupling depends on.
inline double angular_offset(const Mode& m, const Fields& f, const Geometry& g) {
  return static_cast<double>(m.ell) - f.phi - m.kz * g.omega1;
}

// nu = |ell - phi - kz omega1|, the effective index governing the r -> 0
// scaling u ~ r^(nu + 1/2).
inline double effective_index(const Mode& m, const Fields& f, const Geometry& g) {
  return std::fabs(angular_offset(m, f, g));
}

// Reduced parameter set of the radial problem; everything downstream of the
// separation ansatz depends only on these three numbers.
struct Coupling {
  double offset;     // ell - phi - kz omega1
  double kz_omega2;  // kz omega2 (nm^-1)
  double betaB;      // q B / (2 hbar) (nm^-2)
};

inline Coupling make_coupling(const Geometry& g, const Fields& f, const Mode& m,
                              const Material& mat) {
  return Coupling{angular_offset(m, f, g), m.kz * g.omega2, beta_B(f.B, mat)};
}

// The bracket ell - phi - kz f(r) - beta_B r^2 shared by the potential and
// the azimuthal current.
inline double coupling_bracket(const Coupling& c, double r) {
  return c.offset - c.kz_omega2 * r - c.betaB * r * r;
}

// U(r) = bracket^2 / r^2 - 1/(4 r^2). Evaluated in compact squared form;
// the expanded decomposition below is a diagnostic, not the evaluation path.
inline double effective_potential(const Coupling& c, double r) {
  if (!(r > 0.0)) throw std::domain_error("effective_potential: r must be > 0");
  const double b = coupling_bracket(c, r);
  return (b * b - 0.25) / (r * r);
}

inline double effective_potential(const Geometry& g, const Fields& f,
                                  const Mode& m, const Material& mat, double r) {
  return effective_potential(make_coupling(g, f, m, mat), r);
}

// Vectorized form for grid assembly.
inline ArrayXd effective_potential(const Coupling& c, const ArrayXd& r) {
  if ((r <= 0.0).any()) throw std::domain_error("effective_potential: r must be > 0");
  const ArrayXd b = c.offset - c.kz_omega2 * r - c.betaB * r.square();
  return (b.square() - 0.25) / r.square();
}

// Coefficients of the expanded radial bracket, grouped by power of r. The
// recomposition -(constant_shift + coulomb/r + centrifugal/r^2 + tilt r
// + landau r^2) equals U(r) + 1/(4 r^2).
struct TermDecomposition {
  double constant_shift;    // -kz^2 w2^2 + 2 beta_B (ell - phi - kz w1)
  double centrifugal_coeff; // -(ell - phi - kz w1)^2, coefficient of 1/r^2
  double coulomb_coeff;     // 2 kz w2 (ell - phi - kz w1), coefficient of 1/r
  double linear_tilt_coeff; // -2 kz w2 beta_B, coefficient of r
  double landau_coeff;      // -beta_B^2, coefficient of r^2
};

inline TermDecomposition term_decomposition(const Coupling& c) {
  return TermDecomposition{
      -c.kz_omega2 * c.kz_omega2 + 2.0 * c.betaB * c.offset,
      -c.offset * c.offset,
      2.0 * c.kz_omega2 * c.offset,
      -2.0 * c.kz_omega2 * c.betaB,
      -c.betaB * c.betaB,
  };
}

inline TermDecomposition term_decomposition(const Geometry& g, const Fields& f,
                                            const Mode& m, const Material& mat) {
  return term_decomposition(make_coupling(g, f, m, mat));
}

// Phase gained by a kz eigenwave after one revolution at radius r:
// 2 pi kz (omega1 + omega2 r).
inline double geometric_phase(const Geometry& g, double kz, double r) {
  if (r < 0.0) throw std::domain_error("geometric_phase: r must be >= 0");
  return 2.0 * M_PI * kz * screw_profile(g, r);
}

// Relative phase between circular paths at r1 and r2. The omega1 part
// cancels between the arms; only the local twist survives.
inline double relative_phase(const Geometry& g, double kz, double r1, double r2) {
  if (r1 < 0.0 || r2 < 0.0) throw std::domain_error("relative_phase: radii must be >= 0");
  return 2.0 * M_PI * kz * g.omega2 * (r1 - r2);
}

}  // namespace heliq

#endif  // HELIQ_MODEL_HPP
