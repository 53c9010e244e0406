// Physical constants (CODATA 2018) and conversions between SI inputs
// (Tesla, nm, electron-mass ratios) and the internal working units:
// lengths in nm, radial eigenvalues in nm^-2, energies in meV.
#ifndef HELIQ_UNITS_HPP
#define HELIQ_UNITS_HPP

#include <cmath>
#include <stdexcept>

namespace heliq {

namespace constants {
// CODATA 2018. hbar derives from the exact h = 6.62607015e-34 J s.
inline constexpr double hbar_J_s = 1.054571817646156e-34;
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double elementary_charge_C = 1.602176634e-19;  // exact

inline constexpr double joule_to_meV = 1.0e3 / elementary_charge_C;
inline constexpr double m2_to_nm2 = 1.0e18;
}  // namespace constants

// Effective-mass particle species. charge_sign = -1 is an electron (default),
// +1 a positive carrier.
struct Material {
  double mstar_ratio = 0.067;  // m*/m_e, > 0
  int charge_sign = -1;        // in {-1, +1}

  Material() = default;
  Material(double mstar, int sign) : mstar_ratio(mstar), charge_sign(sign) {
    if (!(mstar_ratio > 0.0) || !std::isfinite(mstar_ratio))
      throw std::invalid_argument("Material: mstar_ratio must be finite and > 0");
    if (charge_sign != -1 && charge_sign != 1)
      throw std::invalid_argument("Material: charge_sign must be -1 or +1");
  }
};

// hbar^2 / (2 m*) in meV nm^2. This is the prefactor converting nm^-2
// eigenvalues of the reduced radial problem into energies.
inline double kinetic_coefficient(const Material& mat) {
  using namespace constants;
  const double c_J_m2 =
      hbar_J_s * hbar_J_s / (2.0 * electron_mass_kg * mat.mstar_ratio);
  return c_J_m2 * joule_to_meV * m2_to_nm2;
}

// Cyclotron parameter beta_B = q B / (2 hbar) in nm^-2. Negative for
// electrons in a positive field.
inline double beta_B(double B_tesla, const Material& mat) {
  using namespace constants;
  const double per_m2 =
      mat.charge_sign * elementary_charge_C * B_tesla / (2.0 * hbar_J_s);
  return per_m2 / m2_to_nm2;
}

// Reported energy E = hbar^2/(2 m*) (eps + kz^2) in meV.
inline double energy_from_eps(double eps_per_nm2, double kz_per_nm,
                              const Material& mat) {
  return kinetic_coefficient(mat) * (eps_per_nm2 + kz_per_nm * kz_per_nm);
}

// |hbar omega_c| = hbar |q| B / m* in meV.
inline double cyclotron_energy(double B_tesla, const Material& mat) {
  using namespace constants;
  const double E_J = hbar_J_s * elementary_charge_C * std::fabs(B_tesla) /
                     (electron_mass_kg * mat.mstar_ratio);
  return E_J * joule_to_meV;
}

inline double burgers_per_turn(double omega1_nm) {
  return 2.0 * M_PI * omega1_nm;
}

struct DimensionlessGroups {
  double kappa;   // kz L
  double beta1;   // kz omega1
  double beta2;   // kz omega2 L
  double lambda;  // beta_B L^2
};

inline DimensionlessGroups dimensionless_groups(double omega1_nm, double omega2,
                                                double kz_per_nm, double B_tesla,
                                                const Material& mat, double L_nm) {
  if (!(L_nm > 0.0)) throw std::invalid_argument("dimensionless_groups: L must be > 0");
  return DimensionlessGroups{kz_per_nm * L_nm, kz_per_nm * omega1_nm,
                             kz_per_nm * omega2 * L_nm,
                             beta_B(B_tesla, mat) * L_nm * L_nm};
}

}  // namespace heliq

#endif  // HELIQ_UNITS_HPP
