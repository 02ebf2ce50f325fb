#include "qdm/physics/phonons.hpp"

#include <cmath>
#include <numbers>

#include "qdm/errors.hpp"
#include "qdm/physics/units.hpp"
#include "qdm/quadrature.hpp"

namespace qdm::physics {

namespace {

constexpr double kRelTol = 1e-8;  // per nested integral; the product stays well under 1e-6

}  // namespace

double form_factor(double q_par, double q_z, double l_par, double l_perp) {
  if (l_par <= 0 || l_perp <= 0) throw DomainError("form factor lengths must be positive");
  return std::exp(-q_par * q_par * l_par * l_par / 8.0 - q_z * q_z * l_perp * l_perp / 4.0);
}

double piezo_angular(double theta, double phi, double M_p) {
  const double s = std::sin(theta);
  const double radicand = 9.0 + 7.0 * std::cos(2.0 * theta) - 2.0 * std::cos(4.0 * phi) * s * s;
  return 0.25 * s * M_p * std::sqrt(std::max(0.0, radicand));
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double phonon_wavenumber(double omega_ueV, const MaterialParams& material) {
  if (material.c_s <= 0) throw DomainError("sound speed must be positive");
  return omega_ueV * units::ueV / (units::hbar_SI * material.c_s) * units::nm;
}

double angular_coupling(double omega_ueV, const DotGeometry& geom, const MaterialParams& material) {
  if (omega_ueV < 0) throw DomainError("spectral density needs omega >= 0");
  if (material.mass_density <= 0 || material.c_s <= 0)
    throw DomainError("mass density and sound speed must be positive");
  if (omega_ueV == 0) return 0.0;

  const double q = phonon_wavenumber(omega_ueV, material);
  const double energy = omega_ueV * units::ueV;
  const double rho_cs = 8.0 * std::numbers::pi * std::numbers::pi * units::hbar_SI * material.mass_density;
  const double c = material.c_s;
  // Prefactors turning eV^2 (deformation) and (eV/nm)^2 (piezo) into J.
  const double pref_d = energy * energy * energy /
                        (rho_cs * units::hbar_SI * units::hbar_SI * c * c * c * c * c) * units::eV * units::eV;
  const double piezo_unit = units::eV / units::nm;
  const double pref_p = energy / (rho_cs * c * c * c) * piezo_unit * piezo_unit;

  auto over_phi = [&](double theta) {
    const double qp = q * std::sin(theta);
    const double qz = q * std::cos(theta);
    const double re = form_factor(qp, qz, geom.l_par_e, geom.l_perp);
    const double rh = form_factor(qp, qz, geom.l_par_h, geom.l_perp);
    const double deformation = material.D_e * re - material.D_h * rh;
    const double gd = pref_d * deformation * deformation;
    const double dr2 = (re - rh) * (re - rh);
    auto integrand = [&](double phi) {
      const double p = piezo_angular(theta, phi, material.M_p);
      return gd + pref_p * p * p * dr2;
    };
    const double scale = gd + pref_p * material.M_p * material.M_p * dr2;
    return std::sin(theta) *
           quadrature::integrate(integrand, 0.0, 2.0 * std::numbers::pi, kRelTol, 1e-14 * scale).value;
  };
  const double total = quadrature::integrate(over_phi, 0.0, std::numbers::pi, kRelTol, 0.0).value;
  return total / units::ueV;
}

double spectral_density(double omega_ueV, Parity parity, const DotGeometry& geom,
                        const MaterialParams& material) {
  const double base = angular_coupling(omega_ueV, geom, material);
  if (base == 0) return 0.0;
  const double phase = phonon_wavenumber(omega_ueV, material) * geom.d;
  const double s = sinc(phase);
  return (parity == Parity::plus ? 1.0 + s : 1.0 - s) * base;
}

double bose_occupation(double omega_ueV, double T) {
  if (!(omega_ueV > 0)) throw DomainError("Bose occupation needs omega > 0");
  if (T < 0) throw DomainError("temperature must be non-negative");
  if (T == 0) return 0.0;
  return 1.0 / std::expm1(omega_ueV / (units::kB_ueV_per_K * T));
}

}  // namespace qdm::physics
