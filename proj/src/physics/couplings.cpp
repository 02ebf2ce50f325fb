#include "qdm/physics/couplings.hpp"

#include <cmath>
#include <numbers>

#include "qdm/errors.hpp"
#include "qdm/physics/units.hpp"
#include "qdm/quadrature.hpp"

namespace qdm::physics {

ZeemanSplittings zeeman_splittings(double B_x, double g_e, double g_h) {
  if (B_x < 0) throw DomainError("magnetic field must be non-negative");
  return zeeman_from_splittings(g_e * units::muB_ueV_per_T * B_x, g_h * units::muB_ueV_per_T * B_x);
}

ZeemanSplittings zeeman_from_splittings(double E_B_e, double E_B_h) {
  return {E_B_e, E_B_h, E_B_e + E_B_h, E_B_e - E_B_h};
}

double forster_shape_F(double x) {
  if (!(x > 0)) throw DomainError("forster_shape_F needs x > 0");
  const double x2 = x * x;
  // dt / sqrt(1 - t^2) = du; nu = x^2 tan^2(u) / 2.
  auto integrand = [x2](double u) {
    const double tn = std::tan(u);
    const double nu = 0.5 * x2 * tn * tn;
    if (!std::isfinite(nu) || nu > 745.0) return 0.0;
    return (1.0 - 2.0 * nu) * std::exp(-nu);
  };
  const auto r = quadrature::integrate(integrand, 0.0, 0.5 * std::numbers::pi, 1e-10, 1e-300);
  return x * x2 / (2.0 * std::numbers::pi) * r.value;
}

double forster_length(const DotGeometry& geom) {
  return std::sqrt(2.0 / (1.0 / (geom.l_par_e * geom.l_par_e) + 1.0 / (geom.l_par_h * geom.l_par_h)));
}

double forster_prefactor(const DotGeometry& geom) {
  if (geom.d <= 0 || geom.a <= 0 || geom.l_par_e <= 0 || geom.l_par_h <= 0)
    throw DomainError("dot geometry lengths must be positive");
  if (geom.eps_r <= 0) throw DomainError("eps_r must be positive");
  const double l = forster_length(geom);
  const double overlap = (l * l) / (geom.l_par_e * geom.l_par_h);
  const double d = geom.d * units::nm;
  const double a = geom.a * units::nm;
  const double coulomb = units::elementary_charge * units::elementary_charge /
                         (4.0 * std::numbers::pi * units::vacuum_permittivity * geom.eps_r);
  return coulomb * a * a / (d * d * d) * overlap * overlap / units::ueV;
}

double forster_coupling(const DotGeometry& geom) {
  const double x = geom.d / forster_length(geom);
  return -std::abs(forster_prefactor(geom) * forster_shape_F(x));
}

double wkb_attempt_energy(double V_barrier_meV, double d_nm, double m_eff) {
  if (V_barrier_meV <= 0 || d_nm <= 0 || m_eff <= 0)
    throw DomainError("WKB inputs must be positive");
  const double v = V_barrier_meV * units::meV;
  const double m = m_eff * units::electron_mass;
  const double w = 4.0 * std::sqrt(2.0 * v / m) / (d_nm * units::nm);
  return units::hbar_SI * w / units::meV;
}

double wkb_tunneling_rate(double V_barrier_meV, double d_nm, double m_eff) {
  const double w = wkb_attempt_energy(V_barrier_meV, d_nm, m_eff);
  const double v = V_barrier_meV;
  return 2.0 * std::numbers::e / std::numbers::pi * std::sqrt(8.0 * v * w) *
         std::exp(-16.0 * v / (3.0 * w));
}

}  // namespace qdm::physics
