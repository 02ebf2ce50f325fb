#pragma once

#include "qdm/physics/params.hpp"

namespace qdm::physics {

struct ZeemanSplittings {
  double E_B_e;    // μeV
  double E_B_h;    // μeV
  double Delta_H;  // E_B_e + E_B_h
  double Delta_V;  // E_B_e - E_B_h
};

/// E = g mu_B B_x for each species.
ZeemanSplittings zeeman_splittings(double B_x, double g_e, double g_h);
/// Same combinations from directly specified splittings.
ZeemanSplittings zeeman_from_splittings(double E_B_e, double E_B_h);

/// F(x) = x^3/(2 pi) \int_0^1 dt (1 - 2 nu) e^{-nu} / sqrt(1 - t^2),
/// nu = x^2 t^2 / (2 (1 - t^2)). Evaluated with t = sin u, which removes
/// the endpoint singularity; relative error <= 1e-8.
double forster_shape_F(double x);

/// Effective in-plane length l with l^2 = 2 / (1/l_e^2 + 1/l_h^2), nm.
double forster_length(const DotGeometry& geom);

/// e^2 |a|^2 / (4 pi eps d^3) (l^2 / (l_e l_h))^2 in μeV, without F.
double forster_prefactor(const DotGeometry& geom);

/// Signed Förster coupling -|V_F| in μeV.
double forster_coupling(const DotGeometry& geom);

/// WKB estimate t_e = (2e/pi) sqrt(8 V w) exp(-16 V / (3 w)), where
/// w = hbar 4 sqrt(2 V / m) / d is an energy and e is Euler's number.
/// V in meV, d in nm, m_eff in units of the free-electron mass; returns meV.
double wkb_tunneling_rate(double V_barrier_meV, double d_nm, double m_eff);

/// The attempt energy w above, in meV.
double wkb_attempt_energy(double V_barrier_meV, double d_nm, double m_eff);

}  // namespace qdm::physics
