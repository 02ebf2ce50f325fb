#pragma once

#include <algorithm>
#include <cmath>

namespace qdm::physics {

/// Laser and radiative parameters, all in μeV.
struct DriveParams {
  double omega = 20.0;      // trion pump Rabi frequency
  double omega_m = 9.0;     // ground-state Raman coupling
  double detuning = 200.0;  // trion energy minus laser frequency (rotating frame)
  double gamma0 = 0.6;      // decay |s> -> |0>
  double gamma1 = 0.6;      // decay |s> -> |1>

  double gamma() const { return gamma0 + gamma1; }
};

/// Inter-dot couplings, all in μeV. The intra/inter-dot exciton detuning
/// delta = V_F + omega - omega_t is stored directly; omega is only a
/// reference energy and omega_t follows from it.
struct CouplingParams {
  double V_F = -200.0;
  double V_xx = 3000.0;
  double t_e = 2000.0;
  double delta = 20000.0;
  double omega = 0.0;

  double omega_t() const { return V_F + omega - delta; }
};

/// Drive much weaker than Förster, Förster much weaker than the bi-trion
/// shift, each by a factor of five.
inline bool hierarchy_ok(const DriveParams& drive, const CouplingParams& coupling) {
  const double vf = std::abs(coupling.V_F);
  return std::max(drive.omega, drive.omega_m) <= vf / 5.0 && vf <= coupling.V_xx / 5.0;
}

/// Gaussian-envelope dot geometry, lengths in nm.
struct DotGeometry {
  double l_par_e = 4.4;
  double l_par_h = 4.0;
  double l_perp = 1.0;
  double d = 9.5;
  double a = 1.6;
  // Calibrated so the Förster formula gives |V_F| = 0.2 meV at the default
  // geometry.
  double eps_r = 4.148;
};

/// GaAs-like material constants.
struct MaterialParams {
  double mass_density = 5370.0;  // kg/m^3
  double c_s = 5110.0;           // m/s
  double D_e = 7.0;              // eV
  double D_h = -3.5;             // eV
  double M_p = 1.40;             // eV/nm, e*e14/(eps0*eps_r) for e14 = 0.16 C/m^2, eps_r = 12.9
  double g_e = -0.46;
  double g_h = -0.29;
  double B_x = 1.0;       // T
  double E_B_e = -27.78;  // μeV
  double E_B_h = -17.94;  // μeV
};

}  // namespace qdm::physics
