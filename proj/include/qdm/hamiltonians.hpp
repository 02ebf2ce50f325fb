#pragma once

#include "qdm/operators.hpp"
#include "qdm/physics/params.hpp"

namespace qdm::hamiltonians {

using physics::CouplingParams;
using physics::DriveParams;

/// Two-dot Hamiltonian on Full9 in the frame rotating at the laser
/// frequency: per dot Omega(|1><s| + h.c.) + Omega_m(|0><1| + h.c.) +
/// Delta |s><s|, plus V_F(|1s><s1| + |0s><s0| + h.c.) + V_xx |ss><ss|,
/// where Delta = drive.detuning.
OperatorMatrix build_full_hamiltonian(const DriveParams& drive, const CouplingParams& coupling);

/// Adiabatically eliminated 6-state Hamiltonian on Effective6 (resonant
/// drive, no diagonal terms).
OperatorMatrix build_effective_hamiltonian(const DriveParams& drive);

/// Per-dot inter-dot trion energy and s <-> t hopping on Full16:
/// sum_i (omega_t - frame) |t><t|_i + t_e (|s><t|_i + h.c.). With frame = 0
/// this is the bare tunneling contribution.
OperatorMatrix build_tunneling_hamiltonian(const CouplingParams& coupling, double frame_energy = 0.0);

/// Full9 Hamiltonian embedded in Full16 plus the tunneling contribution,
/// all in the frame rotating at omega_l = coupling.omega - drive.detuning.
OperatorMatrix build_full_tunneling_hamiltonian(const DriveParams& drive, const CouplingParams& coupling);

/// Single-trion dressing by electron tunneling.
struct DressedBasisInfo {
  double theta;  // mixing angle, in (-pi/2, 0] for t_e >= 0
  double E1;     // energy of psi1, psi3
  double E2;     // energy of psi2, psi4
  /// Effective8 -> Dressed8. psi1(3) = cos(theta) S0(1)s - sin(theta) S0(1)t,
  /// psi2(4) = sin(theta) S0(1)s + cos(theta) S0(1)t.
  BasisChange U;
};

/// theta = -1/2 arccot(delta / (2 t_e)) with arccot in (0, pi);
/// E1,2 = (-delta +- sqrt(4 t_e^2 + delta^2)) / 2. Throws
/// DegenerateBasisError when delta = t_e = 0.
DressedBasisInfo dressed_basis(double delta, double t_e);

/// Laser detuning that makes |S0s>, |S1s> resonant without tunneling.
double resonant_detuning(const CouplingParams& coupling);
/// Laser detuning for the tunneling model, omega_l = omega + V_F + E1.
double resonant_detuning(const CouplingParams& coupling, const DressedBasisInfo& dressed);

struct EffectiveTunnelingOptions {
  /// Keep psi2, psi4 with their detuning E2 - E1 and the Omega_m cross
  /// terms into them. When false they are left fully decoupled.
  bool offresonant_dressed_states = true;
};

/// Tunneling-dressed effective Hamiltonian, returned on the bare Effective8
/// basis (U H_dressed U^dagger) so collapse operators keep their bare form.
OperatorMatrix build_effective_tunneling_hamiltonian(const DriveParams& drive,
                                                     const DressedBasisInfo& dressed,
                                                     EffectiveTunnelingOptions options = {});

/// Same Hamiltonian on Dressed8.
OperatorMatrix build_dressed_hamiltonian(const DriveParams& drive, const DressedBasisInfo& dressed,
                                         EffectiveTunnelingOptions options = {});

/// Whether Omega <= |E1 - E2| / 5.
bool dressed_drive_ok(const DriveParams& drive, const DressedBasisInfo& dressed);

}  // namespace qdm::hamiltonians
