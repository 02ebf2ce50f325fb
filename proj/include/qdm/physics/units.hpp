#pragma once

// Dynamics run with hbar = 1: energies in μeV, times in hbar/μeV.
// Times cross the public API in ns.
namespace qdm::units {

inline constexpr double hbar_ueV_ns = 0.65821195;  // μeV·ns
inline constexpr double kB_ueV_per_K = 86.1733;
inline constexpr double muB_ueV_per_T = 57.8838;

// SI, for the Förster / WKB / phonon formulas.
inline constexpr double hbar_SI = 1.054571817e-34;       // J·s
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double pi = 3.14159265358979323846;

inline constexpr double eV = elementary_charge;  // J
inline constexpr double meV = 1e-3 * eV;
inline constexpr double ueV = 1e-6 * eV;
inline constexpr double nm = 1e-9;  // m

constexpr double ns_to_internal(double t_ns) { return t_ns / hbar_ueV_ns; }
constexpr double internal_to_ns(double t) { return t * hbar_ueV_ns; }

}  // namespace qdm::units
