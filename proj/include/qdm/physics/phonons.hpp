#pragma once

#include "qdm/physics/params.hpp"

namespace qdm::physics {

enum class Parity { plus, minus };

/// Fourier transform of the normalized Gaussian density |phi|^2 with
/// phi ~ exp(-(x^2 + y^2)/l_par^2 - z^2/(2 l_perp^2)):
/// exp(-q_par^2 l_par^2 / 8 - q_z^2 l_perp^2 / 4). q in 1/nm, l in nm.
double form_factor(double q_par, double q_z, double l_par, double l_perp);

/// Piezoelectric angular factor
/// (1/4) sin(theta) M_p sqrt(9 + 7 cos 2theta - 2 cos 4phi sin^2 theta).
double piezo_angular(double theta, double phi, double M_p);

/// Unnormalized sinc, sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// Phonon wave number |q| = omega / (hbar c_s) for an energy in μeV, in 1/nm.
double phonon_wavenumber(double omega_ueV, const MaterialParams& material);

/// Solid-angle integral of the deformation and piezoelectric couplings,
/// \int dOmega [G_d + G_p], in μeV (hbar = 1). Relative error <= 1e-6.
double angular_coupling(double omega_ueV, const DotGeometry& geom, const MaterialParams& material);

/// J_pm(omega) = (1 pm sinc(omega d / c_s)) \int dOmega [G_d + G_p], μeV.
double spectral_density(double omega_ueV, Parity parity, const DotGeometry& geom,
                        const MaterialParams& material);

/// Bose-Einstein occupation; exactly 0 at T = 0. omega in μeV, T in K.
double bose_occupation(double omega_ueV, double T);

}  // namespace qdm::physics
