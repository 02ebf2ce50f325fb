#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qdm/operators.hpp"

namespace qdm::dynamics {

/// Snapshots of a run with the observables used throughout the CLI.
struct Trajectory {
  std::vector<double> times_ns;
  std::vector<DensityMatrix> states;
  std::vector<double> concurrence;  // of the renormalized qubit block
  std::vector<double> leak;         // weight outside the qubit block
  std::vector<RVector> populations;

  std::size_t size() const { return times_ns.size(); }
  const ModelBasis& basis() const { return states.front().basis(); }
};

/// Builds a trajectory from raw matrices, Hermitizing each snapshot.
Trajectory make_trajectory(const ModelBasis& basis, std::vector<double> times_ns,
                           const std::vector<CMatrix>& states);

/// Adaptive Dormand-Prince integration of d vec(rho)/dt = L vec(rho), landing
/// exactly on every grid point. The grid must ascend from 0. Throws
/// StiffnessError (time reached in ns) when the step collapses.
Trajectory evolve(const DensityMatrix& rho0, const Superoperator& L, const std::vector<double>& t_grid_ns,
                  double rel_tol = 1e-8);

/// exp(L t).
Superoperator propagator_expm(const Superoperator& L, double t_ns);

/// Grid propagation by exact exponentials, reusing one propagator per
/// distinct step. Suited to stiff generators.
Trajectory evolve_expm(const DensityMatrix& rho0, const Superoperator& L, const std::vector<double>& t_grid_ns);

inline constexpr double null_tolerance = 1e-9;      // μeV
inline constexpr double residual_tolerance = 1e-9;  // μeV

struct SteadyState {
  DensityMatrix rho;
  double gap;       // smallest |Re lambda| over the other eigenvalues, μeV
  double residual;  // max |L vec(rho)|
};

/// Null vector of L from a dense eigendecomposition, Hermitized and
/// trace-normalized. Throws DegenerateSteadyStateError unless exactly one
/// eigenvalue lies within 1e-9 of zero.
SteadyState steady_state_info(const Superoperator& L);
inline DensityMatrix steady_state(const Superoperator& L) { return steady_state_info(L).rho; }

/// Relaxation time 1/gap in ns.
double gap_time_ns(const Superoperator& L);

struct CharacteristicTimeOptions {
  double epsilon = std::exp(-1.0);  // fraction of the initial distance
  double t_max_ns = 0.0;            // 0 means 50 hbar / Gamma_gap
  int grid_points = 400;
  double rel_precision = 0.01;
};

/// First time at which D(rho(t), rho_ss) <= epsilon D(rho0, rho_ss), found on a
/// grid and refined by bisection. Returns 0 if rho0 is already steady;
/// throws TimeoutError when the threshold is not reached before t_max.
double characteristic_time(const Superoperator& L, const DensityMatrix& rho0,
                           const CharacteristicTimeOptions& options = {});

/// Same with a known steady state.
double characteristic_time(const Superoperator& L, const DensityMatrix& rho0, const DensityMatrix& steady,
                           const CharacteristicTimeOptions& options);

/// Weight outside {00, S01, A01, 11, S0s, S1s}. Product bases are read in
/// their symmetric counterparts.
double eliminated_population(const DensityMatrix& rho);

/// Largest eliminated population along the run.
double adiabatic_validity(const Superoperator& L_full, const DensityMatrix& rho0,
                          const std::vector<double>& t_grid_ns);

/// Evenly spaced grid of `points` values over [start, stop].
std::vector<double> linear_grid(double start, double stop, int points);

}  // namespace qdm::dynamics
