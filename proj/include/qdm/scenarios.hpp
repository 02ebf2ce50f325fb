#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdm/dissipators.hpp"
#include "qdm/dynamics.hpp"
#include "qdm/hamiltonians.hpp"
#include "qdm/physics/params.hpp"

namespace qdm::scenarios {

enum class ModelKind { effective6, effective8, full9, full16 };
enum class Propagator { dopri5, expm };

std::string_view to_string(ModelKind m);
std::string_view to_string(Propagator p);

struct InitialState {
  enum class Kind { paper_mixture, ground_00, random };
  Kind kind = Kind::paper_mixture;
  unsigned long long seed = 0;  // used by Kind::random
};

struct TimeGrid {
  double start = 0.0;  // ns
  double stop = 60.0;  // ns
  int points = 301;

  std::vector<double> values() const { return dynamics::linear_grid(start, stop, points); }
};

struct ScenarioConfig {
  std::string name = "custom";
  ModelKind model = ModelKind::effective6;
  physics::DriveParams drive;
  /// Resolve drive.detuning to the resonance condition of the model.
  bool detuning_auto = true;
  physics::CouplingParams coupling;
  physics::DotGeometry geometry;
  physics::MaterialParams material;
  double temperature = 0.0;  // K
  bool phonons = false;
  bool tunneling = false;
  InitialState initial_state;
  TimeGrid t_grid;
  double epsilon_T0 = std::exp(-1.0);
  bool offresonant_dressed_states = true;
  Propagator propagator = Propagator::dopri5;

  /// Throws ConfigError on an inconsistent combination.
  void validate() const;
};

/// Everything needed to run one configuration.
struct Model {
  OperatorMatrix H;
  dissipators::CollapseSet collapse;
  Superoperator L;
  DensityMatrix rho0;
  double detuning;  // μeV, as used
  std::optional<hamiltonians::DressedBasisInfo> dressed;
  std::vector<std::string> warnings;
};

ModelBasis basis_for(ModelKind model);
DensityMatrix initial_density(const InitialState& init, const ModelBasis& basis);
/// Basis states linked to others by H or a collapse operator, or populated
/// in rho0. The rest can never be populated and only add spurious
/// stationary directions.
ModelBasis active_basis(const OperatorMatrix& H, const dissipators::CollapseSet& collapse,
                        const DensityMatrix& rho0);

/// Assembles H, collapse set and Liouvillian. States outside active_basis
/// are dropped, so a zero tunneling rate reduces Effective8 to Effective6.
Model build_model(const ScenarioConfig& config);

struct ScenarioResult {
  dynamics::Trajectory trajectory;
  DensityMatrix steady;
  double steady_concurrence;
  double steady_leak;
  double T0_ns;
  double gap_ueV;
  double max_eliminated;  // largest weight outside the effective block along the run
  std::vector<std::string> warnings;
};

/// Default horizon for T0 searches, 50 hbar / Gamma in ns.
double t0_horizon_ns(const physics::DriveParams& drive);

/// Errors from the numerical modules carry the scenario name as context.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Tabulated sweep. Failed points keep NaN in the numeric columns and the
/// message in `errors`; rows never go missing.
struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> errors;  // one per row, empty on success
  std::string config_hash;
  std::string version;

  std::size_t size() const { return rows.size(); }
  double at(std::size_t row, std::string_view column) const;
};

struct T0Sweep {
  SweepResult grid;    // omega, omega_m, gamma, T0_ns, concurrence_ss, leak, hierarchy_ok
  SweepResult argmin;  // omega, gamma, omega_m_opt, T0_min_ns
};

/// T0 over the Cartesian grid; gamma splits evenly into gamma0 = gamma1.
T0Sweep sweep_T0(const ScenarioConfig& config, const std::vector<double>& omega_grid,
                 const std::vector<double>& omega_m_grid, const std::vector<double>& gamma_grid, int jobs = 1);

/// Steady concurrence per (T, t_e), columns T_K, t_e_ueV, concurrence_ss,
/// T0_ns, leak. Forces phonons and tunneling on.
SweepResult sweep_temperature(const ScenarioConfig& config, const std::vector<double>& T_grid,
                              const std::vector<double>& te_grid, int jobs = 1);

/// Named presets pinned to the published parameter sets.
std::vector<std::string> preset_names();
bool has_preset(std::string_view name);
/// Throws UnknownScenarioError.
ScenarioConfig preset(std::string_view name);

struct SweepPreset {
  ScenarioConfig base;
  std::vector<double> grid_a;  // omega (fig3b) or T (fig4b)
  std::vector<double> grid_b;  // omega_m (fig3b) or t_e (fig4b)
  std::vector<double> grid_c;  // gamma (fig3b), unused for fig4b
};
std::vector<std::string> sweep_preset_names();
SweepPreset sweep_preset(std::string_view name);

/// Runs `count` independent tasks on up to `jobs` threads; task k writes
/// slot k so results come back in grid order.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task);

}  // namespace qdm::scenarios
