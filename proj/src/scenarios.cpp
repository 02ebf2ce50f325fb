#include "qdm/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <thread>

#include "qdm/entanglement.hpp"
#include "qdm/errors.hpp"
#include "qdm/physics/units.hpp"
#include "qdm/scenario_io.hpp"

namespace qdm::scenarios {

using hamiltonians::DressedBasisInfo;

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::effective6: return "effective6";
    case ModelKind::effective8: return "effective8";
    case ModelKind::full9: return "full9";
    case ModelKind::full16: return "full16";
  }
  return "?";
}

std::string_view to_string(Propagator p) { return p == Propagator::dopri5 ? "dopri5" : "expm"; }

void ScenarioConfig::validate() const {
  auto fail = [this](const std::string& msg) { throw ConfigError("scenario '" + name + "': " + msg); };
  if (tunneling && model != ModelKind::effective8 && model != ModelKind::full16)
    fail("tunneling requires model effective8 or full16");
  if (phonons && model != ModelKind::effective6 && model != ModelKind::effective8)
    fail("phonons are only available on the effective models");
  if (drive.omega < 0 || drive.omega_m < 0) fail("Rabi frequencies must be non-negative");
  if (drive.gamma0 < 0 || drive.gamma1 < 0) fail("decay rates must be non-negative");
  if (temperature < 0) fail("temperature must be non-negative");
  if (!(coupling.V_xx > 0)) fail("V_xx must be positive");
  if (t_grid.points < 2) fail("t_grid needs at least two points");
  if (t_grid.start < 0 || !(t_grid.stop > t_grid.start)) fail("t_grid must satisfy 0 <= start < stop");
  if (!(epsilon_T0 > 0 && epsilon_T0 < 1)) fail("epsilon_T0 must lie in (0, 1)");
  if (!std::isfinite(drive.omega + drive.omega_m + drive.detuning + coupling.V_F + coupling.t_e +
                     coupling.delta + coupling.omega))
    fail("parameters must be finite");
}

ModelBasis basis_for(ModelKind model) {
  switch (model) {
    case ModelKind::effective6: return ModelBasis::effective6();
    case ModelKind::effective8: return ModelBasis::effective8();
    case ModelKind::full9: return ModelBasis::full9();
    case ModelKind::full16: return ModelBasis::full16();
  }
  throw ConfigError("unknown model");
}

DensityMatrix initial_density(const InitialState& init, const ModelBasis& basis) {
  switch (init.kind) {
    case InitialState::Kind::ground_00: return DensityMatrix::basis_state(basis, "00");
    case InitialState::Kind::random: return DensityMatrix::random(basis, init.seed);
    case InitialState::Kind::paper_mixture: break;
  }
  // I/4 on the qubit block; on product bases {01, 10} span the same plane as {S01, A01}.
  if (basis.contains("S01")) return DensityMatrix::uniform_mixture(basis, {"00", "S01", "A01", "11"});
  return DensityMatrix::uniform_mixture(basis, {"00", "01", "10", "11"});
}

ModelBasis active_basis(const OperatorMatrix& H, const dissipators::CollapseSet& collapse,
                        const DensityMatrix& rho0) {
  const ModelBasis& basis = H.basis();
  std::vector<std::string> labels;
  // A bare energy or pure dephasing of state i cannot populate it.
  auto touches = [](const CMatrix& m, Index i) {
    for (Index j = 0; j < m.rows(); ++j)
      if (j != i && (m(i, j) != 0.0 || m(j, i) != 0.0)) return true;
    return false;
  };
  for (Index i = 0; i < basis.dim(); ++i) {
    bool coupled = rho0.matrix()(i, i) != 0.0 || touches(H.matrix(), i);
    for (const auto& op : collapse.ops) coupled = coupled || touches(op.matrix(), i);
    if (coupled) labels.push_back(basis.labels()[static_cast<std::size_t>(i)]);
  }
  if (static_cast<Index>(labels.size()) == basis.dim()) return basis;
  if (labels == ModelBasis::effective6().labels()) return ModelBasis::effective6();
  return ModelBasis::custom(std::move(labels));
}

double t0_horizon_ns(const physics::DriveParams& drive) {
  return 50.0 * units::hbar_ueV_ns / drive.gamma();
}

// Searches within 50 hbar/Gamma first; slow modes fall back to 50 / gap.
double scenario_T0(const Model& m, const dynamics::SteadyState& ss, const ScenarioConfig& c) {
  dynamics::CharacteristicTimeOptions opt;
  opt.epsilon = c.epsilon_T0;
  opt.t_max_ns = t0_horizon_ns(c.drive);
  try {
    return dynamics::characteristic_time(m.L, m.rho0, ss.rho, opt);
  } catch (const TimeoutError&) {
    const double slow = 50.0 * units::internal_to_ns(1.0 / ss.gap);
    if (!(slow > opt.t_max_ns)) throw;
    opt.t_max_ns = slow;
    return dynamics::characteristic_time(m.L, m.rho0, ss.rho, opt);
  }
}

Model build_model(const ScenarioConfig& config) {
  config.validate();
  physics::DriveParams drive = config.drive;
  physics::CouplingParams coupling = config.coupling;
  if (!config.tunneling) coupling.t_e = 0.0;
  const ModelBasis basis = basis_for(config.model);
  std::vector<std::string> warnings;
  if (!physics::hierarchy_ok(drive, coupling)) warnings.push_back("energy-scale hierarchy violated");

  std::optional<DressedBasisInfo> dressed;
  const bool needs_dressing = config.model == ModelKind::effective8 || config.model == ModelKind::full16;
  if (needs_dressing) dressed = hamiltonians::dressed_basis(coupling.delta, coupling.t_e);

  if (config.detuning_auto) {
    drive.detuning = dressed ? hamiltonians::resonant_detuning(coupling, *dressed)
                             : hamiltonians::resonant_detuning(coupling);
  }

  OperatorMatrix H = [&] {
    switch (config.model) {
      case ModelKind::effective6: return hamiltonians::build_effective_hamiltonian(drive);
      case ModelKind::effective8:
        return hamiltonians::build_effective_tunneling_hamiltonian(
            drive, *dressed, {.offresonant_dressed_states = config.offresonant_dressed_states});
      case ModelKind::full9: return hamiltonians::build_full_hamiltonian(drive, coupling);
      case ModelKind::full16: return hamiltonians::build_full_tunneling_hamiltonian(drive, coupling);
    }
    throw ConfigError("unknown model");
  }();
  if (dressed && config.model == ModelKind::effective8 && !hamiltonians::dressed_drive_ok(drive, *dressed))
    warnings.push_back("drive not small against the dressed splitting |E1 - E2|");

  auto collapse = dissipators::spontaneous_collapse_ops(drive.gamma0, drive.gamma1, basis);
  if (config.phonons)
    collapse.append(dissipators::phonon_dissipator(H, config.temperature, config.geometry, config.material));
  DensityMatrix rho0 = initial_density(config.initial_state, basis);

  const ModelBasis kept = active_basis(H, collapse, rho0);
  if (!(kept == basis)) {
    std::string dropped;
    for (const auto& label : basis.labels())
      if (!kept.contains(label)) dropped += (dropped.empty() ? "" : ", ") + label;
    warnings.push_back("decoupled states removed: " + dropped);
    H = restrict_to(H, kept);
    dissipators::CollapseSet reduced;
    for (std::size_t k = 0; k < collapse.size(); ++k)
      reduced.add(restrict_to(collapse.ops[k], kept), collapse.labels[k]);
    collapse = std::move(reduced);
    rho0 = DensityMatrix(kept, restrict_to(OperatorMatrix(basis, rho0.matrix()), kept).matrix());
  }
  Superoperator L = dissipators::assemble_liouvillian(H, collapse);
  return {std::move(H), std::move(collapse), std::move(L), std::move(rho0), drive.detuning, dressed,
          std::move(warnings)};
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  try {
    Model model = build_model(config);
    const auto grid = config.t_grid.values();
    dynamics::Trajectory tr = config.propagator == Propagator::dopri5
                                  ? dynamics::evolve(model.rho0, model.L, grid)
                                  : dynamics::evolve_expm(model.rho0, model.L, grid);
    const auto ss = dynamics::steady_state_info(model.L);
    const auto q = project_to_qubits(ss.rho);
    const double T0 = scenario_T0(model, ss, config);
    double eliminated = 0.0;
    for (const auto& rho : tr.states) eliminated = std::max(eliminated, dynamics::eliminated_population(rho));
    return {std::move(tr), ss.rho, concurrence(q.rho), q.leak, T0, ss.gap, eliminated, model.warnings};
  } catch (Error& e) {
    e.add_context("scenario '" + config.name + "'");
    throw;
  }
}

double SweepResult::at(std::size_t row, std::string_view column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw ConfigError("no sweep column " + std::string(column));
  return rows.at(row).at(static_cast<std::size_t>(it - columns.begin()));
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) task(k);
    });
}

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string describe(const std::exception& e) {
  if (const auto* q = dynamic_cast<const Error*>(&e); q && !q->context().empty())
    return q->context() + ": " + e.what();
  return e.what();
}

SweepResult empty_result(const ScenarioConfig& config, std::vector<std::string> columns, std::size_t n) {
  SweepResult r;
  r.columns = std::move(columns);
  r.rows.assign(n, std::vector<double>(r.columns.size(), nan));
  r.errors.assign(n, "");
  r.config_hash = config_hash(config);
  r.version = QDM_VERSION;
  return r;
}

}  // namespace

T0Sweep sweep_T0(const ScenarioConfig& config, const std::vector<double>& omega_grid,
                 const std::vector<double>& omega_m_grid, const std::vector<double>& gamma_grid, int jobs) {
  if (omega_grid.empty() || omega_m_grid.empty() || gamma_grid.empty())
    throw ConfigError("sweep grids must be non-empty");
  config.validate();
  const std::size_t n_o = omega_grid.size(), n_m = omega_m_grid.size(), n_g = gamma_grid.size();
  T0Sweep out;
  out.grid = empty_result(config, {"omega", "omega_m", "gamma", "T0_ns", "concurrence_ss", "leak", "hierarchy_ok"},
                          n_o * n_m * n_g);

  // Row order: gamma slowest, then omega, then omega_m fastest.
  parallel_for(out.grid.size(), jobs, [&](std::size_t k) {
    const std::size_t im = k % n_m, io = (k / n_m) % n_o, ig = k / (n_m * n_o);
    ScenarioConfig c = config;
    c.drive.omega = omega_grid[io];
    c.drive.omega_m = omega_m_grid[im];
    c.drive.gamma0 = c.drive.gamma1 = 0.5 * gamma_grid[ig];
    auto& row = out.grid.rows[k];
    row[0] = c.drive.omega;
    row[1] = c.drive.omega_m;
    row[2] = gamma_grid[ig];
    try {
      const Model m = build_model(c);
      row[6] = physics::hierarchy_ok(c.drive, c.coupling) ? 1.0 : 0.0;
      const auto ss = dynamics::steady_state_info(m.L);
      const auto q = project_to_qubits(ss.rho);
      row[4] = concurrence(q.rho);
      row[5] = q.leak;
      row[3] = scenario_T0(m, ss, c);
    } catch (const std::exception& e) {
      out.grid.errors[k] = describe(e);
    }
  });

  out.argmin = empty_result(config, {"omega", "gamma", "omega_m_opt", "T0_min_ns"}, n_o * n_g);
  for (std::size_t ig = 0; ig < n_g; ++ig) {
    for (std::size_t io = 0; io < n_o; ++io) {
      auto& row = out.argmin.rows[ig * n_o + io];
      row[0] = omega_grid[io];
      row[1] = gamma_grid[ig];
      for (std::size_t im = 0; im < n_m; ++im) {
        const double t0 = out.grid.rows[(ig * n_o + io) * n_m + im][3];
        if (std::isfinite(t0) && !(t0 >= row[3])) {
          row[2] = omega_m_grid[im];
          row[3] = t0;
        }
      }
      if (!std::isfinite(row[3])) out.argmin.errors[ig * n_o + io] = "no finite T0 along omega_m";
    }
  }
  return out;
}

SweepResult sweep_temperature(const ScenarioConfig& config, const std::vector<double>& T_grid,
                              const std::vector<double>& te_grid, int jobs) {
  if (T_grid.empty() || te_grid.empty()) throw ConfigError("sweep grids must be non-empty");
  ScenarioConfig base = config;
  base.phonons = true;
  base.tunneling = true;
  base.validate();
  const std::size_t n_t = T_grid.size(), n_e = te_grid.size();
  SweepResult out = empty_result(base, {"T_K", "t_e_ueV", "concurrence_ss", "T0_ns", "leak"}, n_t * n_e);

  // Row order: t_e slowest, T fastest.
  parallel_for(out.size(), jobs, [&](std::size_t k) {
    const std::size_t it = k % n_t, ie = k / n_t;
    ScenarioConfig c = base;
    c.temperature = T_grid[it];
    c.coupling.t_e = te_grid[ie];
    auto& row = out.rows[k];
    row[0] = c.temperature;
    row[1] = c.coupling.t_e;
    try {
      const Model m = build_model(c);
      const auto ss = dynamics::steady_state_info(m.L);
      const auto q = project_to_qubits(ss.rho);
      row[2] = concurrence(q.rho);
      row[4] = q.leak;
      row[3] = scenario_T0(m, ss, c);
    } catch (const std::exception& e) {
      out.errors[k] = describe(e);
    }
  });
  return out;
}

// --- presets ----------------------------------------------------------------

namespace {

ScenarioConfig fig3a() {
  ScenarioConfig c;
  c.name = "fig3a";
  return c;
}

ScenarioConfig fig3a_full9() {
  ScenarioConfig c = fig3a();
  c.name = "fig3a_full9";
  c.model = ModelKind::full9;
  c.propagator = Propagator::expm;
  return c;
}

ScenarioConfig fig3b() {
  ScenarioConfig c = fig3a();
  c.name = "fig3b";
  return c;
}

ScenarioConfig fig4a() {
  ScenarioConfig c;
  c.name = "fig4a";
  c.model = ModelKind::effective8;
  c.phonons = true;
  c.tunneling = true;
  c.temperature = 1.0;
  c.coupling.t_e = 2000.0;
  // The 20 meV single-trion detuning makes explicit stepping expensive.
  c.propagator = Propagator::expm;
  return c;
}

ScenarioConfig fig4b() {
  ScenarioConfig c = fig4a();
  c.name = "fig4b";
  return c;
}

const std::map<std::string, ScenarioConfig (*)(), std::less<>>& registry() {
  static const std::map<std::string, ScenarioConfig (*)(), std::less<>> r{
      {"fig3a", fig3a}, {"fig3a_T0", fig3a}, {"fig3a_full9", fig3a_full9}, {"fig3b", fig3b},
      {"fig4a", fig4a}, {"fig4a_te2_T1K", fig4a}, {"fig4b", fig4b},
  };
  return r;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

bool has_preset(std::string_view name) { return registry().contains(name); }

ScenarioConfig preset(std::string_view name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw UnknownScenarioError("unknown scenario '" + std::string(name) + "'");
  ScenarioConfig c = it->second();
  c.name = std::string(name);
  return c;
}

std::vector<std::string> sweep_preset_names() { return {"fig3b", "fig4b"}; }

SweepPreset sweep_preset(std::string_view name) {
  if (name == "fig3b") {
    std::vector<double> omega_m;
    for (double v = 2.0; v <= 60.0 + 1e-9; v += 2.0) omega_m.push_back(v);
    return {preset("fig3b"), {10.0, 20.0, 40.0, 60.0}, std::move(omega_m), {1.2, 2.4}};
  }
  if (name == "fig4b") return {preset("fig4b"), {0.0, 0.5, 1.0, 2.0, 4.0}, {0.0, 1000.0, 2000.0, 3000.0}, {}};
  throw UnknownScenarioError("unknown sweep preset '" + std::string(name) + "'");
}

}  // namespace qdm::scenarios
