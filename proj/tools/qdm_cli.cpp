// qdm: run scenarios, sweeps and parameter calculators from the command line.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdm/entanglement.hpp"
#include "qdm/errors.hpp"
#include "qdm/physics/couplings.hpp"
#include "qdm/physics/phonons.hpp"
#include "qdm/scenario_io.hpp"
#include "qdm/scenarios.hpp"
#include "qdm/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qdm;

namespace {

// Exit codes, one per failure class.
enum Exit : int {
  ok = 0,
  numerical_failure = 1,
  usage = 2,
  unknown_scenario = 3,
  config_error = 4,
  io_error = 5,
  validation_failed = 6,
  internal_error = 7,
};

int report(int code, std::string_view kind, const std::string& message) {
  std::cerr << json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump() << '\n';
  return code;
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  const fs::path probe = fs::path(dir) / ".qdm_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw IoError("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
  return dir;
}

template <typename Writer>
json write_file(const fs::path& path, Writer&& writer) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  f.imbue(std::locale::classic());
  writer(f);
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
  return {{"name", path.filename().string()}, {"bytes", fs::file_size(path)}};
}

void apply_seed_override(scenarios::ScenarioConfig& config) {
  const char* seed = std::getenv("QDM_SEED");
  if (!seed || config.initial_state.kind != scenarios::InitialState::Kind::random) return;
  try {
    config.initial_state.seed = std::stoull(seed);
  } catch (const std::exception&) {
    throw ConfigError(std::string("QDM_SEED is not an unsigned integer: ") + seed);
  }
}

json manifest_header(const scenarios::ScenarioConfig& config, double wall_s) {
  return {{"version", QDM_VERSION},
          {"config", scenarios::to_json(config)},
          {"config_hash", scenarios::config_hash(config)},
          {"wall_time_s", wall_s}};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_run(const std::string& scenario, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  auto config = scenarios::load_scenario(scenario);
  apply_seed_override(config);
  const fs::path out = prepare_out_dir(out_dir);
  const auto result = scenarios::run_scenario(config);

  json files = json::array();
  files.push_back(
      write_file(out / "trajectory.csv", [&](std::ostream& os) { scenarios::write_trajectory_csv(os, result.trajectory); }));
  json manifest = manifest_header(config, seconds_since(start));
  manifest["summary"] = {{"steady_concurrence", result.steady_concurrence},
                         {"steady_leak", result.steady_leak},
                         {"T0_ns", result.T0_ns},
                         {"gap_ueV", result.gap_ueV},
                         {"max_leak", *std::max_element(result.trajectory.leak.begin(), result.trajectory.leak.end())},
                         {"max_eliminated_population", result.max_eliminated},
                         {"final_concurrence", result.trajectory.concurrence.back()},
                         {"warnings", result.warnings}};
  manifest["files"] = files;
  write_file(out / "manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
  std::cout << "steady concurrence " << scenarios::format_number(result.steady_concurrence) << ", T0 "
            << scenarios::format_number(result.T0_ns) << " ns -> " << out.string() << '\n';
  return ok;
}

int cmd_sweep(const std::string& name, const std::string& out_dir, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  auto p = scenarios::sweep_preset(name);
  apply_seed_override(p.base);
  const fs::path out = prepare_out_dir(out_dir);
  json files = json::array();
  std::size_t failures = 0;
  if (name == "fig3b") {
    const auto r = scenarios::sweep_T0(p.base, p.grid_a, p.grid_b, p.grid_c, jobs);
    files.push_back(write_file(out / "sweep.csv", [&](std::ostream& os) { scenarios::write_sweep_csv(os, r.grid); }));
    files.push_back(
        write_file(out / "argmin.csv", [&](std::ostream& os) { scenarios::write_sweep_csv(os, r.argmin); }));
    for (const auto& e : r.grid.errors) failures += !e.empty();
  } else {
    const auto r = scenarios::sweep_temperature(p.base, p.grid_a, p.grid_b, jobs);
    files.push_back(write_file(out / "sweep.csv", [&](std::ostream& os) { scenarios::write_sweep_csv(os, r); }));
    for (const auto& e : r.errors) failures += !e.empty();
  }
  json manifest = manifest_header(p.base, seconds_since(start));
  manifest["sweep"] = {{"preset", name}, {"jobs", jobs}, {"failed_points", failures}};
  manifest["files"] = files;
  write_file(out / "manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
  std::cout << "sweep " << name << " done, " << failures << " failed points -> " << out.string() << '\n';
  return ok;
}

int cmd_validate() {
  const auto checks = validation::run_invariant_suite();
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    all = all && c.passed;
  }
  return all ? ok : report(validation_failed, "ValidationError", "invariant suite failed");
}

void print(std::string_view key, double value, std::string_view unit = "") {
  std::cout << key << " = " << scenarios::format_number(value);
  if (!unit.empty()) std::cout << ' ' << unit;
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative singlet preparation in a quantum-dot molecule"};
  app.set_version_flag("--version", std::string(QDM_VERSION));
  app.require_subcommand(1);

  std::string scenario, out_dir, preset;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* run = app.add_subcommand("run", "Run one scenario: trajectory, steady state and T0");
  run->add_option("--scenario", scenario, "Preset name or JSON config path")->required();
  run->add_option("--out", out_dir, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over a preset grid");
  sweep->add_option("--preset", preset, "Sweep preset")->required()->check(CLI::IsMember({"fig3b", "fig4b"}));
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list", "List scenario presets");
  auto* validate = app.add_subcommand("validate", "Run the invariant suite");

  auto* calc = app.add_subcommand("calc", "Derived physical parameters");
  calc->require_subcommand(1);
  physics::MaterialParams material;
  physics::DotGeometry geom;
  double B = material.B_x, ge = material.g_e, gh = material.g_h;
  auto* zeeman = calc->add_subcommand("zeeman", "Zeeman splittings in μeV");
  zeeman->add_option("--B", B, "Field along x, T");
  zeeman->add_option("--ge", ge, "Electron g-factor");
  zeeman->add_option("--gh", gh, "Hole g-factor");

  auto* forster = calc->add_subcommand("forster", "Förster coupling V_F in μeV");
  forster->add_option("--d", geom.d, "Dot separation, nm");
  forster->add_option("--a", geom.a, "Dipole length, nm");
  forster->add_option("--le", geom.l_par_e, "Electron in-plane length, nm");
  forster->add_option("--lh", geom.l_par_h, "Hole in-plane length, nm");
  forster->add_option("--eps-r", geom.eps_r, "Relative permittivity");

  double V = 680.0, d_wkb = 9.5, m_eff = 0.067;
  auto* wkb = calc->add_subcommand("wkb", "WKB electron tunneling rate in meV");
  wkb->add_option("--V", V, "Barrier height, meV");
  wkb->add_option("--d", d_wkb, "Barrier width, nm");
  wkb->add_option("--m", m_eff, "Effective mass, m_e");

  double omega = 50.0;
  std::string parity = "plus";
  auto* spectral = calc->add_subcommand("spectral-density", "Phonon spectral density J(omega) in μeV");
  spectral->add_option("--omega", omega, "Energy, μeV")->check(CLI::NonNegativeNumber);
  spectral->add_option("--parity", parity, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
  spectral->add_option("--d", geom.d, "Dot separation, nm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report(usage, "UsageError", e.what());
  }

  try {
    if (*run) return cmd_run(scenario, out_dir);
    if (*sweep) return cmd_sweep(preset, out_dir, jobs);
    if (*validate) return cmd_validate();
    if (*list) {
      for (const auto& n : scenarios::preset_names()) std::cout << n << '\n';
      return ok;
    }
    if (*zeeman) {
      const auto z = physics::zeeman_splittings(B, ge, gh);
      print("E_B_e", z.E_B_e, "ueV");
      print("E_B_h", z.E_B_h, "ueV");
      print("|Delta_H|", std::abs(z.Delta_H), "ueV");
      print("|Delta_V|", std::abs(z.Delta_V), "ueV");
    } else if (*forster) {
      print("l", physics::forster_length(geom), "nm");
      print("F(d/l)", physics::forster_shape_F(geom.d / physics::forster_length(geom)));
      print("V_F", physics::forster_coupling(geom), "ueV");
    } else if (*wkb) {
      print("omega", physics::wkb_attempt_energy(V, d_wkb, m_eff), "meV");
      print("t_e", physics::wkb_tunneling_rate(V, d_wkb, m_eff), "meV");
    } else if (*spectral) {
      const auto p = parity == "plus" ? physics::Parity::plus : physics::Parity::minus;
      print("J", physics::spectral_density(omega, p, geom, material), "ueV");
    }
    return ok;
  } catch (const UnknownScenarioError& e) {
    return report(unknown_scenario, "UnknownScenarioError", e.what());
  } catch (const ConfigError& e) {
    return report(config_error, "ConfigError", e.what());
  } catch (const IoError& e) {
    return report(io_error, "IoError", e.what());
  } catch (const Error& e) {
    return report(numerical_failure, "NumericalError", e.context().empty() ? e.what() : e.context() + ": " + e.what());
  } catch (const std::exception& e) {
    return report(internal_error, "InternalError", e.what());
  }
}
