#include "qdm/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include "qdm/errors.hpp"

namespace qdm::scenarios {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& msg) {
  throw ConfigError("config " + where + ": " + msg);
}

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) schema_error(where, "expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.contains(key)) schema_error(where, "unknown key '" + key + "'");
}

void read(const json& j, const std::string& where, const char* key, double& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number()) schema_error(where + "." + key, "expected a number");
  out = v.get<double>();
}

void read(const json& j, const std::string& where, const char* key, bool& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_boolean()) schema_error(where + "." + key, "expected true or false");
  out = v.get<bool>();
}

void read(const json& j, const std::string& where, const char* key, int& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) schema_error(where + "." + key, "expected an integer");
  out = v.get<int>();
}

template <typename Enum, std::size_t N>
void read_enum(const json& j, const std::string& where, const char* key, Enum& out,
               const std::pair<const char*, Enum> (&names)[N]) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (v.is_string())
    for (const auto& [name, value] : names)
      if (v.get<std::string>() == name) {
        out = value;
        return;
      }
  std::string choices;
  for (const auto& [name, _] : names) choices += (choices.empty() ? "" : ", ") + std::string(name);
  schema_error(where + "." + key, "expected one of " + choices);
}

constexpr std::pair<const char*, ModelKind> kModels[] = {{"effective6", ModelKind::effective6},
                                                         {"effective8", ModelKind::effective8},
                                                         {"full9", ModelKind::full9},
                                                         {"full16", ModelKind::full16}};
constexpr std::pair<const char*, Propagator> kPropagators[] = {{"dopri5", Propagator::dopri5},
                                                               {"expm", Propagator::expm}};

}  // namespace

json to_json(const ScenarioConfig& c) {
  json init;
  switch (c.initial_state.kind) {
    case InitialState::Kind::paper_mixture: init = "paper_mixture"; break;
    case InitialState::Kind::ground_00: init = "ground_00"; break;
    case InitialState::Kind::random: init = {{"random", c.initial_state.seed}}; break;
  }
  const auto& d = c.drive;
  const auto& k = c.coupling;
  const auto& g = c.geometry;
  const auto& m = c.material;
  return {
      {"name", c.name},
      {"model", std::string(to_string(c.model))},
      {"drive",
       {{"omega", d.omega},
        {"omega_m", d.omega_m},
        {"detuning", c.detuning_auto ? json("auto") : json(d.detuning)},
        {"gamma0", d.gamma0},
        {"gamma1", d.gamma1}}},
      {"coupling", {{"V_F", k.V_F}, {"V_xx", k.V_xx}, {"t_e", k.t_e}, {"delta", k.delta}, {"omega", k.omega}}},
      {"geometry",
       {{"l_par_e", g.l_par_e},
        {"l_par_h", g.l_par_h},
        {"l_perp", g.l_perp},
        {"d", g.d},
        {"a", g.a},
        {"eps_r", g.eps_r}}},
      {"material",
       {{"mass_density", m.mass_density},
        {"c_s", m.c_s},
        {"D_e", m.D_e},
        {"D_h", m.D_h},
        {"M_p", m.M_p},
        {"g_e", m.g_e},
        {"g_h", m.g_h},
        {"B_x", m.B_x},
        {"E_B_e", m.E_B_e},
        {"E_B_h", m.E_B_h}}},
      {"temperature", c.temperature},
      {"phonons", c.phonons},
      {"tunneling", c.tunneling},
      {"initial_state", init},
      {"t_grid", {{"start", c.t_grid.start}, {"stop", c.t_grid.stop}, {"points", c.t_grid.points}}},
      {"epsilon_T0", c.epsilon_T0},
      {"offresonant_dressed_states", c.offresonant_dressed_states},
      {"propagator", std::string(to_string(c.propagator))},
  };
}

ScenarioConfig from_json(const json& j, const ScenarioConfig& base) {
  ScenarioConfig c = base;
  check_keys(j, "root",
             {"name", "model", "drive", "coupling", "geometry", "material", "temperature", "phonons", "tunneling",
              "initial_state", "t_grid", "epsilon_T0", "offresonant_dressed_states", "propagator"});
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema_error("name", "expected a string");
    c.name = j["name"].get<std::string>();
  }
  read_enum(j, "root", "model", c.model, kModels);
  read_enum(j, "root", "propagator", c.propagator, kPropagators);

  if (j.contains("drive")) {
    const auto& d = j["drive"];
    check_keys(d, "drive", {"omega", "omega_m", "detuning", "gamma0", "gamma1"});
    read(d, "drive", "omega", c.drive.omega);
    read(d, "drive", "omega_m", c.drive.omega_m);
    read(d, "drive", "gamma0", c.drive.gamma0);
    read(d, "drive", "gamma1", c.drive.gamma1);
    if (d.contains("detuning")) {
      const auto& v = d["detuning"];
      if (v.is_string() && v.get<std::string>() == "auto") {
        c.detuning_auto = true;
      } else if (v.is_number()) {
        c.detuning_auto = false;
        c.drive.detuning = v.get<double>();
      } else {
        schema_error("drive.detuning", "expected a number or \"auto\"");
      }
    }
  }
  if (j.contains("coupling")) {
    const auto& k = j["coupling"];
    check_keys(k, "coupling", {"V_F", "V_xx", "t_e", "delta", "omega"});
    read(k, "coupling", "V_F", c.coupling.V_F);
    read(k, "coupling", "V_xx", c.coupling.V_xx);
    read(k, "coupling", "t_e", c.coupling.t_e);
    read(k, "coupling", "delta", c.coupling.delta);
    read(k, "coupling", "omega", c.coupling.omega);
  }
  if (j.contains("geometry")) {
    const auto& g = j["geometry"];
    check_keys(g, "geometry", {"l_par_e", "l_par_h", "l_perp", "d", "a", "eps_r"});
    read(g, "geometry", "l_par_e", c.geometry.l_par_e);
    read(g, "geometry", "l_par_h", c.geometry.l_par_h);
    read(g, "geometry", "l_perp", c.geometry.l_perp);
    read(g, "geometry", "d", c.geometry.d);
    read(g, "geometry", "a", c.geometry.a);
    read(g, "geometry", "eps_r", c.geometry.eps_r);
  }
  if (j.contains("material")) {
    const auto& m = j["material"];
    check_keys(m, "material",
               {"mass_density", "c_s", "D_e", "D_h", "M_p", "g_e", "g_h", "B_x", "E_B_e", "E_B_h"});
    read(m, "material", "mass_density", c.material.mass_density);
    read(m, "material", "c_s", c.material.c_s);
    read(m, "material", "D_e", c.material.D_e);
    read(m, "material", "D_h", c.material.D_h);
    read(m, "material", "M_p", c.material.M_p);
    read(m, "material", "g_e", c.material.g_e);
    read(m, "material", "g_h", c.material.g_h);
    read(m, "material", "B_x", c.material.B_x);
    read(m, "material", "E_B_e", c.material.E_B_e);
    read(m, "material", "E_B_h", c.material.E_B_h);
  }
  read(j, "root", "temperature", c.temperature);
  read(j, "root", "phonons", c.phonons);
  read(j, "root", "tunneling", c.tunneling);
  read(j, "root", "epsilon_T0", c.epsilon_T0);
  read(j, "root", "offresonant_dressed_states", c.offresonant_dressed_states);

  if (j.contains("initial_state")) {
    const auto& v = j["initial_state"];
    if (v == "paper_mixture") {
      c.initial_state = {InitialState::Kind::paper_mixture, 0};
    } else if (v == "ground_00") {
      c.initial_state = {InitialState::Kind::ground_00, 0};
    } else if (v.is_object() && v.size() == 1 && v.contains("random") && v["random"].is_number_integer() && v["random"].get<long long>() >= 0) {
      c.initial_state = {InitialState::Kind::random, v["random"].get<unsigned long long>()};
    } else {
      schema_error("initial_state", "expected \"paper_mixture\", \"ground_00\" or {\"random\": seed}");
    }
  }
  if (j.contains("t_grid")) {
    const auto& t = j["t_grid"];
    check_keys(t, "t_grid", {"start", "stop", "points"});
    read(t, "t_grid", "start", c.t_grid.start);
    read(t, "t_grid", "stop", c.t_grid.stop);
    read(t, "t_grid", "points", c.t_grid.points);
  }
  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::string& name_or_path) {
  if (has_preset(name_or_path)) return preset(name_or_path);
  const std::filesystem::path path(name_or_path);
  if (!std::filesystem::is_regular_file(path))
    throw UnknownScenarioError("unknown scenario '" + name_or_path + "' (not a preset or a file)");
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + name_or_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + name_or_path + ": " + e.what());
  }
  ScenarioConfig base;
  base.name = path.stem().string();
  return from_json(j, base);
}

std::string config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : to_json(config).dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

void write_trajectory_csv(std::ostream& os, const dynamics::Trajectory& tr) {
  os << "t_ns,concurrence,leak";
  if (tr.size() == 0) {
    os << '\n';
    return;
  }
  for (const auto& label : tr.basis().labels()) os << ",p_" << label;
  os << '\n';
  for (std::size_t k = 0; k < tr.size(); ++k) {
    os << format_number(tr.times_ns[k]) << ',' << format_number(tr.concurrence[k]) << ','
       << format_number(tr.leak[k]);
    for (Index i = 0; i < tr.populations[k].size(); ++i) os << ',' << format_number(tr.populations[k](i));
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  for (const auto& c : result.columns) os << c << ',';
  os << "error\n";
  for (std::size_t k = 0; k < result.size(); ++k) {
    for (double v : result.rows[k]) os << format_number(v) << ',';
    std::string err = result.errors[k];
    for (char& ch : err)
      if (ch == '"') ch = '\'';
    if (!err.empty()) os << '"' << err << '"';
    os << '\n';
  }
}

}  // namespace qdm::scenarios
