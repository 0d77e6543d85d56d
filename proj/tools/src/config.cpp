#include "paramp_cli/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "paramp/errors.hpp"

namespace paramp::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"paramp-entropy", "output-entropy", "fluxes", "fock-demo", "sweep", "preset"};

template <typename T>
T field(const json& obj, const char* key, const std::string& where, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config field '" + where + key + "' has the wrong type: " + e.what());
  }
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError("config field '" + where + "' must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (!known.contains(k)) throw ConfigError("unknown config field '" + where + k + "'");
  }
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require(bool ok, const std::string& field, const std::string& constraint, double value) {
  if (!ok) throw ConfigError(field + ": " + constraint + " violated (got " + num(value) + ")");
}

}  // namespace

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  return command == o.command && preset == o.preset && params.gamma == o.params.gamma && params.f == o.params.f &&
         params.delta_omega == o.params.delta_omega && params.omega_p == o.params.omega_p && initial == o.initial &&
         time == o.time && grid == o.grid && output == o.output;
}

json to_json(const ScenarioConfig& c) {
  return json{
      {"command", c.command},
      {"preset", c.preset},
      {"params",
       {{"gamma", c.params.gamma}, {"f", c.params.f}, {"delta_omega", c.params.delta_omega},
        {"omega_p", c.params.omega_p}}},
      {"initial", {{"kind", c.initial.kind}, {"r", c.initial.r}}},
      {"time", {{"t_max", c.time.t_max}, {"t_step", c.time.t_step}}},
      {"grid",
       {{"delta_t", c.grid.delta_t},
        {"k_max", c.grid.k_max},
        {"delta_ts", c.grid.delta_ts},
        {"k_start", c.grid.k_start},
        {"cauchy_tol", c.grid.cauchy_tol},
        {"k_max_cap", c.grid.k_max_cap},
        {"method", c.grid.method}}},
      {"output", {{"path", c.output.path}, {"format", c.output.format}}},
  };
}

ScenarioConfig config_from_json(const json& j) {
  reject_unknown(j, {"command", "preset", "params", "initial", "time", "grid", "output"}, "");
  ScenarioConfig c;
  c.command = field(j, "command", "", c.command);
  c.preset = field(j, "preset", "", c.preset);

  if (j.contains("params")) {
    const auto& p = j["params"];
    reject_unknown(p, {"gamma", "f", "delta_omega", "omega_p"}, "params.");
    c.params.gamma = field(p, "gamma", "params.", c.params.gamma);
    c.params.f = field(p, "f", "params.", c.params.f);
    c.params.delta_omega = field(p, "delta_omega", "params.", c.params.delta_omega);
    c.params.omega_p = field(p, "omega_p", "params.", c.params.omega_p);
  }
  if (j.contains("initial")) {
    const auto& i = j["initial"];
    reject_unknown(i, {"kind", "r"}, "initial.");
    c.initial.kind = field(i, "kind", "initial.", c.initial.kind);
    c.initial.r = field(i, "r", "initial.", c.initial.r);
  }
  if (j.contains("time")) {
    const auto& t = j["time"];
    reject_unknown(t, {"t_max", "t_step"}, "time.");
    c.time.t_max = field(t, "t_max", "time.", c.time.t_max);
    c.time.t_step = field(t, "t_step", "time.", c.time.t_step);
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    reject_unknown(g, {"delta_t", "k_max", "delta_ts", "k_start", "cauchy_tol", "k_max_cap", "method"}, "grid.");
    c.grid.delta_t = field(g, "delta_t", "grid.", c.grid.delta_t);
    c.grid.k_max = field(g, "k_max", "grid.", c.grid.k_max);
    c.grid.delta_ts = field(g, "delta_ts", "grid.", c.grid.delta_ts);
    c.grid.k_start = field(g, "k_start", "grid.", c.grid.k_start);
    c.grid.cauchy_tol = field(g, "cauchy_tol", "grid.", c.grid.cauchy_tol);
    c.grid.k_max_cap = field(g, "k_max_cap", "grid.", c.grid.k_max_cap);
    c.grid.method = field(g, "method", "grid.", c.grid.method);
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    reject_unknown(o, {"path", "format"}, "output.");
    c.output.path = field(o, "path", "output.", c.output.path);
    c.output.format = field(o, "format", "output.", c.output.format);
  }
  return c;
}

void apply_preset(ScenarioConfig& c) {
  if (c.preset == "fig1") {
    c.params = {1.0, 0.4, 0.0, c.params.omega_p};
    c.initial = {"squeezed", {0.0, 1.0, 2.0, 3.0}};
    c.time = {10.0, 0.05};
  } else if (c.preset == "fig2") {
    c.params = {1.0, 0.3, std::sqrt(0.3 * 0.3 - 0.2 * 0.2), c.params.omega_p};
    c.grid.delta_ts = {20.0, 40.0, 80.0};
    c.grid.k_start = 1;
    c.grid.k_max = 1024;
  } else {
    throw ConfigError("preset: must be one of fig1, fig2 (got '" + c.preset + "')");
  }
}

void validate(const ScenarioConfig& c) {
  if (!kCommands.contains(c.command)) throw ConfigError("command: unknown command '" + c.command + "'");
  if (c.command == "preset" && c.preset != "fig1" && c.preset != "fig2") {
    throw ConfigError("preset: must be one of fig1, fig2 (got '" + c.preset + "')");
  }
  if (c.command != "fock-demo") derive(c.params);  // throws RegimeError naming the inequality
  require(c.params.omega_p > 0.0, "params.omega_p", "omega_p > 0", c.params.omega_p);

  if (c.initial.kind != "vacuum" && c.initial.kind != "squeezed") {
    throw ConfigError("initial.kind: must be vacuum or squeezed (got '" + c.initial.kind + "')");
  }
  if (c.initial.r.empty()) throw ConfigError("initial.r: at least one squeezing value required");
  for (double r : c.initial.r) require(std::isfinite(r), "initial.r", "finite r", r);

  require(c.time.t_max >= 0.0, "time.t_max", "t_max >= 0", c.time.t_max);
  require(c.time.t_step > 0.0, "time.t_step", "t_step > 0", c.time.t_step);
  require(c.time.t_max / c.time.t_step <= 1e7, "time.t_step", "t_max / t_step <= 1e7", c.time.t_step);

  require(c.grid.delta_t > 0.0, "grid.delta_t", "delta_t > 0", c.grid.delta_t);
  require(c.grid.k_max >= 0, "grid.k_max", "k_max >= 0", c.grid.k_max);
  if (c.grid.delta_ts.empty()) throw ConfigError("grid.delta_ts: at least one window width required");
  for (double dt : c.grid.delta_ts) require(dt > 0.0, "grid.delta_ts", "delta_t > 0", dt);
  require(c.grid.k_start >= 1, "grid.k_start", "k_start >= 1", c.grid.k_start);
  require(c.grid.cauchy_tol > 0.0, "grid.cauchy_tol", "cauchy_tol > 0", c.grid.cauchy_tol);
  require(c.grid.k_max_cap >= 0, "grid.k_max_cap", "k_max_cap >= 0", c.grid.k_max_cap);
  if (c.grid.method != "structured" && c.grid.method != "dense") {
    throw ConfigError("grid.method: must be structured or dense (got '" + c.grid.method + "')");
  }
  if (!c.output.format.empty() && c.output.format != "csv" && c.output.format != "json") {
    throw ConfigError("output.format: must be csv or json (got '" + c.output.format + "')");
  }
}

}  // namespace paramp::cli
