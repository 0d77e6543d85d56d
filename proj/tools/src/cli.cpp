#include "paramp_cli/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <thread>

#include "paramp/paramp.hpp"

namespace paramp::cli {

using nlohmann::json;

namespace {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> notes;
};

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::atoll(epoch));
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_csv(const Table& t, const ScenarioConfig& c, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << g17(row[i]);
    os << '\n';
  }
  for (const auto& [k, v] : t.notes) os << "# " << k << '=' << v << '\n';
  os << "# config=" << to_json(c).dump() << '\n';
  os << "# version=" << kVersion << '\n';
}

json envelope(const ScenarioConfig& c, json results) {
  return json{{"config", to_json(c)}, {"results", std::move(results)}, {"version", kVersion},
              {"timestamp", timestamp()}};
}

json table_json(const Table& t) {
  json notes = json::object();
  for (const auto& [k, v] : t.notes) notes[k] = v;
  return json{{"columns", t.columns}, {"rows", t.rows}, {"notes", notes}};
}

// Runs fn(0..n-1) on up to `threads` workers; results land in index order.
template <typename R>
std::vector<R> parallel_map(std::size_t n, unsigned threads, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

FluxOptions flux_options(const ScenarioConfig& c) {
  FluxOptions o;
  o.method = c.grid.method == "dense" ? SpectrumMethod::dense : SpectrumMethod::structured;
  o.k_max_cap = c.grid.k_max_cap;
  return o;
}

Table entropy_curves(const ScenarioConfig& c) {
  const auto d = derive(c.params);
  Table t{{"r", "t[time]", "det_C", "S_par[nats]"}, {}, {}};
  const std::vector<double> rs = c.initial.kind == "vacuum" ? std::vector<double>{0.0} : c.initial.r;
  const auto steps = static_cast<long>(std::floor(c.time.t_max / c.time.t_step + 1e-9));
  for (double r : rs) {
    const auto c0 = squeezed_initial_covariance(r, d);
    for (long i = 0; i <= steps; ++i) {
      const double time = static_cast<double>(i) * c.time.t_step;
      const double det = covariance_at(time, c0, d).det();
      t.rows.push_back({r, time, det, paramp_entropy(time, c0, d)});
    }
  }
  t.notes.emplace_back("asymptotic_entropy", g17(asymptotic_entropy(d)));
  return t;
}

Table sweep_table(const ScenarioConfig& c, unsigned threads, std::ostream& err) {
  const auto d = derive(c.params);
  const KMaxSchedule schedule{c.grid.k_start, c.grid.k_max, c.grid.cauchy_tol};
  const auto opts = flux_options(c);
  const auto rows = parallel_map<ScanRow>(c.grid.delta_ts.size(), threads, [&](std::size_t i) {
    return converge_in_k_max(d, c.grid.delta_ts[i], schedule, opts);
  });

  Table t{{"delta_t[time]", "k_max", "delta_S_out[nats]", "entropy_flux[nats/time]", "converged"}, {}, {}};
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : rows) {
    t.rows.push_back({r.delta_t, static_cast<double>(r.k_max), r.delta_S_out, r.entropy_flux, r.converged ? 1.0 : 0.0});
    if (r.warning) {
      err << "warning: delta_t=" << g17(r.delta_t) << ": " << *r.warning << '\n';
      t.notes.emplace_back("warning(delta_t=" + g17(r.delta_t) + ")", *r.warning);
    }
    if (!r.converged) {
      err << "warning: delta_t=" << g17(r.delta_t) << " did not converge by k_max=" << r.k_max << '\n';
    } else {
      xs.push_back(r.delta_t);
      ys.push_back(r.entropy_flux);
    }
  }
  const double slope = xs.size() >= 2 ? fit_log_slope(xs, ys) : std::nan("");
  t.notes.emplace_back("fitted_exponent", g17(slope));
  return t;
}

Table k_curve_table(const ScenarioConfig& c, unsigned threads) {
  const auto d = derive(c.params);
  const auto opts = flux_options(c);
  std::vector<std::pair<double, int>> jobs;
  for (double dt : c.grid.delta_ts) {
    for (int k = c.grid.k_start; k <= c.grid.k_max; k *= 2) jobs.emplace_back(dt, k);
  }
  const auto results = parallel_map<OutputEntropy>(jobs.size(), threads, [&](std::size_t i) {
    return output_entropy(d, ModeGrid(jobs[i].first, jobs[i].second), opts);
  });
  Table t{{"delta_t[time]", "k_max", "delta_S_out[nats]", "n_nontrivial"}, {}, {}};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    t.rows.push_back({jobs[i].first, static_cast<double>(jobs[i].second), results[i].delta_S_out,
                      static_cast<double>(results[i].nontrivial_gammas.size())});
  }
  t.notes.emplace_back("two_S_par_inf", g17(2.0 * asymptotic_entropy(d)));
  return t;
}

json output_entropy_report(const ScenarioConfig& c, std::ostream& err) {
  const auto d = derive(c.params);
  const ModeGrid g(c.grid.delta_t, c.grid.k_max);
  const auto warning = grid_warning(d, g);
  if (warning) err << "warning: " << *warning << '\n';
  const auto e = output_entropy(d, g, flux_options(c));
  json r{{"delta_t", g.delta_t()},
         {"k_max", g.k_max()},
         {"delta_S_out", e.delta_S_out},
         {"n_trivial_modes", e.n_trivial_modes},
         {"nontrivial_gammas", e.nontrivial_gammas},
         {"entropy_flux_estimate", e.delta_S_out / g.delta_t()},
         {"method", c.grid.method}};
  if (warning) r["warning"] = *warning;
  return r;
}

json fluxes_report(const ScenarioConfig& c, std::ostream& err) {
  const auto d = derive(c.params);
  const ModeGrid g(c.grid.delta_t, c.grid.k_max);
  const auto warning = grid_warning(d, g);
  if (warning) err << "warning: " << *warning << '\n';
  const auto f = flux_report(d, g, c.params.omega_p, flux_options(c));
  json r{{"delta_t", f.delta_t},
         {"k_max", f.k_max},
         {"delta_S_out", f.delta_S_out},
         {"n_trivial_modes", f.n_trivial_modes},
         {"nontrivial_gammas", f.nontrivial_gammas},
         {"delta_N_out", f.delta_N_out},
         {"number_flux", f.number_flux},
         {"output_power", f.output_power},
         {"drive_power", f.drive_power},
         {"entropy_flux_estimate", f.entropy_flux_estimate}};
  if (warning) r["warning"] = *warning;
  return r;
}

json fock_report() {
  const auto s = entanglement_swap();
  const auto t = beamsplitter_transfer(1.0, 1.0);
  json amps = json::array();
  for (Eigen::Index i = 0; i < s.post_state.amplitudes().size(); ++i) {
    const auto a = s.post_state.amplitudes()(i);
    amps.push_back({a.real(), a.imag()});
  }
  return json{{"swap",
               {{"projection_probability", s.projection_probability},
                {"complement_probability", s.complement_probability},
                {"target_fidelity", s.target_fidelity},
                {"b_pair_entanglement", s.b_pair_entanglement},
                {"post_state", amps}}},
              {"transfer",
               {{"b_squared_coherence", {t.b_squared_coherence.real(), t.b_squared_coherence.imag()}},
                {"abs_b_squared_coherence", std::abs(t.b_squared_coherence)},
                {"residual_entanglement", t.residual_entanglement},
                {"mean_a_occupation", t.mean_a_occupation}}}};
}

bool is_report(const ScenarioConfig& c) {
  return c.command == "output-entropy" || c.command == "fluxes" || c.command == "fock-demo";
}

}  // namespace

unsigned resolve_threads(int flag) {
  unsigned n = flag > 0 ? static_cast<unsigned>(flag) : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PARAMP_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) {
      throw ConfigError(std::string("PARAMP_THREADS: must be a positive integer (got '") + env + "')");
    }
    n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

int run_scenario(const ScenarioConfig& config, unsigned threads, std::ostream& out, std::ostream& err) {
  validate(config);
  const std::string format = config.output.format.empty() ? (is_report(config) ? "json" : "csv") : config.output.format;
  if (is_report(config) && format == "csv") {
    throw ConfigError("output.format: csv is only available for curve commands, not '" + config.command + "'");
  }

  std::ofstream file;
  if (!config.output.path.empty()) {
    file.open(config.output.path);
    if (!file) throw ConfigError("output.path: cannot open '" + config.output.path + "' for writing");
  }
  std::ostream& os = config.output.path.empty() ? out : file;

  if (is_report(config)) {
    json results;
    if (config.command == "output-entropy") results = output_entropy_report(config, err);
    if (config.command == "fluxes") results = fluxes_report(config, err);
    if (config.command == "fock-demo") results = fock_report();
    os << envelope(config, std::move(results)).dump(2) << '\n';
    return kOk;
  }

  Table table;
  if (config.command == "paramp-entropy" || (config.command == "preset" && config.preset == "fig1")) {
    table = entropy_curves(config);
  } else if (config.command == "sweep") {
    table = sweep_table(config, threads, err);
  } else {
    table = k_curve_table(config, threads);
  }
  if (format == "csv") {
    write_csv(table, config, os);
  } else {
    os << envelope(config, table_json(table)).dump(2) << '\n';
  }
  return kOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy, number and energy flow in a driven degenerate parametric amplifier", "paramp"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  int threads_flag = 0;
  bool dump_config = false;
  double gamma = 1.0, f = 0.3, delta_omega = 0.0, f_prime = 0.0, omega_p = 1.0;
  int k_max_cap = kDefaultKMaxCap;
  std::string format, output_path;

  app.add_option("--config", config_path, "Scenario JSON file")->check(CLI::ExistingFile);
  app.add_option("--threads", threads_flag, "Worker threads for sweeps (default: hardware concurrency)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--dump-config", dump_config, "Print the resolved scenario as JSON and exit");
  auto* o_gamma = app.add_option("--gamma", gamma, "Decay rate Gamma");
  auto* o_f = app.add_option("--f", f, "Drive amplitude f");
  auto* o_dw = app.add_option("--delta-omega", delta_omega, "Detuning delta_omega");
  auto* o_fp = app.add_option("--f-prime", f_prime, "Set detuning through f' = sqrt(f^2 - delta_omega^2)");
  o_dw->excludes(o_fp);
  auto* o_wp = app.add_option("--omega-p", omega_p, "Pump frequency (power only)");
  auto* o_cap = app.add_option("--k-max-cap", k_max_cap, "Resource guard on k_max");
  auto* o_fmt = app.add_option("--format", format, "csv or json");
  auto* o_out = app.add_option("-o,--output", output_path, "Output file (default: stdout)");

  std::vector<double> r_values;
  double t_max = 10.0, t_step = 0.05;
  auto* s_ent = app.add_subcommand("paramp-entropy", "S_par(t) curves for squeezed initial states");
  auto* o_r = s_ent->add_option("--r", r_values, "Squeezing values");
  auto* o_tmax = s_ent->add_option("--t-max", t_max, "Last time");
  auto* o_tstep = s_ent->add_option("--t-step", t_step, "Time step");

  double delta_t = 40.0;
  int k_max = 256;
  std::string method = "structured";
  std::vector<CLI::Option*> dt_opts, k_opts, method_opts;
  auto* s_out = app.add_subcommand("output-entropy", "Entropy of one output window");
  auto* s_flux = app.add_subcommand("fluxes", "Entropy, number and power report for one window");
  for (auto* s : {s_out, s_flux}) {
    dt_opts.push_back(s->add_option("--delta-t", delta_t, "Window width"));
    k_opts.push_back(s->add_option("--k-max", k_max, "Highest harmonic"));
    method_opts.push_back(
        s->add_option("--method", method, "structured or dense")->check(CLI::IsMember({"structured", "dense"})));
  }

  app.add_subcommand("fock-demo", "Entanglement transfer and swap in a truncated Fock space");

  std::vector<double> delta_ts;
  int k_start = 64;
  double cauchy_tol = 1e-3;
  auto* s_sweep = app.add_subcommand("sweep", "Converge Delta S_out in k_max for several window widths");
  auto* o_dts = s_sweep->add_option("--delta-t", delta_ts, "Window widths");
  auto* o_kstart = s_sweep->add_option("--k-start", k_start, "First k_max of the doubling schedule");
  auto* o_ktol = s_sweep->add_option("--cauchy-tol", cauchy_tol, "Stop when a doubling changes Delta S_out less");
  k_opts.push_back(s_sweep->add_option("--k-max", k_max, "Upper k_max of the schedule"));
  method_opts.push_back(
      s_sweep->add_option("--method", method, "structured or dense")->check(CLI::IsMember({"structured", "dense"})));

  std::string preset_name;
  auto* s_preset = app.add_subcommand("preset", "Figure data presets");
  s_preset->add_option("name", preset_name, "fig1 or fig2")->required()->check(CLI::IsMember({"fig1", "fig2"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    ScenarioConfig c;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + config_path + "' is not valid JSON: " + e.what());
      }
      c = config_from_json(j);
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.command == "preset") {
      c.preset = preset_name;
      apply_preset(c);
    }

    auto given = [](const CLI::Option* o) { return o->count() > 0; };
    auto any_given = [&](const std::vector<CLI::Option*>& os) {
      return std::any_of(os.begin(), os.end(), [&](const CLI::Option* o) { return given(o); });
    };
    if (given(o_gamma)) c.params.gamma = gamma;
    if (given(o_f)) c.params.f = f;
    if (given(o_dw)) c.params.delta_omega = delta_omega;
    if (given(o_fp)) {
      if (!(f_prime > 0.0 && f_prime <= c.params.f)) {
        throw ConfigError("--f-prime: 0 < f' <= f violated (f' = " + std::to_string(f_prime) +
                          ", f = " + std::to_string(c.params.f) + ")");
      }
      c.params.delta_omega = std::sqrt((c.params.f - f_prime) * (c.params.f + f_prime));
    }
    if (given(o_wp)) c.params.omega_p = omega_p;
    if (given(o_cap)) c.grid.k_max_cap = k_max_cap;
    if (given(o_fmt)) c.output.format = format;
    if (given(o_out)) c.output.path = output_path;
    if (given(o_r)) {
      c.initial.kind = "squeezed";
      c.initial.r = r_values;
    }
    if (given(o_tmax)) c.time.t_max = t_max;
    if (given(o_tstep)) c.time.t_step = t_step;
    if (any_given(dt_opts)) c.grid.delta_t = delta_t;
    if (any_given(k_opts)) c.grid.k_max = k_max;
    if (any_given(method_opts)) c.grid.method = method;
    if (given(o_dts)) c.grid.delta_ts = delta_ts;
    if (given(o_kstart)) c.grid.k_start = k_start;
    if (given(o_ktol)) c.grid.cauchy_tol = cauchy_tol;

    if (dump_config) {
      validate(c);
      out << to_json(c).dump(2) << '\n';
      return kOk;
    }
    return run_scenario(c, resolve_threads(threads_flag), out, err);
  } catch (const ResourceLimitError& e) {
    err << "resource guard: " << e.what() << '\n';
    return kResourceGuard;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const TruncationError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const RegimeError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ContractViolation& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace paramp::cli
