// Command-line front end for the gain/loss oscillator toolkit. All rates are
// given in units of g and all times in units of 1/g; --g sets the absolute
// scale. Domain work happens behind the C API in libptgl.

#include <CLI11.hpp>
#include <json.hpp>
#include <ptgl.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;

int exit_code_for(ptgl_status s) {
  switch (s) {
    case PTGL_OK:
      return 0;
    case PTGL_ERR_INVALID_ARG:
    case PTGL_ERR_IO:
      return 3;  // bad config
    default:
      return 2;  // numerical error
  }
}

int report_error(ptgl_status s, const std::string& context) {
  std::cerr << "ptgl: " << context << ": " << ptgl_status_name(s) << ": "
            << ptgl_last_error() << "\n";
  return exit_code_for(s);
}

int write_output(const std::string& path, const char* data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "ptgl: cannot open output file: " << path << "\n";
    return 3;
  }
  out << data;
  if (!out) {
    std::cerr << "ptgl: failed writing output file: " << path << "\n";
    return 3;
  }
  return 0;
}

struct OwnedString {
  char* data = nullptr;
  ~OwnedString() { ptgl_string_free(data); }
};

// Options may come from a JSON config file (--config); explicit flags win.
class ConfigBinder {
 public:
  explicit ConfigBinder(CLI::App* cmd) : cmd_(cmd) {}

  template <typename T>
  CLI::Option* bind(const std::string& flag, T& var, const std::string& desc) {
    CLI::Option* opt = cmd_->add_option(flag, var, desc);
    const std::string key = config_key(flag);
    appliers_.push_back([opt, key, &var](const json& cfg) {
      if (opt->count() == 0 && cfg.contains(key)) {
        var = cfg.at(key).get<T>();
      }
    });
    return opt;
  }

  void apply(const json& cfg) const {
    for (const auto& fn : appliers_) fn(cfg);
  }

 private:
  static std::string config_key(const std::string& flag) {
    // last long name, dashes mapped to underscores: "-o,--output" -> output
    std::string last;
    std::size_t pos = 0;
    while (pos < flag.size()) {
      const std::size_t comma = flag.find(',', pos);
      const std::string tok = flag.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok.rfind("--", 0) == 0) last = tok.substr(2);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    for (auto& c : last) {
      if (c == '-') c = '_';
    }
    return last;
  }

  CLI::App* cmd_;
  std::vector<std::function<void(const json&)>> appliers_;
};

bool load_config(const std::string& path, json& cfg, int& code) {
  if (path.empty()) {
    cfg = json::object();
    return true;
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "ptgl: cannot read config file: " << path << "\n";
    code = 3;
    return false;
  }
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    std::cerr << "ptgl: bad config file " << path << ": " << e.what() << "\n";
    code = 3;
    return false;
  }
  if (!cfg.is_object()) {
    std::cerr << "ptgl: config file must hold a JSON object\n";
    code = 3;
    return false;
  }
  return true;
}

int effective_threads(int requested) {
  int n = requested > 0
              ? requested
              : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap_env = std::getenv("PTG_THREADS")) {
    const int cap = std::atoi(cap_env);
    if (cap > 0 && cap < n) n = cap;
  }
  return n;
}

int parse_format(const std::string& name, ptgl_format& out) {
  if (name == "csv") {
    out = PTGL_FORMAT_CSV;
    return 0;
  }
  if (name == "json") {
    out = PTGL_FORMAT_JSON;
    return 0;
  }
  std::cerr << "ptgl: unknown format '" << name << "' (want csv or json)\n";
  return 3;
}

int parse_entropy(const std::string& name, ptgl_entropy_kind& out) {
  if (name == "renyi2") {
    out = PTGL_ENTROPY_RENYI2;
    return 0;
  }
  if (name == "von-neumann" || name == "von_neumann") {
    out = PTGL_ENTROPY_VON_NEUMANN;
    return 0;
  }
  std::cerr << "ptgl: unknown entropy kind '" << name
            << "' (want renyi2 or von-neumann)\n";
  return 3;
}

struct ModelHandle {
  ptgl_model* ptr = nullptr;
  ~ModelHandle() { ptgl_model_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ptgl — two coupled bosonic modes, one amplified and one damped:\n"
      "Gaussian dynamics, total/quantum correlations and stability analysis.\n"
      "Rates are in units of g, times in units of 1/g."};
  app.require_subcommand(1);

  // trajectory ---------------------------------------------------------------
  auto* traj_cmd = app.add_subcommand(
      "trajectory", "correlation measures along a time evolution from a "
                    "coherent (vacuum-covariance) initial state");
  ConfigBinder traj_bind(traj_cmd);
  double tj_g = 1.0, tj_gamma = 0.5, tj_gamma_l = -1.0, tj_gamma_g = -1.0;
  double tj_t_final = 50.0, tj_step = 1e-3;
  int tj_samples = 500;
  std::string tj_integrator = "exact", tj_entropy = "renyi2";
  std::string tj_output = "-", tj_format = "csv", tj_config;
  traj_bind.bind("--g", tj_g, "absolute coupling rate (sets the time unit)");
  traj_bind.bind("--gamma", tj_gamma, "balanced rate γ/g for both modes");
  traj_bind.bind("--gamma-L", tj_gamma_l, "loss rate γ_L/g (overrides --gamma)");
  traj_bind.bind("--gamma-G", tj_gamma_g, "gain rate γ_G/g (overrides --gamma)");
  traj_bind.bind("--t-final", tj_t_final, "horizon in units of 1/g");
  traj_bind.bind("--samples", tj_samples, "number of sample times");
  traj_bind.bind("--integrator", tj_integrator, "exact | rk4");
  traj_bind.bind("--rk4-step", tj_step, "RK4 step in units of 1/g");
  traj_bind.bind("--entropy", tj_entropy, "renyi2 | von-neumann");
  traj_bind.bind("-o,--output", tj_output, "output path ('-' = stdout)");
  traj_bind.bind("--format", tj_format, "csv | json");
  traj_cmd->add_option("--config", tj_config, "JSON config file; flags win");

  // sweep-pt-line --------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand(
      "sweep-pt-line",
      "stationary discord along the balanced line: closed-form limits next "
      "to measured long-time values");
  ConfigBinder sweep_bind(sweep_cmd);
  double sw_g = 1.0, sw_min = 0.05, sw_max = 3.0, sw_t_eval = 60.0;
  int sw_points = 60, sw_threads = 0;
  std::string sw_output = "-", sw_format = "csv", sw_config;
  sweep_bind.bind("--g", sw_g, "absolute coupling rate");
  sweep_bind.bind("--gamma-min", sw_min, "lower end of γ/g grid");
  sweep_bind.bind("--gamma-max", sw_max, "upper end of γ/g grid");
  sweep_bind.bind("--points", sw_points, "grid size");
  sweep_bind.bind("--t-eval", sw_t_eval,
                  "evaluation time for the measured values, units of 1/g");
  sweep_bind.bind("--threads", sw_threads, "worker threads (0 = auto)");
  sweep_bind.bind("-o,--output", sw_output, "output path ('-' = stdout)");
  sweep_bind.bind("--format", sw_format, "csv | json");
  sweep_cmd->add_option("--config", sw_config, "JSON config file; flags win");

  // phase-diagram ---------------------------------------------------------------
  auto* phase_cmd = app.add_subcommand(
      "phase-diagram", "stability classification and long-time correlations "
                       "over a (γ_L, γ_G) grid");
  ConfigBinder phase_bind(phase_cmd);
  double ph_g = 1.0, ph_max = 3.0, ph_t_final = 60.0;
  int ph_grid = 50, ph_threads = 0;
  std::string ph_output = "-", ph_format = "csv", ph_config;
  phase_bind.bind("--g", ph_g, "absolute coupling rate");
  phase_bind.bind("--gamma-max", ph_max, "grid upper bound in units of g");
  phase_bind.bind("--grid", ph_grid, "points per axis");
  phase_bind.bind("--t-final", ph_t_final, "trajectory horizon, units of 1/g");
  phase_bind.bind("--threads", ph_threads, "worker threads (0 = auto)");
  phase_bind.bind("-o,--output", ph_output, "output path ('-' = stdout)");
  phase_bind.bind("--format", ph_format, "csv | json");
  phase_cmd->add_option("--config", ph_config, "JSON config file; flags win");

  // asymptotics-check -----------------------------------------------------------
  auto* asym_cmd = app.add_subcommand(
      "asymptotics-check",
      "verify the long-time scaling laws; exit code 0 only when every check "
      "passes");
  ConfigBinder asym_bind(asym_cmd);
  double as_g = 1.0;
  std::string as_output = "-", as_config;
  asym_bind.bind("--g", as_g, "absolute coupling rate");
  asym_bind.bind("-o,--output", as_output, "report path ('-' = stdout)");
  asym_cmd->add_option("--config", as_config, "JSON config file; flags win");

  // oracle-check (hidden) ---------------------------------------------------
  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "cross-validate the Gaussian layer against a truncated "
                      "Fock-space integration");
  oracle_cmd->group("");  // not shown in help
  ConfigBinder oracle_bind(oracle_cmd);
  double or_g = 1.0, or_t_final = 2.0, or_step = 1e-3;
  int or_cutoff = 12;
  std::string or_output = "-", or_config;
  oracle_bind.bind("--g", or_g, "absolute coupling rate");
  oracle_bind.bind("--cutoff", or_cutoff, "Fock levels per mode minus one");
  oracle_bind.bind("--t-final", or_t_final, "horizon in units of 1/g");
  oracle_bind.bind("--step", or_step, "RK4 step in units of 1/g");
  oracle_bind.bind("-o,--output", or_output, "report path ('-' = stdout)");
  oracle_cmd->add_option("--config", or_config, "JSON config file; flags win");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand(traj_cmd)) {
    json cfg;
    int code = 0;
    if (!load_config(tj_config, cfg, code)) return code;
    traj_bind.apply(cfg);
    if (!(tj_g > 0.0)) {
      std::cerr << "ptgl: --g must be positive\n";
      return 3;
    }
    ptgl_format format;
    if (int c = parse_format(tj_format, format)) return c;
    ptgl_entropy_kind kind;
    if (int c = parse_entropy(tj_entropy, kind)) return c;
    if (tj_integrator != "exact" && tj_integrator != "rk4") {
      std::cerr << "ptgl: unknown integrator '" << tj_integrator << "'\n";
      return 3;
    }
    const double gl = (tj_gamma_l >= 0.0 ? tj_gamma_l : tj_gamma) * tj_g;
    const double gg = (tj_gamma_g >= 0.0 ? tj_gamma_g : tj_gamma) * tj_g;

    ModelHandle model;
    if (ptgl_status s = ptgl_model_create(tj_g, gl, gg, &model.ptr)) {
      return report_error(s, "trajectory");
    }
    OwnedString text;
    if (ptgl_status s = ptgl_render_trajectory(
            model.ptr, tj_t_final / tj_g, tj_samples,
            tj_integrator == "exact" ? 0 : 1, tj_step / tj_g, kind, format,
            &text.data)) {
      return report_error(s, "trajectory");
    }
    return write_output(tj_output, text.data);
  }

  if (app.got_subcommand(sweep_cmd)) {
    json cfg;
    int code = 0;
    if (!load_config(sw_config, cfg, code)) return code;
    sweep_bind.apply(cfg);
    if (!(sw_g > 0.0)) {
      std::cerr << "ptgl: --g must be positive\n";
      return 3;
    }
    ptgl_format format;
    if (int c = parse_format(sw_format, format)) return c;
    OwnedString text;
    if (ptgl_status s = ptgl_render_sweep_pt_line(
            sw_g, sw_min * sw_g, sw_max * sw_g, sw_points, sw_t_eval / sw_g,
            effective_threads(sw_threads), format, &text.data)) {
      return report_error(s, "sweep-pt-line");
    }
    return write_output(sw_output, text.data);
  }

  if (app.got_subcommand(phase_cmd)) {
    json cfg;
    int code = 0;
    if (!load_config(ph_config, cfg, code)) return code;
    phase_bind.apply(cfg);
    if (!(ph_g > 0.0)) {
      std::cerr << "ptgl: --g must be positive\n";
      return 3;
    }
    ptgl_format format;
    if (int c = parse_format(ph_format, format)) return c;
    OwnedString text;
    if (ptgl_status s = ptgl_render_phase_diagram(
            ph_g, ph_max * ph_g, ph_grid, ph_t_final / ph_g,
            effective_threads(ph_threads), format, &text.data)) {
      return report_error(s, "phase-diagram");
    }
    return write_output(ph_output, text.data);
  }

  if (app.got_subcommand(asym_cmd)) {
    json cfg;
    int code = 0;
    if (!load_config(as_config, cfg, code)) return code;
    asym_bind.apply(cfg);
    if (!(as_g > 0.0)) {
      std::cerr << "ptgl: --g must be positive\n";
      return 3;
    }
    OwnedString text;
    int all_pass = 0;
    if (ptgl_status s =
            ptgl_render_asymptotics_check(as_g, &text.data, &all_pass)) {
      return report_error(s, "asymptotics-check");
    }
    if (int c = write_output(as_output, text.data)) return c;
    return all_pass ? 0 : 1;
  }

  if (app.got_subcommand(oracle_cmd)) {
    json cfg;
    int code = 0;
    if (!load_config(or_config, cfg, code)) return code;
    oracle_bind.apply(cfg);
    if (!(or_g > 0.0)) {
      std::cerr << "ptgl: --g must be positive\n";
      return 3;
    }
    OwnedString text;
    int all_pass = 0;
    if (ptgl_status s = ptgl_render_oracle_check(
            or_g, or_cutoff, or_t_final, or_step, &text.data, &all_pass)) {
      return report_error(s, "oracle-check");
    }
    if (int c = write_output(or_output, text.data)) return c;
    return all_pass ? 0 : 1;
  }

  return 3;
}
