#include "spinrotor_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spinrotor/dirac_wave.hpp"
#include "spinrotor/errors.hpp"
#include "spinrotor/pauli.hpp"
#include "spinrotor/rotating_frame.hpp"
#include "spinrotor/verify.hpp"

#ifndef SPINROTOR_VERSION
#define SPINROTOR_VERSION "0.0.0"
#endif

namespace spinrotor::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

// Shortest round-trip decimal form; keeps CSV and JSON output byte-stable.
std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_double_strict(std::string piece, const std::string& label) {
  const auto first = piece.find_first_not_of(" \t");
  const auto last = piece.find_last_not_of(" \t");
  if (first == std::string::npos)
    throw Error(ErrorCode::Usage, label + ": empty number");
  piece = piece.substr(first, last - first + 1);
  double value = 0.0;
  const char* begin = piece.data();
  const char* end = begin + piece.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw Error(ErrorCode::Usage, label + ": cannot parse '" + piece + "'");
  return value;
}

std::array<double, 3> parse_triple(const std::string& text, const std::string& label) {
  std::array<double, 3> vals{};
  std::size_t start = 0;
  int idx = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string piece = comma == std::string::npos
                                  ? text.substr(start)
                                  : text.substr(start, comma - start);
    if (idx >= 3)
      throw Error(ErrorCode::Usage, label + " expects exactly three comma-separated numbers");
    vals[static_cast<std::size_t>(idx)] = parse_double_strict(piece, label);
    ++idx;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (idx != 3)
    throw Error(ErrorCode::Usage, label + " expects exactly three comma-separated numbers");
  return vals;
}

unsigned long long seed_from_environment() {
  const char* env = std::getenv("SPINROTOR_SEED");
  if (!env || !*env) return 20240817ULL;
  unsigned long long value = 0;
  const char* end = env + std::string_view(env).size();
  const auto res = std::from_chars(env, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw Error(ErrorCode::ConfigError,
                "SPINROTOR_SEED must be an unsigned integer, got '" +
                    std::string(env) + "'");
  return value;
}

struct AppState {
  CLI::App app{"rotating-frame spin and wave toolkit", "spinrotor"};

  std::string config_path;
  std::string output_path;
  unsigned long long seed = 20240817ULL;

  struct {
    double r = 1.0, omega = 0.0, v = 0.0;
    std::string event;
  } tr;
  CLI::App* transform = nullptr;

  struct {
    double r = 1.0, omega = 0.0, omega_particle = 0.0, v_particle = 0.0;
  } kin;
  CLI::App* kinematics = nullptr;

  struct {
    double g = 2.0, H = 0.0, Hz = 0.0, Omega = 0.0, t_max = 10.0, dt = 0.0;
    bool lab = false;
    std::string s0 = "0,0,1";
  } pl;
  CLI::App* pauli = nullptr;

  struct {
    double Hz = -0.5, H = 0.0, Omega = 0.25;
    bool uncorrected = false;
    double p = 0.0;
    std::string branch = "plus";
    double t_max = 25.0, dt = 0.0, z = 0.0;
  } dr;
  CLI::App* dirac = nullptr;
  CLI::App* dirac_modes = nullptr;
  CLI::App* dirac_spin = nullptr;

  struct {
    std::string suite = "all";
    int parallel = 1;
  } vf;
  CLI::App* verify = nullptr;
};

template <typename T>
CLI::Option* opt(CLI::App* sub, const std::string& name, T& var,
                 const std::string& desc) {
  return sub->add_option(name, var, desc)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_common(CLI::App* sub, AppState& s) {
  opt(sub, "--config", s.config_path,
      "flat JSON file with option defaults; explicit flags override it");
  opt(sub, "--output", s.output_path, "write the result to this file instead of stdout");
  opt(sub, "--seed", s.seed,
      "seed for randomized sweeps (SPINROTOR_SEED overrides the built-in default)");
}

std::unique_ptr<AppState> build_state() {
  auto st = std::make_unique<AppState>();
  AppState& s = *st;
  s.seed = seed_from_environment();
  s.app.set_version_flag("--version", std::string("spinrotor ") + SPINROTOR_VERSION);
  s.app.require_subcommand(1);

  s.transform = s.app.add_subcommand(
      "transform", "coordinate map between the lab and the rotating frame");
  opt(s.transform, "--r", s.tr.r, "cylinder radius, Compton units");
  opt(s.transform, "--omega", s.tr.omega, "frame angular velocity");
  opt(s.transform, "--v", s.tr.v, "axial boost of the composed map (declared, not implemented)");
  opt(s.transform, "--event", s.tr.event, "phi,z,t to push through the map");
  add_common(s.transform, s);

  s.kinematics = s.app.add_subcommand(
      "kinematics", "angular and axial velocity seen from the rotating frame");
  opt(s.kinematics, "--r", s.kin.r, "cylinder radius, Compton units");
  opt(s.kinematics, "--omega", s.kin.omega, "frame angular velocity");
  opt(s.kinematics, "--omega-particle", s.kin.omega_particle, "particle angular velocity in the lab");
  opt(s.kinematics, "--v", s.kin.v_particle, "particle axial velocity in the lab");
  add_common(s.kinematics, s);

  s.pauli = s.app.add_subcommand(
      "pauli", "averaged-spin precession in the rotating frame (CSV series)");
  opt(s.pauli, "--g", s.pl.g, "gyromagnetic ratio");
  opt(s.pauli, "--H", s.pl.H, "transverse co-rotating field amplitude");
  opt(s.pauli, "--Hz", s.pl.Hz, "constant axial field");
  opt(s.pauli, "--Omega", s.pl.Omega, "frame angular velocity");
  opt(s.pauli, "--t-max", s.pl.t_max, "integration end time");
  opt(s.pauli, "--dt", s.pl.dt, "integrator step (0 = automatic)");
  s.pauli->add_flag("--lab", s.pl.lab, "report the series in lab-frame components");
  opt(s.pauli, "--s0", s.pl.s0, "initial spin s1,s2,s3 (unit norm)");
  add_common(s.pauli, s);

  s.dirac = s.app.add_subcommand(
      "dirac", "exact modes of the wave-plus-axial-field configuration");
  s.dirac->require_subcommand(1);

  s.dirac_modes = s.dirac->add_subcommand(
      "modes", "characteristic roots and the normalized mode pair (JSON)");
  opt(s.dirac_modes, "--Hz", s.dr.Hz, "constant axial field (negative for a bound envelope)");
  opt(s.dirac_modes, "--H", s.dr.H, "wave amplitude");
  opt(s.dirac_modes, "--Omega", s.dr.Omega, "wave angular frequency");
  opt(s.dirac_modes, "--p", s.dr.p, "axial momentum (default: the degeneracy value)");
  s.dirac_modes->add_flag("--uncorrected-momentum", s.dr.uncorrected,
                          "use the uncorrected degeneracy momentum (comparison only)");
  add_common(s.dirac_modes, s);

  s.dirac_spin = s.dirac->add_subcommand(
      "spin", "averaged spin of one split mode along the wave (CSV series)");
  opt(s.dirac_spin, "--Hz", s.dr.Hz, "constant axial field (negative for a bound envelope)");
  opt(s.dirac_spin, "--H", s.dr.H, "wave amplitude");
  opt(s.dirac_spin, "--Omega", s.dr.Omega, "wave angular frequency");
  opt(s.dirac_spin, "--branch", s.dr.branch, "which split mode: plus or minus");
  opt(s.dirac_spin, "--t-max", s.dr.t_max, "sampling end time");
  opt(s.dirac_spin, "--dt", s.dr.dt, "sampling step (0 = t-max/200)");
  opt(s.dirac_spin, "--z", s.dr.z, "axial position of the sampling line");
  add_common(s.dirac_spin, s);

  s.verify = s.app.add_subcommand(
      "verify", "run the built-in verification suite (JSON report)");
  opt(s.verify, "--suite", s.vf.suite, "'all' or a comma-separated list of check names");
  opt(s.verify, "--parallel", s.vf.parallel, "run checks concurrently when > 1")
      ->check(CLI::PositiveNumber);
  add_common(s.verify, s);

  return st;
}

// Chain of parsed subcommand names, e.g. {"dirac", "modes"}.
std::vector<std::string> parsed_chain(const AppState& s, const CLI::App** leaf) {
  std::vector<std::string> chain;
  const CLI::App* cur = &s.app;
  while (true) {
    const auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    chain.push_back(subs[0]->get_name());
    cur = subs[0];
  }
  if (leaf) *leaf = cur;
  return chain;
}

ordered_json load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::ConfigError,
                "config file '" + path + "' is not valid JSON: " + ex.what());
  }
  if (!j.is_object())
    throw Error(ErrorCode::ConfigError,
                "config file '" + path + "' must hold a flat JSON object");
  return j;
}

std::vector<std::string> config_tokens(const ordered_json& cfg, const CLI::App* leaf) {
  std::set<std::string> allowed;
  for (const CLI::Option* o : leaf->get_options())
    for (const std::string& ln : o->get_lnames()) allowed.insert(ln);

  std::vector<std::string> tokens;
  for (const auto& item : cfg.items()) {
    const std::string& key = item.key();
    if (key == "config")
      throw Error(ErrorCode::ConfigError, "config files cannot nest a 'config' key");
    if (allowed.find(key) == allowed.end())
      throw Error(ErrorCode::ConfigError,
                  "unknown config key '" + key + "' for command '" +
                      leaf->get_name() + "'");
    const ordered_json& val = item.value();
    if (val.is_boolean()) {
      if (val.get<bool>()) tokens.push_back("--" + key);
    } else if (val.is_number_integer()) {
      tokens.push_back("--" + key);
      tokens.push_back(std::to_string(val.get<long long>()));
    } else if (val.is_number_unsigned()) {
      tokens.push_back("--" + key);
      tokens.push_back(std::to_string(val.get<unsigned long long>()));
    } else if (val.is_number_float()) {
      tokens.push_back("--" + key);
      tokens.push_back(format_double(val.get<double>()));
    } else if (val.is_string()) {
      tokens.push_back("--" + key);
      tokens.push_back(val.get<std::string>());
    } else {
      throw Error(ErrorCode::ConfigError,
                  "config key '" + key + "' must be a number, string, or boolean");
    }
  }
  return tokens;
}

std::size_t insert_index(const std::vector<std::string>& tokens,
                         const std::vector<std::string>& chain) {
  std::size_t idx = 0;
  for (const std::string& name : chain) {
    bool found = false;
    for (std::size_t i = idx; i < tokens.size(); ++i) {
      if (tokens[i] == name) {
        idx = i + 1;
        found = true;
        break;
      }
    }
    if (!found) return tokens.size();
  }
  return idx;
}

void parse_tokens(AppState& s, const std::vector<std::string>& tokens) {
  std::vector<std::string> full;
  full.reserve(tokens.size() + 1);
  full.emplace_back("spinrotor");
  full.insert(full.end(), tokens.begin(), tokens.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const std::string& t : full) argv.push_back(t.c_str());
  s.app.parse(static_cast<int>(argv.size()), argv.data());
}

int emit(const AppState& s, const std::string& payload, std::ostream& out) {
  if (!s.output_path.empty()) {
    std::ofstream f(s.output_path, std::ios::binary);
    if (!f)
      throw Error(ErrorCode::IoError,
                  "cannot open output file '" + s.output_path + "'");
    f << payload;
    if (!f)
      throw Error(ErrorCode::IoError,
                  "failed writing output file '" + s.output_path + "'");
  } else {
    out << payload;
  }
  return 0;
}

ordered_json event_json(const CylEvent& e) {
  return {{"phi", e.phi}, {"z", e.z}, {"t", e.t}};
}

int cmd_transform(const AppState& s, std::ostream& out) {
  FrameParams p;
  p.r = s.tr.r;
  p.Omega = s.tr.omega;
  p.v = s.tr.v;
  const FrameTransform tf = build_transform(p);

  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "transform";
  j["params"] = {{"r", p.r}, {"omega", p.Omega}, {"v", p.v}};
  j["s"] = p.s();
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 3; ++i)
    rows.push_back({tf.a(i, 0), tf.a(i, 1), tf.a(i, 2)});
  j["matrix"] = rows;
  j["det"] = tf.det();
  j["constraint_residual"] = tf.constraint_residual();

  if (s.transform->count("--event") > 0) {
    const auto vals = parse_triple(s.tr.event, "--event");
    CylEvent e{vals[0], vals[1], vals[2], p.r};
    const CylEvent moved = apply(tf, e);
    j["event_in"] = event_json(e);
    j["event_out"] = event_json(moved);
    j["invariant_in"] = quadratic_invariant(e);
    j["invariant_out"] = quadratic_invariant(moved);
    j["galilean_out"] = event_json(galilean_map(e, p.Omega));
  }
  return emit(s, j.dump(2) + "\n", out);
}

int cmd_kinematics(const AppState& s, std::ostream& out) {
  FrameParams p;
  p.r = s.kin.r;
  p.Omega = s.kin.omega;
  KinematicState lab;
  lab.omega = s.kin.omega_particle;
  lab.v = s.kin.v_particle;
  const KinematicState rot = kinematic_map(p, lab);
  const auto [frame_clock, lab_clock] = time_dilation_ratios(p, 0.0);

  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "kinematics";
  j["params"] = {{"r", p.r}, {"omega", p.Omega}};
  j["particle_lab"] = {{"omega", lab.omega}, {"v", lab.v}};
  j["particle_rotating"] = {{"omega", rot.omega}, {"v", rot.v}};
  j["time_dilation"] = {{"frame_clock", frame_clock}, {"lab_clock", lab_clock}};
  return emit(s, j.dump(2) + "\n", out);
}

int cmd_pauli(const AppState& s, std::ostream& out) {
  PauliConfig cfg;
  cfg.g = s.pl.g;
  cfg.H = s.pl.H;
  cfg.Hz = s.pl.Hz;
  cfg.Omega = s.pl.Omega;
  const auto vals = parse_triple(s.pl.s0, "--s0");
  SpinVector s0;
  s0.s1 = vals[0];
  s0.s2 = vals[1];
  s0.s3 = vals[2];
  const double dt = s.pl.dt > 0.0 ? s.pl.dt : default_time_step(cfg);
  std::vector<SpinSample> series = integrate_spin(s0, cfg, s.pl.t_max, dt);
  if (s.pl.lab) series = to_lab_frame(series, cfg.Omega);

  std::ostringstream csv;
  csv << "t,s1,s2,s3,frame\n";
  const char* tag = s.pl.lab ? "lab" : "rotating";
  for (const SpinSample& smp : series) {
    csv << format_double(smp.t) << ',' << format_double(smp.s.s1) << ','
        << format_double(smp.s.s2) << ',' << format_double(smp.s.s3) << ','
        << tag << '\n';
  }
  return emit(s, csv.str(), out);
}

ordered_json mode_json(const ModeSolution& m) {
  ordered_json psi = ordered_json::array();
  for (int i = 0; i < 4; ++i)
    psi.push_back({m.psi(i).real(), m.psi(i).imag()});
  return {{"branch", to_string(m.branch)}, {"Ecal", m.Ecal}, {"E", m.E},
          {"p", m.p},     {"d2", m.d2},     {"N", m.N}, {"psi", psi}};
}

ordered_json calibration_json(const Calibration& c) {
  return {{"representation", to_string(c.rep)},
          {"d2_convention", to_string(c.d2_convention)},
          {"normalization_factor", c.normalization_factor},
          {"plus_branch_sign", c.plus_branch_sign},
          {"minus_branch_sign", c.minus_branch_sign},
          {"winner_margin", c.winner_margin}};
}

int cmd_dirac_modes(const AppState& s, std::ostream& out) {
  WaveConfig cfg{s.dr.Hz, s.dr.H, s.dr.Omega};
  cfg.validate();
  const DerivedParams der = derived_params(cfg);
  const bool p_given = s.dirac_modes->count("--p") > 0;
  const bool corrected = !s.dr.uncorrected;
  const double p = p_given ? s.dr.p
                           : singular_momentum(der.E0, cfg.Omega, corrected);

  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "dirac_modes";
  j["config"] = {{"Hz", cfg.Hz}, {"H", cfg.H}, {"Omega", cfg.Omega}};
  j["derived"] = {{"d", der.d}, {"h", der.h}, {"E0", der.E0},
                  {"g_factor", der.g_factor()}};
  j["momentum"] = {{"value", p},
                   {"source", p_given ? "explicit" : (corrected ? "degeneracy" : "degeneracy_uncorrected")}};

  const auto roots = characteristic_roots(der.E0, der.h, p, cfg.Omega);
  ordered_json jroots = ordered_json::array();
  for (const CubicRoot& r : roots) {
    jroots.push_back({{"re", r.value.real()},
                      {"im", r.value.imag()},
                      {"residual", r.residual},
                      {"near_pole", r.near_pole}});
  }
  j["roots"] = jroots;

  if (!p_given && corrected && der.h > 0.0) {
    const SingularPair pair = singular_pair(cfg);
    j["modes"] = {mode_json(pair.plus), mode_json(pair.minus)};
    j["large_h_warning"] = pair.large_h_warning;
  }
  j["calibration"] = calibration_json(default_calibration());
  return emit(s, j.dump(2) + "\n", out);
}

int cmd_dirac_spin(const AppState& s, std::ostream& out) {
  WaveConfig cfg{s.dr.Hz, s.dr.H, s.dr.Omega};
  cfg.validate();
  if (s.dr.branch != "plus" && s.dr.branch != "minus")
    throw Error(ErrorCode::Usage, "--branch must be 'plus' or 'minus'");
  if (!(s.dr.t_max >= 0.0))
    throw Error(ErrorCode::Usage, "--t-max must be >= 0");
  const SingularPair pair = singular_pair(cfg);
  const ModeSolution& mode = s.dr.branch == "plus" ? pair.plus : pair.minus;
  const SpinObservable obs = spin_expectation(mode, cfg);
  const double dt = s.dr.dt > 0.0 ? s.dr.dt : s.dr.t_max / 200.0;
  if (!(dt > 0.0))
    throw Error(ErrorCode::Usage, "sampling step must be > 0; give --dt with --t-max 0");

  std::ostringstream csv;
  csv << "t,s1,s2,s3\n";
  for (double t = 0.0; t <= s.dr.t_max + 0.5 * dt; t += dt) {
    const auto sp = spin_at(obs, cfg.Omega, t, s.dr.z);
    csv << format_double(t) << ',' << format_double(sp[0]) << ','
        << format_double(sp[1]) << ',' << format_double(sp[2]) << '\n';
  }
  return emit(s, csv.str(), out);
}

int cmd_verify(const AppState& s, std::ostream& out) {
  verify::Options vo;
  vo.seed = s.seed;
  vo.parallel = s.vf.parallel;
  if (s.vf.suite != "all") {
    std::size_t start = 0;
    while (start <= s.vf.suite.size()) {
      const std::size_t comma = s.vf.suite.find(',', start);
      const std::string name = comma == std::string::npos
                                   ? s.vf.suite.substr(start)
                                   : s.vf.suite.substr(start, comma - start);
      if (!name.empty()) vo.subset.push_back(name);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (vo.subset.empty())
      throw Error(ErrorCode::Usage, "--suite expects 'all' or check names");
  }

  const verify::Report report = verify::run(vo);

  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = "verify";
  j["seed"] = vo.seed;
  j["parallel"] = vo.parallel;
  ordered_json checks = ordered_json::array();
  for (const verify::CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"max_residual", c.max_residual},
                      {"convergence_order", c.convergence_order},
                      {"details", c.details}});
  }
  j["checks"] = checks;
  j["all_pass"] = report.all_pass();
  emit(s, j.dump(2) + "\n", out);
  return report.all_pass() ? 0 : 1;
}

int dispatch(const AppState& s, std::ostream& out) {
  if (s.transform->parsed()) return cmd_transform(s, out);
  if (s.kinematics->parsed()) return cmd_kinematics(s, out);
  if (s.pauli->parsed()) return cmd_pauli(s, out);
  if (s.dirac->parsed()) {
    if (s.dirac_modes->parsed()) return cmd_dirac_modes(s, out);
    if (s.dirac_spin->parsed()) return cmd_dirac_spin(s, out);
  }
  if (s.verify->parsed()) return cmd_verify(s, out);
  throw Error(ErrorCode::Usage, "no command given (try --help)");
}

int exit_code_for(const Error& e) {
  return (e.code() == ErrorCode::Usage || e.code() == ErrorCode::ConfigError) ? 2 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> tokens;
  tokens.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) tokens.emplace_back(argv[i]);

  try {
    auto state = build_state();
    try {
      parse_tokens(*state, tokens);
    } catch (const CLI::CallForHelp& e) {
      return state->app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
      return state->app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      err << "error_code=usage " << e.what() << "\n";
      return 2;
    }

    if (!state->config_path.empty()) {
      const CLI::App* leaf = nullptr;
      const std::vector<std::string> chain = parsed_chain(*state, &leaf);
      const ordered_json cfg = load_config(state->config_path);
      const std::vector<std::string> extra = config_tokens(cfg, leaf);
      if (!extra.empty()) {
        std::vector<std::string> merged = tokens;
        const std::size_t at = insert_index(merged, chain);
        merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(at),
                      extra.begin(), extra.end());
        state = build_state();
        try {
          parse_tokens(*state, merged);
        } catch (const CLI::ParseError& e) {
          err << "error_code=config_error " << e.what() << "\n";
          return 2;
        }
      }
    }

    return dispatch(*state, out);
  } catch (const Error& e) {
    err << "error_code=" << e.code_name() << " " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& ex) {
    err << "error_code=internal " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace spinrotor::cli
