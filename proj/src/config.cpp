#include "stochhyp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "stochhyp/errors.hpp"

namespace stochhyp {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("expected a number, got '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("expected true/false, got '" + s + "'");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class Enum>
Enum pick(const std::string& s, std::initializer_list<std::pair<const char*, Enum>> names) {
  for (const auto& [n, e] : names) {
    if (s == n) return e;
  }
  std::string known;
  for (const auto& [n, e] : names) known += (known.empty() ? "" : ", ") + std::string(n);
  throw std::invalid_argument("unknown value '" + s + "' (expected one of: " + known + ")");
}

std::string_view to_string(convection::Transmission t) {
  return t == convection::Transmission::conserve_flux ? "conserve_flux" : "conserve_mass";
}
std::string_view to_string(liouville::Integrator i) { return i == liouville::Integrator::euler ? "euler" : "rk2"; }
std::string_view to_string(liouville::VFluxForm f) {
  return f == liouville::VFluxForm::corrected ? "corrected" : "verbatim";
}

struct ParseState {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::set<std::string> written;
  std::optional<double> dt_ratio;
};

using Setter = std::function<void(ParseState&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"problem", [](ParseState& s, const std::string& v) {
         s.config.problem = pick<Problem>(v, {{"convection", Problem::convection}, {"liouville", Problem::liouville}});
       }},
      {"order", [](ParseState& s, const std::string& v) { s.config.order = parse_int(v); }},
      {"K", [](ParseState& s, const std::string& v) { s.config.K = parse_int(v); }},
      {"quadrature", [](ParseState& s, const std::string& v) { s.config.quadrature = parse_int(v); }},
      {"mode", [](ParseState& s, const std::string& v) {
         s.config.mode = pick<SolverMode>(v, {{"gpc_sg", SolverMode::gpc_sg},
                                              {"collocation", SolverMode::collocation},
                                              {"deterministic", SolverMode::deterministic}});
       }},
      {"z", [](ParseState& s, const std::string& v) { s.config.z = parse_double(v); }},
      {"T", [](ParseState& s, const std::string& v) { s.config.T = parse_double(v); }},
      {"init", [](ParseState& s, const std::string& v) { s.config.init = v; }},
      {"limiter", [](ParseState& s, const std::string& v) {
         try {
           s.config.limiter = limiter_from_string(v);
         } catch (const ConfigError& e) {
           throw std::invalid_argument(e.what());
         }
       }},
      {"integrator", [](ParseState& s, const std::string& v) {
         s.config.integrator =
             pick<liouville::Integrator>(v, {{"euler", liouville::Integrator::euler}, {"rk2", liouville::Integrator::rk2}});
       }},
      {"threads", [](ParseState& s, const std::string& v) { s.config.threads = parse_int(v); }},
      {"grid.a", [](ParseState& s, const std::string& v) { s.config.a = parse_double(v); }},
      {"grid.b", [](ParseState& s, const std::string& v) { s.config.b = parse_double(v); }},
      {"grid.dx", [](ParseState& s, const std::string& v) { s.config.dx = parse_double(v); }},
      {"grid.dt", [](ParseState& s, const std::string& v) { s.config.dt = parse_double(v); }},
      {"grid.dt_ratio", [](ParseState& s, const std::string& v) { s.dt_ratio = parse_double(v); }},
      {"grid.x_extent", [](ParseState& s, const std::string& v) { s.config.x_extent = parse_double(v); }},
      {"grid.v_extent", [](ParseState& s, const std::string& v) { s.config.v_extent = parse_double(v); }},
      {"grid.dv", [](ParseState& s, const std::string& v) { s.config.dv = parse_double(v); }},
      {"random.c_minus", [](ParseState& s, const std::string& v) { s.config.c_minus = parse_double(v); }},
      {"random.c_plus", [](ParseState& s, const std::string& v) { s.config.c_plus = parse_double(v); }},
      {"random.sigma", [](ParseState& s, const std::string& v) { s.config.sigma = parse_double(v); }},
      {"random.transmission", [](ParseState& s, const std::string& v) {
         s.config.transmission = pick<convection::Transmission>(
             v, {{"conserve_flux", convection::Transmission::conserve_flux},
                 {"conserve_mass", convection::Transmission::conserve_mass}});
       }},
      {"random.v_left", [](ParseState& s, const std::string& v) { s.config.v_left = parse_double(v); }},
      {"random.v_right", [](ParseState& s, const std::string& v) { s.config.v_right = parse_double(v); }},
      {"random.slope_amp", [](ParseState& s, const std::string& v) { s.config.slope_amp = parse_double(v); }},
      {"random.alpha_lf", [](ParseState& s, const std::string& v) { s.config.alpha_lf = parse_double(v); }},
      {"random.vflux_form", [](ParseState& s, const std::string& v) {
         s.config.vflux = pick<liouville::VFluxForm>(
             v, {{"corrected", liouville::VFluxForm::corrected}, {"verbatim", liouville::VFluxForm::verbatim}});
       }},
      {"output.dir", [](ParseState& s, const std::string& v) { s.config.output_dir = v; }},
      {"output.oracle", [](ParseState& s, const std::string& v) { s.config.oracle = parse_bool(v); }},
  };
  return table;
}

// Presets -------------------------------------------------------------------

ExperimentConfig example1(int order, double dx, double ratio) {
  ExperimentConfig c;
  c.problem = Problem::convection;
  c.order = order;
  c.K = 20;
  c.T = 1.0;
  c.init = "cos_window";
  c.dx = dx;
  c.dt = ratio * dx;
  // Forward Euler with averaged slopes is linearly unstable; see README.
  if (order == 2) c.integrator = Integrator::rk2;
  return c;
}

ExperimentConfig example2(int order, SolverMode mode) {
  ExperimentConfig c;
  c.problem = Problem::liouville;
  c.order = order;
  c.mode = mode;
  c.K = 10;
  c.quadrature = 20;
  c.T = 1.0;
  c.init = "ex2_init1";
  c.dx = 0.03;
  c.dv = 0.03;
  c.dt = 0.002;
  return c;
}

const std::map<std::string, std::function<ExperimentConfig()>>& preset_table() {
  static const std::map<std::string, std::function<ExperimentConfig()>> table = {
      {"example1_order1", [] { return example1(1, 0.005, 0.2); }},
      {"example1_order2", [] { return example1(2, 0.005, 0.2); }},
      {"example1_fig3", [] { return example1(1, 0.001, 0.25); }},
      {"example1_fig6", [] { return example1(2, 0.001, 0.25); }},
      {"example1_smooth_control",
       [] {
         auto c = example1(1, 0.005, 0.2);
         c.c_plus = 1.0;
         c.sigma = 0.0;
         c.K = 0;
         c.init = "smooth_bump";
         return c;
       }},
      {"example2_order1", [] { return example2(1, SolverMode::gpc_sg); }},
      {"example2_order2", [] { return example2(2, SolverMode::gpc_sg); }},
      {"example2_collocation", [] { return example2(1, SolverMode::collocation); }},
      {"example2_collocation_order2", [] { return example2(2, SolverMode::collocation); }},
      {"example2_init2",
       [] {
         auto c = example2(1, SolverMode::gpc_sg);
         c.K = 4;
         c.init = "ex2_init2";
         return c;
       }},
      {"example2_deterministic",
       [] {
         auto c = example2(1, SolverMode::deterministic);
         c.dx = c.dv = 0.015;
         c.dt = 0.001;
         return c;
       }},
      {"example2_deterministic_order2",
       [] {
         auto c = example2(2, SolverMode::deterministic);
         c.dx = c.dv = 0.015;
         c.dt = 0.001;
         return c;
       }},
      {"example2_sweep", [] { return example2(1, SolverMode::gpc_sg); }},
  };
  return table;
}

}  // namespace

std::string_view to_string(Problem p) { return p == Problem::convection ? "convection" : "liouville"; }

std::string_view to_string(SolverMode m) {
  switch (m) {
    case SolverMode::gpc_sg: return "gpc_sg";
    case SolverMode::collocation: return "collocation";
    case SolverMode::deterministic: return "deterministic";
  }
  return "?";
}

int ExperimentConfig::steps() const { return static_cast<int>(std::lround(T / dt)); }

int ExperimentConfig::quadrature_points() const {
  return quadrature > 0 ? quadrature : gpc::default_assembly_points(K);
}

convection::InterfaceCoefficient ExperimentConfig::coefficient() const {
  return {c_minus, c_plus, sigma, transmission};
}

convection::ConvectionGrid ExperimentConfig::convection_grid() const { return {a, b, dx, dt}; }

liouville::PhaseSpaceGrid ExperimentConfig::phase_grid() const { return {x_extent, v_extent, dx, dv, dt}; }

liouville::PotentialBarrier ExperimentConfig::barrier() const { return {v_left, v_right, slope_amp}; }

liouville::SchemeOptions ExperimentConfig::scheme_options() const { return {order, alpha_lf, vflux, limiter}; }

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, make] : preset_table()) names.push_back(name);
  return names;
}

ExperimentConfig preset(const std::string& name) {
  const auto it = preset_table().find(name);
  if (it == preset_table().end()) throw ConfigError("unknown preset '" + name + "'");
  auto c = it->second();
  c.preset = name;
  return c;
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> out;
  auto absorb = [&](const std::function<void()>& check) {
    try {
      check();
    } catch (const ConfigError& e) {
      out.insert(out.end(), e.violations().begin(), e.violations().end());
    } catch (const std::exception& e) {
      out.emplace_back(e.what());
    }
  };

  if (c.order != 1 && c.order != 2) out.push_back("order must be 1 or 2");
  if (c.K < 0) out.push_back("K must be non-negative");
  if (c.quadrature < 0) out.push_back("quadrature must be non-negative");
  if (c.mode == SolverMode::gpc_sg && c.quadrature > 0 && c.quadrature < c.K + 1) {
    out.push_back("quadrature must be at least K+1 for the Galerkin projection");
  }
  if (c.threads < 1) out.push_back("threads must be at least 1");
  if (!(std::abs(c.z) <= 1.0)) out.push_back("z must lie in [-1, 1]");
  if (!(c.T >= 0.0)) out.push_back("T must be non-negative");
  if (!(c.dx > 0.0)) out.push_back("grid.dx must be positive");
  if (!(c.dt > 0.0)) out.push_back("grid.dt must be positive");
  if (c.dt > 0.0 && c.T >= 0.0) {
    const double n = c.T / c.dt;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) {
      out.push_back("T = " + fmt(c.T) + " is not an integer multiple of dt = " + fmt(c.dt));
    }
  }
  if (!out.empty()) return out;

  if (c.problem == Problem::convection) {
    absorb([&] { convection::profile_from_id(c.init); });
    absorb([&] { c.coefficient().validate(); });
    absorb([&] { convection::check_cfl(c.coefficient(), c.convection_grid()); });
  } else {
    absorb([&] { liouville::phase_profile_from_id(c.init); });
    if (!(c.dv > 0.0)) {
      out.push_back("grid.dv must be positive");
    } else {
      absorb([&] { liouville::LiouvilleScheme(c.phase_grid(), c.barrier(), c.scheme_options()); });
    }
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ParseState state;
  std::vector<std::string> violations;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        violations.push_back(where + "malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "grid" && section != "random" && section != "output") {
        violations.push_back(where + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      violations.push_back(where + "expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;

    if (key == "preset") {
      if (!state.written.empty()) violations.push_back(where + "preset must come before other keys");
      try {
        state.config = preset(value);
        for (const char* k : {"problem", "T", "K", "grid.dx", "grid.dt", "grid.dv"}) state.seen.insert(k);
      } catch (const ConfigError& e) {
        violations.push_back(where + e.what());
      }
      continue;
    }
    const auto it = setters().find(key);
    if (it == setters().end()) {
      violations.push_back(where + "unknown key '" + key + "'");
      continue;
    }
    if (!state.written.insert(key).second) violations.push_back(where + "duplicate key '" + key + "'");
    try {
      it->second(state, value);
      state.seen.insert(key);
    } catch (const std::exception& e) {
      violations.push_back(where + key + ": " + e.what());
    }
  }

  auto& c = state.config;
  if (state.dt_ratio && state.written.count("grid.dt")) {
    violations.push_back("grid.dt and grid.dt_ratio are mutually exclusive");
  }
  if (state.dt_ratio) {
    c.dt = *state.dt_ratio * c.dx;
    state.seen.insert("grid.dt");
  }
  std::vector<std::string> required = {"problem", "T", "grid.dx", "grid.dt"};
  if (c.mode == SolverMode::gpc_sg) required.push_back("K");
  if (state.seen.count("problem") && c.problem == Problem::liouville) required.push_back("grid.dv");
  for (const auto& key : required) {
    if (!state.seen.count(key)) violations.push_back("missing required key '" + key + "'");
  }
  if (c.init.empty()) c.init = c.problem == Problem::convection ? "cos_window" : "ex2_init1";

  if (violations.empty()) {
    const auto semantic = validate(c);
    violations.insert(violations.end(), semantic.begin(), semantic.end());
  }
  if (!violations.empty()) throw ConfigError(violations);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config(text.str());
}

std::string render(const ExperimentConfig& c) {
  std::ostringstream o;
  if (!c.preset.empty()) o << "preset = " << c.preset << "\n";
  o << "problem = " << to_string(c.problem) << "\n"
    << "mode = " << to_string(c.mode) << "\n"
    << "order = " << c.order << "\n"
    << "K = " << c.K << "\n"
    << "quadrature = " << c.quadrature << "\n"
    << "z = " << fmt(c.z) << "\n"
    << "T = " << fmt(c.T) << "\n"
    << "init = " << c.init << "\n"
    << "limiter = " << to_string(c.limiter) << "\n"
    << "integrator = " << to_string(c.integrator) << "\n"
    << "threads = " << c.threads << "\n"
    << "\n[grid]\n"
    << "a = " << fmt(c.a) << "\n"
    << "b = " << fmt(c.b) << "\n"
    << "dx = " << fmt(c.dx) << "\n"
    << "dt = " << fmt(c.dt) << "\n"
    << "x_extent = " << fmt(c.x_extent) << "\n"
    << "v_extent = " << fmt(c.v_extent) << "\n"
    << "dv = " << fmt(c.dv) << "\n"
    << "\n[random]\n"
    << "c_minus = " << fmt(c.c_minus) << "\n"
    << "c_plus = " << fmt(c.c_plus) << "\n"
    << "sigma = " << fmt(c.sigma) << "\n"
    << "transmission = " << to_string(c.transmission) << "\n"
    << "v_left = " << fmt(c.v_left) << "\n"
    << "v_right = " << fmt(c.v_right) << "\n"
    << "slope_amp = " << fmt(c.slope_amp) << "\n"
    << "alpha_lf = " << fmt(c.alpha_lf) << "\n"
    << "vflux_form = " << to_string(c.vflux) << "\n"
    << "\n[output]\n"
    << "dir = " << c.output_dir << "\n"
    << "oracle = " << (c.oracle ? "true" : "false") << "\n";
  return o.str();
}

}  // namespace stochhyp
